#include "qdr/scalar.hpp"

namespace qdr {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t r = 1;
  base %= p;
  while (exp) {
    if (exp & 1) r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return r;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("field characteristic must be a prime < 2^31");
  Field f;
  f.p_ = p;
  return f;
}

std::string Field::name() const {
  return p_ == 0 ? "Q" : "F" + std::to_string(p_);
}

Field parse_field(const std::string& text) {
  if (text == "Q") return Field::rationals();
  std::string t = text;
  if (!t.empty() && (t[0] == 'F' || t[0] == 'f')) t = t.substr(1);
  try {
    unsigned long p = std::stoul(t);
    return Field::prime(static_cast<std::uint32_t>(p));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("unrecognized field \"" + text + "\" (expected Q, F<p> or <p>)");
  }
}

Scalar Scalar::one(Field f) {
  Scalar s(f);
  if (f.is_rational())
    s.q_ = 1;
  else
    s.r_ = 1;
  return s;
}

Scalar Scalar::from_int(Field f, long v) {
  Scalar s(f);
  if (f.is_rational()) {
    s.q_ = v;
  } else {
    long p = f.characteristic();
    long r = v % p;
    if (r < 0) r += p;
    s.r_ = static_cast<std::uint64_t>(r);
  }
  return s;
}

Scalar Scalar::parse(Field f, const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    mpz_class n(text);
    if (f.is_rational()) {
      Scalar s(f);
      s.q_ = mpq_class(n);
      return s;
    }
    Scalar s(f);
    mpz_class r = n % f.characteristic();
    if (r < 0) r += f.characteristic();
    s.r_ = r.get_ui();
    return s;
  }
  Scalar num = parse(f, text.substr(0, slash));
  Scalar den = parse(f, text.substr(slash + 1));
  return num / den;
}

bool Scalar::is_zero() const {
  return field_.is_rational() ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
  return field_.is_rational() ? q_ == 1 : r_ == 1;
}

Scalar Scalar::operator-() const {
  Scalar s(field_);
  if (field_.is_rational())
    s.q_ = -q_;
  else if (r_ != 0)
    s.r_ = field_.characteristic() - r_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_field(o);
  if (field_.is_rational()) {
    q_ += o.q_;
  } else {
    r_ += o.r_;
    if (r_ >= field_.characteristic()) r_ -= field_.characteristic();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_field(o);
  if (field_.is_rational()) {
    q_ -= o.q_;
  } else {
    r_ += field_.characteristic() - o.r_;
    if (r_ >= field_.characteristic()) r_ -= field_.characteristic();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_field(o);
  if (field_.is_rational())
    q_ *= o.q_;
  else
    r_ = r_ * o.r_ % field_.characteristic();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_field(o);
  return *this *= o.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Scalar s(field_);
  if (field_.is_rational())
    s.q_ = 1 / q_;
  else
    s.r_ = mod_pow(r_, field_.characteristic() - 2, field_.characteristic());
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_) return false;
  return field_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::str() const {
  return field_.is_rational() ? q_.get_str() : std::to_string(r_);
}

}  // namespace qdr
