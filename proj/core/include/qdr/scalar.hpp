#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qdr {

struct field_mismatch : std::runtime_error {
  field_mismatch() : std::runtime_error("operands belong to different fields") {}
};

// Ground field descriptor: the rationals, or a prime field F_p with p < 2^31.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  bool operator==(const Field&) const = default;

 private:
  std::uint32_t p_ = 0;  // 0 encodes Q
};

Field parse_field(const std::string& text);

// Exact field element. All arithmetic is exact; F_p values are kept as the
// canonical representative in [0, p).
class Scalar {
 public:
  Scalar() = default;  // zero over Q
  explicit Scalar(Field f) : field_(f) {}

  static Scalar zero(Field f) { return Scalar(f); }
  static Scalar one(Field f);
  static Scalar from_int(Field f, long v);
  // Accepts "1", "-1", "3/2"; over F_p integers (or quotients) are reduced mod p.
  static Scalar parse(Field f, const std::string& text);

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;

  // Rational value; only meaningful over Q.
  const mpq_class& rational() const { return q_; }
  std::uint64_t residue() const { return r_; }

 private:
  void check_field(const Scalar& o) const {
    if (field_ != o.field_) throw field_mismatch();
  }

  Field field_;
  mpq_class q_ = 0;
  std::uint64_t r_ = 0;
};

}  // namespace qdr
