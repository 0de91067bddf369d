#include "qdr/deform.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace qdr {

namespace {

// ---------------------------------------------------------------------------
// truncated t-series of matrices with exact scalar entries

using TSeries = std::vector<Mat>;  // index = t-power

TSeries series_mul(const TSeries& a, const TSeries& b, int trunc) {
  Field f = a[0].field();
  TSeries c(trunc, Mat(f, a[0].rows(), b[0].cols()));
  for (int i = 0; i < static_cast<int>(a.size()) && i < trunc; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < static_cast<int>(b.size()) && i + j < trunc; ++j) {
      if (b[j].is_zero()) continue;
      c[i + j] = c[i + j] + a[i] * b[j];
    }
  }
  return c;
}

// relation value on a lift's coefficient family, truncated at t^trunc
TSeries relation_series(const QuiverSpec& spec, const Relation& rel,
                        const std::vector<std::vector<Mat>>& coeffs,
                        const std::vector<int>& dims, int trunc) {
  Field f = coeffs[0][0].field();
  int s = spec.arrows[rel.front().arrows.front()].source;
  int t = spec.arrows[rel.front().arrows.back()].target;
  TSeries acc(trunc, Mat(f, dims[t], dims[s]));
  for (const RelationTerm& term : rel) {
    Scalar c = Scalar::parse(f, term.coeff);
    TSeries prod(trunc, Mat(f, dims[s], dims[s]));
    prod[0] = Mat::identity(f, dims[s]);
    for (int ar : term.arrows) {
      TSeries arseries = coeffs[ar];
      arseries.resize(trunc, Mat(f, coeffs[ar][0].rows(), coeffs[ar][0].cols()));
      prod = series_mul(arseries, prod, trunc);
    }
    for (int p = 0; p < trunc; ++p) acc[p] = acc[p] + prod[p].scaled(c);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// flat layouts

struct DeltaLayout {
  std::vector<int> base;  // per arrow
  int total = 0;
};

DeltaLayout delta_layout(const AlgebraPtr& a, const std::vector<int>& dims) {
  DeltaLayout l;
  l.base.resize(a->num_arrows());
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    const Arrow& arr = a->spec().arrows[ar];
    l.base[ar] = l.total;
    l.total += dims[arr.target] * dims[arr.source];
  }
  return l;
}

struct EqLayout {
  std::vector<int> base;  // per relation
  int total = 0;
};

EqLayout eq_layout(const AlgebraPtr& a, const std::vector<int>& dims) {
  EqLayout l;
  for (const Relation& rel : a->spec().relations) {
    int s = a->spec().arrows[rel.front().arrows.front()].source;
    int t = a->spec().arrows[rel.front().arrows.back()].target;
    l.base.push_back(l.total);
    l.total += dims[t] * dims[s];
  }
  return l;
}

// d(relations)/d(delta) at the constant matrices a0
Mat linearized_operator(const AlgebraPtr& alg, const std::vector<int>& dims,
                        const std::vector<Mat>& a0) {
  Field f = a0.empty() ? alg->field() : a0[0].field();
  DeltaLayout dl = delta_layout(alg, dims);
  EqLayout el = eq_layout(alg, dims);
  Mat L(f, el.total, dl.total);

  int rel_idx = 0;
  for (const Relation& rel : alg->spec().relations) {
    int s = alg->spec().arrows[rel.front().arrows.front()].source;
    int row0 = el.base[rel_idx++];
    for (const RelationTerm& term : rel) {
      Scalar c = Scalar::parse(f, term.coeff);
      const std::vector<int>& w = term.arrows;
      int len = static_cast<int>(w.size());
      // prefix products: right[k] = a0[w_{k-1}] ... a0[w_0]
      std::vector<Mat> right(len + 1, Mat(f, 0, 0));
      right[0] = Mat::identity(f, dims[s]);
      for (int k = 0; k < len; ++k) right[k + 1] = a0[w[k]] * right[k];
      // suffix products: left[k] = a0[w_{len-1}] ... a0[w_{k+1}]
      std::vector<Mat> left(len + 1, Mat(f, 0, 0));
      left[len - 1] = Mat::identity(f, dims[alg->spec().arrows[w[len - 1]].target]);
      for (int k = len - 2; k >= 0; --k) left[k] = left[k + 1] * a0[w[k + 1]];

      for (int pos = 0; pos < len; ++pos) {
        const Arrow& arr = alg->spec().arrows[w[pos]];
        const Mat& lf = left[pos];
        const Mat& rt = right[pos];
        int dr = dims[arr.target], dc = dims[arr.source];
        for (std::size_t i = 0; i < lf.rows(); ++i)
          for (int p = 0; p < dr; ++p) {
            if (lf.at(i, p).is_zero()) continue;
            for (int q = 0; q < dc; ++q)
              for (std::size_t j = 0; j < rt.cols(); ++j) {
                if (rt.at(q, j).is_zero()) continue;
                L.at(row0 + i * rt.cols() + j, dl.base[w[pos]] + p * dc + q) +=
                    c * lf.at(i, p) * rt.at(q, j);
              }
          }
      }
    }
  }
  return L;
}

std::vector<Mat> unflatten_delta(const AlgebraPtr& alg, const std::vector<int>& dims,
                                 const std::vector<Scalar>& flat) {
  DeltaLayout dl = delta_layout(alg, dims);
  Field f = alg->field();
  std::vector<Mat> out;
  for (int ar = 0; ar < alg->num_arrows(); ++ar) {
    const Arrow& arr = alg->spec().arrows[ar];
    Mat m(f, dims[arr.target], dims[arr.source]);
    for (int i = 0; i < dims[arr.target]; ++i)
      for (int j = 0; j < dims[arr.source]; ++j)
        m.at(i, j) = flat[dl.base[ar] + i * dims[arr.source] + j];
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Scalar> flatten_delta(const std::vector<Mat>& mats) {
  std::vector<Scalar> flat;
  for (const Mat& m : mats)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) flat.push_back(m.at(i, j));
  return flat;
}

}  // namespace

// ---------------------------------------------------------------------------
// concrete lifts

Lift trivial_lift(const Rep& m, int level) {
  if (level < 1) throw std::invalid_argument("base level must be >= 1");
  Lift l{m, level, {}, {}};
  Field f = m.field();
  for (int ar = 0; ar < m.alg->num_arrows(); ++ar) {
    std::vector<Mat> powers(level, Mat(f, m.action[ar].rows(), m.action[ar].cols()));
    powers[0] = m.action[ar];
    l.coeffs.push_back(std::move(powers));
  }
  for (int d : m.dims) l.reduction_iso.push_back(Mat::identity(f, d));
  return l;
}

std::vector<std::string> check_lift(const Lift& l) {
  std::vector<std::string> problems;
  const AlgebraPtr& a = l.target.alg;
  Field f = l.field();

  if (static_cast<int>(l.coeffs.size()) != a->num_arrows() ||
      static_cast<int>(l.reduction_iso.size()) != a->num_vertices()) {
    problems.push_back("coefficient data does not match the quiver");
    return problems;
  }
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    const Arrow& arr = a->spec().arrows[ar];
    if (static_cast<int>(l.coeffs[ar].size()) != l.level) {
      problems.push_back("arrow " + arr.name + ": expected " + std::to_string(l.level) +
                         " t-coefficients");
      return problems;
    }
    for (const Mat& c : l.coeffs[ar])
      if (c.rows() != static_cast<std::size_t>(l.target.dims[arr.target]) ||
          c.cols() != static_cast<std::size_t>(l.target.dims[arr.source])) {
        problems.push_back("arrow " + arr.name + ": coefficient shape mismatch");
        return problems;
      }
  }

  // reduction: phi must be an invertible intertwiner from the constant term
  for (int v = 0; v < a->num_vertices(); ++v) {
    const Mat& phi = l.reduction_iso[v];
    if (phi.rows() != static_cast<std::size_t>(l.target.dims[v]) || phi.rows() != phi.cols()) {
      problems.push_back("phi at vertex " + a->spec().vertices[v] + " has wrong shape");
      return problems;
    }
    if (phi.rows() > 0 && !phi.inverse())
      problems.push_back("phi at vertex " + a->spec().vertices[v] + " is not invertible");
  }
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    const Arrow& arr = a->spec().arrows[ar];
    if (l.reduction_iso[arr.target] * l.coeffs[ar][0] !=
        l.target.action[ar] * l.reduction_iso[arr.source])
      problems.push_back("reduction of arrow " + arr.name +
                         " does not match the target action under phi");
  }

  int rel_no = 0;
  for (const Relation& rel : a->spec().relations) {
    ++rel_no;
    TSeries val = relation_series(a->spec(), rel, l.coeffs, l.target.dims, l.level);
    for (int p = 0; p < l.level; ++p)
      if (!val[p].is_zero())
        problems.push_back("relation " + std::to_string(rel_no) +
                           " fails at t^" + std::to_string(p));
  }
  (void)f;
  return problems;
}

std::vector<Scalar> lift_obstruction(const Lift& l) {
  const AlgebraPtr& a = l.target.alg;
  std::vector<Scalar> obstruction;
  for (const Relation& rel : a->spec().relations) {
    TSeries val = relation_series(a->spec(), rel, l.coeffs, l.target.dims, l.level + 1);
    const Mat& top = val[l.level];
    for (std::size_t i = 0; i < top.rows(); ++i)
      for (std::size_t j = 0; j < top.cols(); ++j) obstruction.push_back(top.at(i, j));
  }
  return obstruction;
}

ExtendOutcome extend_lift(const Lift& l) {
  const AlgebraPtr& a = l.target.alg;
  Field f = l.field();

  std::vector<Scalar> obstruction = lift_obstruction(l);
  std::vector<Mat> constant;
  for (int ar = 0; ar < a->num_arrows(); ++ar) constant.push_back(l.coeffs[ar][0]);
  Mat L0 = linearized_operator(a, l.target.dims, constant);

  Mat rhs(f, obstruction.size(), 1);
  for (std::size_t i = 0; i < obstruction.size(); ++i) rhs.at(i, 0) = -obstruction[i];

  ExtendOutcome out;
  out.obstruction = obstruction;
  out.image_rank = static_cast<int>(rank(L0));
  auto sol = solve_affine(L0, rhs);
  out.augmented_rank = static_cast<int>(rank(Mat::hstack(L0, rhs)));
  if (!sol) {
    out.extended = false;
    return out;
  }
  out.extended = true;

  std::vector<Scalar> flat;
  for (std::size_t i = 0; i < sol->particular.rows(); ++i) flat.push_back(sol->particular.at(i, 0));
  std::vector<Mat> delta = unflatten_delta(a, l.target.dims, flat);

  Lift ext = l;
  ext.level = l.level + 1;
  for (int ar = 0; ar < a->num_arrows(); ++ar) ext.coeffs[ar].push_back(delta[ar]);
  out.extension = std::move(ext);

  for (std::size_t col = 0; col < sol->homogeneous.cols(); ++col) {
    std::vector<Scalar> kflat;
    for (std::size_t i = 0; i < sol->homogeneous.rows(); ++i)
      kflat.push_back(sol->homogeneous.at(i, col));
    out.kernel.push_back(unflatten_delta(a, l.target.dims, kflat));
  }
  return out;
}

// ---------------------------------------------------------------------------
// first-order theory

FirstOrderSpace first_order_space(const Rep& m) {
  const AlgebraPtr& a = m.alg;
  Field f = m.field();
  DeltaLayout dl = delta_layout(a, m.dims);

  Mat L0 = linearized_operator(a, m.dims, m.action);
  Mat Z = kernel_basis(L0);

  FirstOrderSpace fos;
  for (std::size_t col = 0; col < Z.cols(); ++col) {
    std::vector<Scalar> flat;
    for (std::size_t i = 0; i < Z.rows(); ++i) flat.push_back(Z.at(i, col));
    fos.cocycles.push_back(unflatten_delta(a, m.dims, flat));
  }

  // coboundary map h -> (h_t rho - rho h_s) per arrow
  int hdim = 0;
  std::vector<int> hbase(a->num_vertices());
  for (int v = 0; v < a->num_vertices(); ++v) {
    hbase[v] = hdim;
    hdim += m.dims[v] * m.dims[v];
  }
  Mat C(f, dl.total, hdim);
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    const Arrow& arr = a->spec().arrows[ar];
    int du = m.dims[arr.source], dw = m.dims[arr.target];
    const Mat& rho = m.action[ar];
    for (int i = 0; i < dw; ++i)
      for (int j = 0; j < du; ++j) {
        int row = dl.base[ar] + i * du + j;
        for (int p = 0; p < dw; ++p) C.at(row, hbase[arr.target] + i * dw + p) += rho.at(p, j);
        for (int q = 0; q < du; ++q) C.at(row, hbase[arr.source] + q * du + j) -= rho.at(i, q);
      }
  }

  RowSpace bspace(f, dl.total);
  for (int col = 0; col < hdim; ++col) {
    std::vector<Scalar> image;
    for (std::size_t r = 0; r < C.rows(); ++r) image.push_back(C.at(r, col));
    bspace.insert(RowSpace::to_sparse(image));
  }
  Mat B = bspace.basis_matrix();
  for (std::size_t r = 0; r < B.rows(); ++r) {
    std::vector<Scalar> flat;
    for (std::size_t c = 0; c < B.cols(); ++c) flat.push_back(B.at(r, c));
    fos.coboundaries.push_back(unflatten_delta(a, m.dims, flat));
  }

  // coboundaries must be cocycles
  RowSpace zspace(f, dl.total);
  for (const auto& z : fos.cocycles) zspace.insert(RowSpace::to_sparse(flatten_delta(z)));
  for (const auto& b : fos.coboundaries)
    if (!zspace.contains(RowSpace::to_sparse(flatten_delta(b))))
      throw std::logic_error("gauge direction violates the linearized relations");

  fos.ext1_dim = static_cast<int>(fos.cocycles.size() - fos.coboundaries.size());

  // canonical complement: reduce cocycles against coboundaries, keep residuals
  RowSpace grow(f, dl.total);
  for (const auto& b : fos.coboundaries) grow.insert(RowSpace::to_sparse(flatten_delta(b)));
  for (const auto& z : fos.cocycles) {
    auto residual = grow.reduce(RowSpace::to_sparse(flatten_delta(z)));
    if (residual.empty()) continue;
    Scalar inv = residual.front().second.inverse();
    std::vector<Scalar> flat(dl.total, Scalar(f));
    for (const auto& [i, x] : residual) flat[i] = x * inv;
    fos.complement.push_back(unflatten_delta(a, m.dims, flat));
    grow.insert(residual);
  }
  if (static_cast<int>(fos.complement.size()) != fos.ext1_dim)
    throw std::logic_error("complement dimension mismatch in first-order space");
  return fos;
}

// ---------------------------------------------------------------------------
// lift isomorphism and hom lifting

namespace {

struct HomLayout {
  std::vector<std::vector<int>> base;  // [power][vertex]
  int total = 0;
};

HomLayout hom_layout(const AlgebraPtr& a, const std::vector<int>& dims, int level) {
  HomLayout l;
  l.base.assign(level, std::vector<int>(a->num_vertices(), 0));
  for (int j = 0; j < level; ++j)
    for (int v = 0; v < a->num_vertices(); ++v) {
      l.base[j][v] = l.total;
      l.total += dims[v] * dims[v];
    }
  return l;
}

// constraint matrix for R Lambda-linearity of f: l1 -> l2 over k[t]/(t^n)
Mat lift_hom_system(const Lift& l1, const Lift& l2) {
  const AlgebraPtr& a = l1.target.alg;
  Field f = l1.field();
  int n = l1.level;
  const std::vector<int>& dims = l1.target.dims;
  HomLayout hl = hom_layout(a, dims, n);

  std::size_t rows = 0;
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    const Arrow& arr = a->spec().arrows[ar];
    rows += static_cast<std::size_t>(n) * dims[arr.target] * dims[arr.source];
  }
  Mat F(f, rows, hl.total);
  std::size_t row0 = 0;
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    const Arrow& arr = a->spec().arrows[ar];
    int du = dims[arr.source], dw = dims[arr.target];
    for (int s = 0; s < n; ++s) {
      for (int i = 0; i <= s; ++i) {
        int j = s - i;
        const Mat& c2 = l2.coeffs[ar][i];
        const Mat& c1 = l1.coeffs[ar][i];
        // sum_i ( c2_i f_j  -  f_j c1_i ) = 0 at power s
        for (int r = 0; r < dw; ++r)
          for (int c = 0; c < du; ++c) {
            std::size_t row = row0 + (static_cast<std::size_t>(s) * dw + r) * du + c;
            for (int q = 0; q < du; ++q)
              F.at(row, hl.base[j][arr.source] + q * du + c) += c2.at(r, q);
            for (int q = 0; q < dw; ++q)
              F.at(row, hl.base[j][arr.target] + r * dw + q) -= c1.at(q, c);
          }
      }
      // advance row block per power
    }
    row0 += static_cast<std::size_t>(n) * dw * du;
  }
  return F;
}

std::vector<std::vector<Mat>> unflatten_hom(const AlgebraPtr& a, const std::vector<int>& dims,
                                            int level, const std::vector<Scalar>& flat) {
  HomLayout hl = hom_layout(a, dims, level);
  Field f = a->field();
  std::vector<std::vector<Mat>> out(level);
  for (int j = 0; j < level; ++j)
    for (int v = 0; v < a->num_vertices(); ++v) {
      Mat m(f, dims[v], dims[v]);
      for (int r = 0; r < dims[v]; ++r)
        for (int c = 0; c < dims[v]; ++c) m.at(r, c) = flat[hl.base[j][v] + r * dims[v] + c];
      out[j].push_back(std::move(m));
    }
  return out;
}

}  // namespace

IsoResult lifts_isomorphic(const Lift& l1, const Lift& l2, bool respect_reduction,
                           std::uint64_t seed) {
  if (l1.level != l2.level) throw base_mismatch("lifts live over different bases");
  if (!l1.target.same_shape(l2.target) || l1.target.action != l2.target.action)
    throw base_mismatch("lifts reduce to different targets");
  const AlgebraPtr& a = l1.target.alg;
  Field f = l1.field();
  int n = l1.level;
  const std::vector<int>& dims = l1.target.dims;
  HomLayout hl = hom_layout(a, dims, n);

  Mat F = lift_hom_system(l1, l2);

  if (respect_reduction) {
    // pin f_0 = phi2^{-1} phi1 and solve the affine system exactly
    std::size_t pins = 0;
    for (int v = 0; v < a->num_vertices(); ++v) pins += static_cast<std::size_t>(dims[v]) * dims[v];
    Mat P(f, pins, hl.total);
    Mat rhs(f, F.rows() + pins, 1);
    std::size_t pr = 0;
    for (int v = 0; v < a->num_vertices(); ++v) {
      Mat g0 = *l2.reduction_iso[v].inverse() * l1.reduction_iso[v];
      for (int r = 0; r < dims[v]; ++r)
        for (int c = 0; c < dims[v]; ++c) {
          P.at(pr, hl.base[0][v] + r * dims[v] + c) = Scalar::one(f);
          rhs.at(F.rows() + pr, 0) = g0.at(r, c);
          ++pr;
        }
    }
    auto sol = solve_affine(Mat::vstack(F, P), rhs);
    if (!sol)
      return {IsoResult::Verdict::no, std::nullopt,
              "no base-linear isomorphism matches the reduction identifications"};
    std::vector<Scalar> flat;
    for (std::size_t i = 0; i < sol->particular.rows(); ++i)
      flat.push_back(sol->particular.at(i, 0));
    auto comps = unflatten_hom(a, dims, n, flat);
    RepMap witness{l1.target, l2.target, comps[0]};
    return {IsoResult::Verdict::yes, std::move(witness),
            "affine intertwiner solve with pinned reduction"};
  }

  Mat K = lift_hom_system(l1, l1);
  Mat K2 = lift_hom_system(l2, l2);
  Mat hom12 = kernel_basis(F);
  std::size_t d12 = hom12.cols();
  std::size_t d11 = kernel_basis(K).cols();
  std::size_t d22 = kernel_basis(K2).cols();
  if (d12 != d11 || d11 != d22)
    return {IsoResult::Verdict::no, std::nullopt,
            "hom/end dimension obstruction over the base (dim Hom = " + std::to_string(d12) +
                ", dim End = " + std::to_string(d11) + ", " + std::to_string(d22) + ")"};
  if (d12 == 0) {
    if (l1.target.total_dim() == 0)
      return {IsoResult::Verdict::yes, identity_map(l1.target), "zero modules"};
    return {IsoResult::Verdict::no, std::nullopt, "no nonzero homomorphisms over the base"};
  }

  std::mt19937_64 rng(seed);
  auto random_scalar = [&]() {
    if (f.is_rational()) {
      std::uniform_int_distribution<int> d(-3, 3);
      return Scalar::from_int(f, d(rng));
    }
    std::uniform_int_distribution<std::uint32_t> d(0, f.characteristic() - 1);
    return Scalar::from_int(f, d(rng));
  };

  for (int trial = 0; trial < 64; ++trial) {
    std::vector<Scalar> flat(hl.total, Scalar(f));
    for (std::size_t col = 0; col < d12; ++col) {
      Scalar c = random_scalar();
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < hom12.rows(); ++i) flat[i] += c * hom12.at(i, col);
    }
    auto comps = unflatten_hom(a, dims, n, flat);
    bool invertible = true;
    for (int v = 0; v < a->num_vertices() && invertible; ++v)
      if (dims[v] > 0 && !comps[0][v].inverse()) invertible = false;
    if (invertible) {
      RepMap witness{l1.target, l2.target, comps[0]};
      return {IsoResult::Verdict::yes, std::move(witness),
              "invertible base-linear intertwiner found"};
    }
  }
  return {IsoResult::Verdict::inconclusive, std::nullopt,
          "no invertible combination found in 64 seeded samples"};
}

std::vector<std::vector<Mat>> lift_hom(const std::vector<Mat>& v0, const Lift& lm,
                                       const Lift& lq) {
  if (lm.level != lq.level) throw base_mismatch("lifts live over different bases");
  const AlgebraPtr& a = lm.target.alg;
  Field f = lm.field();
  int n = lm.level;

  TriResult gp = is_gorenstein_projective(lm.target, 4, 0);
  if (!gp.is_yes())
    throw hypothesis_failed("the reduction of the source lift is not certified "
                            "Gorenstein-projective: " + gp.detail);
  {
    Cover c = projective_cover(lq.target);
    if (!kernel(c.pi).sub.is_zero())
      throw hypothesis_failed("the target lift does not lift a projective module");
  }

  const std::vector<int>& dm = lm.target.dims;
  const std::vector<int>& dq = lq.target.dims;

  // translate v0 into the internal frames
  std::vector<Mat> v0i;
  for (int v = 0; v < a->num_vertices(); ++v)
    v0i.push_back(*lq.reduction_iso[v].inverse() * v0[v] * lm.reduction_iso[v]);

  // homogeneous operator: intertwiner system between the constant terms
  std::vector<int> vbase(a->num_vertices() + 1, 0);
  for (int v = 0; v < a->num_vertices(); ++v) vbase[v + 1] = vbase[v] + dq[v] * dm[v];
  std::size_t rows = 0;
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    const Arrow& arr = a->spec().arrows[ar];
    rows += static_cast<std::size_t>(dq[arr.target]) * dm[arr.source];
  }
  Mat H(f, rows, vbase.back());
  {
    std::size_t row0 = 0;
    for (int ar = 0; ar < a->num_arrows(); ++ar) {
      const Arrow& arr = a->spec().arrows[ar];
      int u = arr.source, w = arr.target;
      const Mat& cm = lm.coeffs[ar][0];
      const Mat& cq = lq.coeffs[ar][0];
      for (int r = 0; r < dq[w]; ++r)
        for (int c = 0; c < dm[u]; ++c) {
          std::size_t row = row0 + static_cast<std::size_t>(r) * dm[u] + c;
          for (int q = 0; q < dq[u]; ++q) H.at(row, vbase[u] + q * dm[u] + c) += cq.at(r, q);
          for (int q = 0; q < dm[w]; ++q) H.at(row, vbase[w] + r * dm[w] + q) -= cm.at(q, c);
        }
      row0 += static_cast<std::size_t>(dq[w]) * dm[u];
    }
  }

  std::vector<std::vector<Mat>> vlevels{v0i};
  for (int s = 1; s < n; ++s) {
    Mat rhs(f, H.rows(), 1);
    std::size_t row0 = 0;
    for (int ar = 0; ar < a->num_arrows(); ++ar) {
      const Arrow& arr = a->spec().arrows[ar];
      int u = arr.source, w = arr.target;
      Mat acc(f, dq[w], dm[u]);
      for (int i = 1; i <= s; ++i)
        acc = acc + lq.coeffs[ar][i] * vlevels[s - i][u] - vlevels[s - i][w] * lm.coeffs[ar][i];
      for (int r = 0; r < dq[w]; ++r)
        for (int c = 0; c < dm[u]; ++c)
          rhs.at(row0 + static_cast<std::size_t>(r) * dm[u] + c, 0) = -acc.at(r, c);
      row0 += static_cast<std::size_t>(dq[w]) * dm[u];
    }
    auto sol = solve_affine(H, rhs);
    if (!sol)
      throw std::logic_error("hom lifting failed although the hypotheses hold");
    std::vector<Mat> vs;
    for (int v = 0; v < a->num_vertices(); ++v) {
      Mat m(f, dq[v], dm[v]);
      for (int r = 0; r < dq[v]; ++r)
        for (int c = 0; c < dm[v]; ++c) m.at(r, c) = sol->particular.at(vbase[v] + r * dm[v] + c, 0);
      vs.push_back(std::move(m));
    }
    vlevels.push_back(std::move(vs));
  }
  return vlevels;
}

// ---------------------------------------------------------------------------
// multivariate polynomials in the kernel parameters

namespace {

class ParamPoly {
 public:
  explicit ParamPoly(Field f, int nvars = 0) : field_(f), nvars_(nvars) {}

  static ParamPoly constant(Field f, int nvars, const Scalar& c) {
    ParamPoly p(f, nvars);
    if (!c.is_zero()) p.terms_[std::vector<int>(nvars, 0)] = c;
    return p;
  }
  static ParamPoly variable(Field f, int nvars, int idx) {
    ParamPoly p(f, nvars);
    std::vector<int> e(nvars, 0);
    e[idx] = 1;
    p.terms_[e] = Scalar::one(f);
    return p;
  }

  Field field() const { return field_; }
  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                        [](int e) { return e == 0; }));
  }
  Scalar constant_value() const {
    if (terms_.empty()) return Scalar(field_);
    return terms_.begin()->second;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }
  const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }

  ParamPoly& operator+=(const ParamPoly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_.emplace(e, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
    return *this;
  }
  ParamPoly operator+(const ParamPoly& o) const {
    ParamPoly r = *this;
    r += o;
    return r;
  }
  ParamPoly operator-() const {
    ParamPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  ParamPoly operator-(const ParamPoly& o) const { return *this + (-o); }
  ParamPoly operator*(const ParamPoly& o) const {
    ParamPoly r(field_, nvars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        std::vector<int> e(nvars_);
        for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
        Scalar c = c1 * c2;
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
          if (!c.is_zero()) r.terms_.emplace(std::move(e), c);
        } else {
          it->second += c;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    return r;
  }
  ParamPoly scaled(const Scalar& c) const {
    ParamPoly r(field_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
    return r;
  }

  ParamPoly extended(int new_nvars) const {
    ParamPoly r(field_, new_nvars);
    for (const auto& [e, c] : terms_) {
      std::vector<int> ne(new_nvars, 0);
      std::copy(e.begin(), e.end(), ne.begin());
      r.terms_.emplace(std::move(ne), c);
    }
    return r;
  }

  // substitute var i -> subs[i] (polynomials over the new variable set)
  ParamPoly substituted(const std::vector<ParamPoly>& subs, int new_nvars) const {
    ParamPoly r(field_, new_nvars);
    for (const auto& [e, c] : terms_) {
      ParamPoly term = ParamPoly::constant(field_, new_nvars, c);
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) term = term * subs[i];
      r += term;
    }
    return r;
  }

  Scalar eval(const std::vector<Scalar>& point) const {
    Scalar acc(field_);
    for (const auto& [e, c] : terms_) {
      Scalar t = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

 private:
  Field field_;
  int nvars_;
  std::map<std::vector<int>, Scalar> terms_;
};

struct PMat {
  std::size_t rows = 0, cols = 0;
  std::vector<ParamPoly> data;

  PMat() = default;
  PMat(Field f, int nvars, std::size_t r, std::size_t c)
      : rows(r), cols(c), data(r * c, ParamPoly(f, nvars)) {}

  ParamPoly& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const ParamPoly& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool is_zero() const {
    return std::all_of(data.begin(), data.end(), [](const ParamPoly& p) { return p.is_zero(); });
  }
};

PMat pmat_from(Field f, int nvars, const Mat& m) {
  PMat r(f, nvars, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) r.at(i, j) = ParamPoly::constant(f, nvars, m.at(i, j));
  return r;
}

PMat pmul(const PMat& a, const PMat& b) {
  Field f = a.data.empty() ? b.data[0].field() : a.data[0].field();
  int nv = a.data.empty() ? b.data[0].nvars() : a.data[0].nvars();
  PMat c(f, nv, a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const ParamPoly& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols; ++j) {
        const ParamPoly& y = b.at(k, j);
        if (!y.is_zero()) c.at(i, j) += x * y;
      }
    }
  return c;
}

PMat padd(const PMat& a, const PMat& b) {
  PMat c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
  return c;
}

using PSeries = std::vector<PMat>;

PSeries pseries_mul(const PSeries& a, const PSeries& b, int trunc, Field f, int nv) {
  PSeries c(trunc, PMat(f, nv, a[0].rows, b[0].cols));
  for (int i = 0; i < static_cast<int>(a.size()) && i < trunc; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < static_cast<int>(b.size()) && i + j < trunc; ++j) {
      if (b[j].is_zero()) continue;
      c[i + j] = padd(c[i + j], pmul(a[i], b[j]));
    }
  }
  return c;
}

// family of lifts: per arrow, t-power coefficients with polynomial entries
struct Family {
  Field field;
  int nvars = 0;
  int level = 0;  // valid over k[t]/(t^level)
  std::vector<PSeries> coeffs;

  void extend_vars(int new_nvars) {
    for (auto& ser : coeffs)
      for (auto& pm : ser)
        for (auto& p : pm.data) p = p.extended(new_nvars);
    nvars = new_nvars;
  }

  void substitute(const std::vector<ParamPoly>& subs, int new_nvars) {
    for (auto& ser : coeffs)
      for (auto& pm : ser)
        for (auto& p : pm.data) p = p.substituted(subs, new_nvars);
    nvars = new_nvars;
  }
};

// t^level coefficients of all relations on the zero-padded family
std::vector<ParamPoly> family_obstruction(const AlgebraPtr& alg, const std::vector<int>& dims,
                                          const Family& fam) {
  Field f = fam.field;
  int trunc = fam.level + 1;
  std::vector<ParamPoly> out;
  for (const Relation& rel : alg->spec().relations) {
    int s = alg->spec().arrows[rel.front().arrows.front()].source;
    int t = alg->spec().arrows[rel.front().arrows.back()].target;
    PSeries acc(trunc, PMat(f, fam.nvars, dims[t], dims[s]));
    for (const RelationTerm& term : rel) {
      Scalar c = Scalar::parse(f, term.coeff);
      PSeries prod(trunc, PMat(f, fam.nvars, dims[s], dims[s]));
      prod[0] = pmat_from(f, fam.nvars, Mat::identity(f, dims[s]));
      for (int ar : term.arrows) prod = pseries_mul(fam.coeffs[ar], prod, trunc, f, fam.nvars);
      for (int p = 0; p < trunc; ++p) {
        for (std::size_t i = 0; i < prod[p].data.size(); ++i)
          acc[p].data[i] += prod[p].data[i].scaled(c);
      }
    }
    for (int p = 0; p < fam.level; ++p)
      if (!acc[p].is_zero())
        throw std::logic_error("family violates relations below the extension level");
    for (const ParamPoly& p : acc[fam.level].data) out.push_back(p);
  }
  return out;
}

// all monomials appearing across a system
std::vector<std::vector<int>> monomials_of(const std::vector<ParamPoly>& sys) {
  std::vector<std::vector<int>> mons;
  for (const ParamPoly& p : sys)
    for (const auto& [e, c] : p.terms()) mons.push_back(e);
  std::sort(mons.begin(), mons.end());
  mons.erase(std::unique(mons.begin(), mons.end()), mons.end());
  return mons;
}

bool is_zero_exponent(const std::vector<int>& e) {
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

// Does some k-linear combination of the system equal a nonzero constant?
// Then the system has no common root.
bool combo_gives_nonzero_constant(const std::vector<ParamPoly>& sys, Field f) {
  auto mons = monomials_of(sys);
  if (mons.empty()) return false;
  std::vector<std::vector<int>> nonconst;
  for (const auto& e : mons)
    if (!is_zero_exponent(e)) nonconst.push_back(e);

  Mat full(f, sys.size(), mons.size());
  Mat partial(f, sys.size(), nonconst.size());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = 0; j < mons.size(); ++j) {
      auto it = sys[i].terms().find(mons[j]);
      if (it != sys[i].terms().end()) full.at(i, j) = it->second;
    }
    for (std::size_t j = 0; j < nonconst.size(); ++j) {
      auto it = sys[i].terms().find(nonconst[j]);
      if (it != sys[i].terms().end()) partial.at(i, j) = it->second;
    }
  }
  return rank(full) > rank(partial);
}

}  // namespace

// ---------------------------------------------------------------------------
// versal report

bool ring_equal(const RingClass& a, const RingClass& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case RingClass::Kind::truncated:
      return a.n == b.n;
    case RingClass::Kind::bounded:
      return a.n == b.n;
    case RingClass::Kind::multivariable:
      return a.tangent_dim == b.tangent_dim;
    default:
      return true;
  }
}

std::string ring_to_string(const RingClass& r) {
  switch (r.kind) {
    case RingClass::Kind::trivial:
      return "k";
    case RingClass::Kind::truncated:
      return "k[[t]]/(t^" + std::to_string(r.n) + ")";
    case RingClass::Kind::bounded:
      return "k[[t]] up to level " + std::to_string(r.n);
    case RingClass::Kind::multivariable:
      return "power-series quotient in " + std::to_string(r.tangent_dim) +
             " variables (undetermined)";
  }
  return "?";
}

VersalReport versal_report(const Rep& m, int level_bound, std::uint64_t seed,
                           const std::string& label) {
  if (level_bound < 2) throw std::invalid_argument("level bound must be >= 2");
  const AlgebraPtr& a = m.alg;
  Field f = m.field();

  VersalReport rep;
  rep.module_label = label;
  rep.field = f.name();
  rep.seed = seed;
  rep.level_bound = level_bound;

  if (m.is_zero()) {
    rep.gp = {Tri::yes, "zero module"};
    rep.ring = {RingClass::Kind::trivial, 0, 0};
    rep.universal = true;
    rep.justification = "projective";
    return rep;
  }

  rep.gp = is_gorenstein_projective(m, std::max(4, level_bound), seed);
  rep.end_dim = hom_basis(m, m).dim();
  rep.stable_end_dim = stable_hom(m, m).quotient_dim;

  FirstOrderSpace fos = first_order_space(m);
  rep.ext1_dim = fos.ext1_dim;
  ExtResult ext_check = ext(m, m, 1);
  if (ext_check.dim != fos.ext1_dim)
    throw std::logic_error("first-order space dimension " + std::to_string(fos.ext1_dim) +
                           " disagrees with the syzygy presentation Ext^1 = " +
                           std::to_string(ext_check.dim));

  bool projective_module = kernel(projective_cover(m).pi).sub.is_zero();
  if (projective_module) {
    rep.universal = true;
    rep.justification = "projective";
  } else if (rep.end_dim == 1) {
    rep.universal = true;
    rep.justification = "end-trivial";
  } else if (rep.gp.is_yes() && rep.stable_end_dim == 1) {
    rep.universal = true;
    rep.justification = "gp-stable-end-trivial";
  } else {
    rep.universal = false;
    rep.justification = "none";
  }

  if (rep.ext1_dim == 0) {
    rep.ring = {RingClass::Kind::trivial, 0, 0};
    return rep;
  }
  if (rep.ext1_dim >= 2) {
    rep.ring = {RingClass::Kind::multivariable, 0, rep.ext1_dim};
    return rep;
  }

  // tangent dimension one: level-by-level obstruction calculus on the
  // normalized family rho + t delta + sum of parametrized corrections
  Mat L0 = linearized_operator(a, m.dims, m.action);
  Mat phi = kernel_basis(L0.transpose());  // cokernel functionals
  RrefResult rr = rref(Mat::hstack(L0, Mat::identity(f, L0.rows())));
  // solve operator: x = scatter(T y) with L0 x = y for y in the image;
  // only the rows whose pivot lands inside the L0 block participate
  std::size_t img_rank = 0;
  while (img_rank < rr.pivot_cols.size() && rr.pivot_cols[img_rank] < L0.cols()) ++img_rank;
  Mat T(f, img_rank, L0.rows());
  std::vector<std::size_t> pivot_cols;
  for (std::size_t i = 0; i < img_rank; ++i) {
    pivot_cols.push_back(rr.pivot_cols[i]);
    for (std::size_t j = 0; j < L0.rows(); ++j) T.at(i, j) = rr.reduced.at(i, L0.cols() + j);
  }

  const std::vector<Mat>& delta_bar = fos.complement[0];

  Family fam;
  fam.field = f;
  fam.nvars = 0;
  fam.level = 2;
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    PSeries ser;
    ser.push_back(pmat_from(f, 0, m.action[ar]));
    ser.push_back(pmat_from(f, 0, delta_bar[ar]));
    fam.coeffs.push_back(std::move(ser));
  }

  DeltaLayout dl = delta_layout(a, m.dims);

  while (fam.level < level_bound) {
    int target_level = fam.level + 1;
    std::vector<ParamPoly> O = family_obstruction(a, m.dims, fam);

    // project onto the cokernel
    std::vector<ParamPoly> q;
    for (std::size_t c = 0; c < phi.cols(); ++c) {
      ParamPoly acc(f, fam.nvars);
      for (std::size_t r = 0; r < phi.rows(); ++r)
        if (!phi.at(r, c).is_zero()) acc += O[r].scaled(phi.at(r, c));
      if (!acc.is_zero()) q.push_back(acc);
    }

    if (q.empty()) {
      // solvable for every parameter value: particular correction -S O(c)
      std::vector<ParamPoly> delta_flat(dl.total, ParamPoly(f, fam.nvars));
      for (std::size_t i = 0; i < img_rank; ++i) {
        ParamPoly acc(f, fam.nvars);
        for (std::size_t j = 0; j < L0.rows(); ++j)
          if (!T.at(i, j).is_zero()) acc += O[j].scaled(T.at(i, j));
        delta_flat[pivot_cols[i]] = -acc;
      }
      int old_nvars = fam.nvars;
      fam.extend_vars(old_nvars + 1);
      ParamPoly cnew = ParamPoly::variable(f, fam.nvars, old_nvars);
      for (int ar = 0; ar < a->num_arrows(); ++ar) {
        const Arrow& arr = a->spec().arrows[ar];
        int du = m.dims[arr.source], dw = m.dims[arr.target];
        PMat level_coeff(f, fam.nvars, dw, du);
        for (int i = 0; i < dw; ++i)
          for (int j = 0; j < du; ++j) {
            level_coeff.at(i, j) =
                delta_flat[dl.base[ar] + i * du + j].extended(fam.nvars) +
                cnew.scaled(delta_bar[ar].at(i, j));
          }
        fam.coeffs[ar].push_back(std::move(level_coeff));
      }
      fam.level = target_level;
      rep.obstruction_log.push_back({target_level, "extended",
                                     "obstruction lies in the image at every parameter value",
                                     old_nvars, fam.nvars});
      continue;
    }

    if (combo_gives_nonzero_constant(q, f)) {
      rep.ring = {RingClass::Kind::truncated, fam.level, 0};
      rep.obstruction_log.push_back(
          {target_level, "obstructed",
           "a linear combination of the cokernel obstruction polynomials is a nonzero "
           "constant; no parameter value extends the family (cokernel dim " +
               std::to_string(phi.cols()) + ", image rank " + std::to_string(img_rank) + ")",
           fam.nvars, fam.nvars});
      return rep;
    }

    bool all_affine = std::all_of(q.begin(), q.end(),
                                  [](const ParamPoly& p) { return p.total_degree() <= 1; });
    if (all_affine) {
      // restrict the family to the affine solution set
      Mat A(f, q.size(), fam.nvars);
      Mat b(f, q.size(), 1);
      for (std::size_t i = 0; i < q.size(); ++i)
        for (const auto& [e, c] : q[i].terms()) {
          if (is_zero_exponent(e)) {
            b.at(i, 0) = -c;
          } else {
            int var = -1;
            for (int v = 0; v < fam.nvars; ++v)
              if (e[v] == 1) var = v;
            A.at(i, var) = c;
          }
        }
      auto sol = solve_affine(A, b);
      if (!sol) {
        rep.ring = {RingClass::Kind::truncated, fam.level, 0};
        rep.obstruction_log.push_back({target_level, "obstructed",
                                       "affine obstruction system inconsistent", fam.nvars,
                                       fam.nvars});
        return rep;
      }
      int new_nvars = static_cast<int>(sol->homogeneous.cols());
      std::vector<ParamPoly> subs;
      for (int v = 0; v < fam.nvars; ++v) {
        ParamPoly s = ParamPoly::constant(f, new_nvars, sol->particular.at(v, 0));
        for (int j = 0; j < new_nvars; ++j)
          s += ParamPoly::variable(f, new_nvars, j).scaled(sol->homogeneous.at(v, j));
        subs.push_back(std::move(s));
      }
      int before = fam.nvars;
      fam.substitute(subs, new_nvars);
      rep.obstruction_log.push_back({target_level, "restricted",
                                     "extendable parameters form an affine subspace",
                                     before, fam.nvars});
      continue;  // re-attempt the same level on the restricted family
    }

    // exhaustive decision over a small prime field
    if (!f.is_rational()) {
      double combos = 1;
      for (int v = 0; v < fam.nvars; ++v) combos *= f.characteristic();
      if (combos <= (1 << 20)) {
        std::vector<std::vector<Scalar>> roots;
        std::vector<Scalar> point(fam.nvars, Scalar(f));
        std::function<void(int)> scan = [&](int v) {
          if (!roots.empty() && roots.size() > 1) return;
          if (v == fam.nvars) {
            for (const ParamPoly& p : q)
              if (!p.eval(point).is_zero()) return;
            roots.push_back(point);
            return;
          }
          for (std::uint32_t x = 0; x < f.characteristic(); ++x) {
            point[v] = Scalar::from_int(f, x);
            scan(v + 1);
          }
        };
        scan(0);
        if (roots.empty()) {
          rep.ring = {RingClass::Kind::truncated, fam.level, 0};
          rep.obstruction_log.push_back({target_level, "obstructed",
                                         "exhaustive search over F_p finds no extendable "
                                         "parameter value",
                                         fam.nvars, fam.nvars});
          return rep;
        }
        if (roots.size() == 1) {
          std::vector<ParamPoly> subs;
          for (int v = 0; v < fam.nvars; ++v)
            subs.push_back(ParamPoly::constant(f, 0, roots[0][v]));
          int before = fam.nvars;
          fam.substitute(subs, 0);
          rep.obstruction_log.push_back({target_level, "restricted",
                                         "unique extendable parameter value over F_p", before,
                                         0});
          continue;
        }
      }
    }

    // univariate system of degree <= 2 over Q: decide by gcd + discriminant
    if (f.is_rational()) {
      int used = -1;
      bool univariate = true;
      int maxdeg = 0;
      for (const ParamPoly& p : q) {
        for (const auto& [e, c] : p.terms())
          for (int v = 0; v < fam.nvars && univariate; ++v)
            if (e[v] > 0) {
              if (used < 0) used = v;
              if (used != v) univariate = false;
            }
        maxdeg = std::max(maxdeg, p.total_degree());
      }
      if (univariate && used >= 0 && maxdeg <= 2) {
        // univariate gcd over Q, degree <= 2
        auto coeffs_of = [&](const ParamPoly& p) {
          std::vector<mpq_class> c(3, 0);
          for (const auto& [e, x] : p.terms()) c[e[used]] = x.rational();
          while (c.size() > 1 && c.back() == 0) c.pop_back();
          return c;
        };
        auto polymod = [](std::vector<mpq_class> a, const std::vector<mpq_class>& b) {
          while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
            mpq_class f0 = a.back() / b.back();
            std::size_t off = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f0 * b[i];
            while (a.size() > 1 && a.back() == 0) a.pop_back();
            if (a.size() < b.size()) break;
          }
          return a;
        };
        std::vector<mpq_class> g = coeffs_of(q[0]);
        for (std::size_t i = 1; i < q.size(); ++i) {
          std::vector<mpq_class> h = coeffs_of(q[i]);
          while (!(h.size() == 1 && h[0] == 0)) {
            if (g.size() < h.size()) std::swap(g, h);
            g = polymod(g, h);
            std::swap(g, h);
          }
        }
        bool no_root = false;
        std::optional<mpq_class> the_root;
        if (g.size() == 1 && g[0] != 0) no_root = true;
        if (g.size() == 2) the_root = -g[0] / g[1];
        if (g.size() == 3) {
          mpq_class disc = g[1] * g[1] - 4 * g[2] * g[0];
          if (disc < 0) {
            no_root = true;
          } else {
            mpz_class num = disc.get_num(), den = disc.get_den();
            mpz_class sn, sd;
            mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
            mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
            if (sn * sn != num || sd * sd != den) {
              no_root = true;  // no rational root
            } else {
              mpq_class sq(sn, sd);
              sq.canonicalize();
              mpq_class r1 = (-g[1] + sq) / (2 * g[2]);
              mpq_class r2 = (-g[1] - sq) / (2 * g[2]);
              if (r1 == r2) the_root = r1;
              // two distinct roots: handled below as undetermined branching
            }
          }
        }
        if (no_root) {
          rep.ring = {RingClass::Kind::truncated, fam.level, 0};
          rep.obstruction_log.push_back({target_level, "obstructed",
                                         "the obstruction polynomials have no common rational "
                                         "root",
                                         fam.nvars, fam.nvars});
          return rep;
        }
        if (the_root) {
          std::vector<ParamPoly> subs;
          for (int v = 0; v < fam.nvars; ++v) {
            if (v == used) {
              Scalar rv(f);
              rv = Scalar::parse(f, the_root->get_str());
              subs.push_back(ParamPoly::constant(f, fam.nvars - 1, rv));
            } else {
              int nv = v < used ? v : v - 1;
              subs.push_back(ParamPoly::variable(f, fam.nvars - 1, nv));
            }
          }
          int before = fam.nvars;
          fam.substitute(subs, fam.nvars - 1);
          rep.obstruction_log.push_back({target_level, "restricted",
                                         "unique rational root of the univariate obstruction",
                                         before, fam.nvars});
          continue;
        }
      }
    }

    rep.ring = {RingClass::Kind::bounded, fam.level, 0};
    rep.obstruction_log.push_back({target_level, "undetermined",
                                   "obstruction system outside the decidable regime "
                                   "(nonlinear in the parameters)",
                                   fam.nvars, fam.nvars});
    return rep;
  }

  rep.ring = {RingClass::Kind::bounded, level_bound, 0};
  return rep;
}

SyzygyCompare syzygy_compare(const Rep& m, int level_bound, std::uint64_t seed,
                             const std::string& label) {
  if (m.is_zero()) throw invalid_module("syzygy comparison needs a nonzero module");
  SyzygyCompare sc{versal_report(m, level_bound, seed, label),
                   VersalReport{}, false};
  Rep om = syzygy(m, 1, /*strip=*/true);
  sc.syz = versal_report(om, level_bound, seed, "syzygy of " + label);
  sc.rings_match = ring_equal(sc.base.ring, sc.syz.ring);
  return sc;
}

}  // namespace qdr
