#include "qdr/homalg.hpp"

#include <algorithm>

namespace qdr {

namespace {

Mat flat_to_mat(Field f, const std::vector<Scalar>& flat) {
  Mat m(f, flat.size(), 1);
  for (std::size_t i = 0; i < flat.size(); ++i) m.at(i, 0) = flat[i];
  return m;
}

}  // namespace

Cover projective_cover(const Rep& m) {
  if (m.is_zero()) throw invalid_module("zero module has no projective cover");
  const AlgebraPtr& a = m.alg;
  Field f = m.field();

  QuotientResult t = top(m);
  Cover c{zero_rep(a), RepMap{}, std::vector<int>(a->num_vertices(), 0)};

  // per-vertex lifts of the top basis back into m
  std::vector<Mat> lifts;
  for (int v = 0; v < a->num_vertices(); ++v) {
    c.multiplicities[v] = t.quot.dims[v];
    auto sol = solve_matrix(t.projection.comps[v], Mat::identity(f, t.quot.dims[v]));
    if (!sol) throw std::logic_error("top projection not surjective");
    lifts.push_back(std::move(*sol));
  }

  std::vector<Mat> pi_comps;
  for (int v = 0; v < a->num_vertices(); ++v) pi_comps.emplace_back(f, m.dims[v], 0);

  for (int v = 0; v < a->num_vertices(); ++v) {
    if (c.multiplicities[v] == 0) continue;
    Rep pv = projective(a, v);
    auto coords = projective_coordinates(a, v);
    for (int copy = 0; copy < c.multiplicities[v]; ++copy) {
      Mat x = lifts[v].col(copy);  // generator in m_v
      c.total = direct_sum(c.total, pv);
      for (int w = 0; w < a->num_vertices(); ++w) {
        Mat block(f, m.dims[w], pv.dims[w]);
        for (std::size_t k = 0; k < coords[w].size(); ++k) {
          const Path& p = a->basis()[coords[w][k]].path;
          Mat img = path_action(m, p.word, v) * x;
          for (int i = 0; i < m.dims[w]; ++i) block.at(i, k) = img.at(i, 0);
        }
        pi_comps[w] = Mat::hstack(pi_comps[w], block);
      }
    }
  }

  c.pi = RepMap{c.total, m, pi_comps};
  return c;
}

Rep regular_rep(const AlgebraPtr& a) {
  Rep r = zero_rep(a);
  for (int v = 0; v < a->num_vertices(); ++v) r = direct_sum(r, projective(a, v));
  return r;
}

StripResult strip_projective_summands(const Rep& m) {
  StripResult res{m, {}};
  const AlgebraPtr& a = m.alg;
  Field f = m.field();

  bool changed = true;
  while (changed && !res.core.is_zero()) {
    changed = false;
    for (int v = 0; v < a->num_vertices() && !changed; ++v) {
      Rep pv = projective(a, v);
      if (pv.total_dim() == 0) continue;
      HomBasis into = hom_basis(pv, res.core);
      HomBasis from = hom_basis(res.core, pv);
      if (into.dim() == 0 || from.dim() == 0) continue;

      // top coefficient of an endomorphism of P_v at the generator slot
      auto coords = projective_coordinates(a, v);
      int gen_pos = -1;
      for (std::size_t k = 0; k < coords[v].size(); ++k)
        if (coords[v][k] == a->idempotent_index(v)) gen_pos = static_cast<int>(k);

      for (int i = 0; i < into.dim() && !changed; ++i)
        for (int j = 0; j < from.dim() && !changed; ++j) {
          RepMap u = compose(from.as_map(j), into.as_map(i));  // P_v -> P_v
          if (u.comps[v].at(gen_pos, gen_pos).is_zero()) continue;
          // unit of the local endomorphism ring: split off P_v
          std::vector<Mat> inv_comps;
          bool ok = true;
          for (const Mat& c : u.comps) {
            auto inv = c.inverse();
            if (!inv) {
              ok = false;
              break;
            }
            inv_comps.push_back(std::move(*inv));
          }
          if (!ok) throw std::logic_error("non-radical endomorphism of P_v not invertible");
          RepMap uinv{pv, pv, inv_comps};
          // idempotent e = f . u^{-1} . g on core with image P_v
          RepMap e = compose(into.as_map(i), compose(uinv, from.as_map(j)));
          std::vector<Mat> id_minus;
          for (std::size_t w = 0; w < e.comps.size(); ++w)
            id_minus.push_back(Mat::identity(f, res.core.dims[w]) - e.comps[w]);
          RepMap complement{res.core, res.core, id_minus};
          res.core = image(complement).sub;
          res.removed.push_back(v);
          changed = true;
        }
    }
  }
  return res;
}

Rep syzygy(const Rep& m, int n, bool strip) {
  if (n < 1) throw std::invalid_argument("syzygy power must be >= 1");
  Rep cur = m;
  for (int k = 0; k < n; ++k) {
    if (cur.is_zero()) return cur;
    Cover c = projective_cover(cur);
    cur = kernel(c.pi).sub;
    if (strip && !cur.is_zero()) cur = strip_projective_summands(cur).core;
  }
  return cur;
}

StableHom stable_hom(const Rep& m, const Rep& n) {
  StableHom s{hom_basis(m, n), 0, 0};
  if (s.ambient.dim() == 0) return s;
  if (n.is_zero()) {
    s.quotient_dim = 0;
    return s;
  }

  Cover c = projective_cover(n);
  HomBasis through = hom_basis(m, c.total);
  std::size_t ambient_size = flatten_map(m, n, s.ambient.basis[0]).size();
  RowSpace factor_space(m.field(), ambient_size);
  for (int i = 0; i < through.dim(); ++i) {
    RepMap composed = compose(c.pi, through.as_map(i));
    factor_space.insert(RowSpace::to_sparse(flatten_map(m, n, composed.comps)));
  }
  s.projective_factor_dim = static_cast<int>(factor_space.dim());
  s.quotient_dim = s.ambient.dim() - s.projective_factor_dim;
  return s;
}

ExtResult ext(const Rep& m, const Rep& n, int degree) {
  if (degree < 0) throw std::invalid_argument("Ext degree must be >= 0");
  if (degree == 0) return {0, hom_basis(m, n).dim(), 0, 0};

  Rep cur = m;
  Cover last_cover{};
  RepMap last_inclusion{};
  for (int k = 0; k < degree; ++k) {
    if (cur.is_zero()) return {degree, 0, 0, 0};
    last_cover = projective_cover(cur);
    auto ker = kernel(last_cover.pi);
    last_inclusion = ker.inclusion;
    cur = ker.sub;
  }
  // cur = Omega^degree m inside last_cover.total
  if (cur.is_zero()) return {degree, 0, 0, 0};

  HomBasis target_hom = hom_basis(cur, n);
  if (target_hom.dim() == 0) return {degree, 0, 0, 0};
  HomBasis from_proj = hom_basis(last_cover.total, n);
  std::size_t ambient_size = flatten_map(cur, n, target_hom.basis[0]).size();
  RowSpace restricted(m.field(), ambient_size);
  for (int i = 0; i < from_proj.dim(); ++i) {
    RepMap restr = compose(from_proj.as_map(i), last_inclusion);
    restricted.insert(RowSpace::to_sparse(flatten_map(cur, n, restr.comps)));
  }
  ExtResult r;
  r.degree = degree;
  r.ambient_hom_dim = target_hom.dim();
  r.restriction_rank = static_cast<int>(restricted.dim());
  r.dim = r.ambient_hom_dim - r.restriction_rank;
  return r;
}

int ext_against_regular(const Rep& m, int degree) {
  int total = 0;
  for (int v = 0; v < m.alg->num_vertices(); ++v)
    total += ext(m, projective(m.alg, v), degree).dim;
  return total;
}

ExtResult ext_via_stable(const Rep& m, const Rep& n, int degree) {
  if (degree < 1) throw std::invalid_argument("stable route needs degree >= 1");
  int obstruction = ext_against_regular(m, degree);
  if (obstruction != 0)
    throw hypothesis_failed("Ext^" + std::to_string(degree) +
                            "(m, Lambda) has dimension " + std::to_string(obstruction) +
                            ", the vanishing hypothesis fails");
  Rep om = syzygy(m, degree);
  StableHom s = stable_hom(om, n);
  return {degree, s.quotient_dim, s.ambient.dim(), s.projective_factor_dim};
}

namespace {

// right multiplication by an arrow: P_{t(a)} -> P_{s(a)}, x -> x a
RepMap right_mult_map(const AlgebraPtr& a, int arrow) {
  const Arrow& ar = a->spec().arrows[arrow];
  Rep src = projective(a, ar.target);
  Rep dst = projective(a, ar.source);
  auto src_coords = projective_coordinates(a, ar.target);
  auto dst_coords = projective_coordinates(a, ar.source);
  std::vector<int> dst_pos(a->dim(), -1);
  for (int v = 0; v < a->num_vertices(); ++v)
    for (std::size_t k = 0; k < dst_coords[v].size(); ++k)
      dst_pos[dst_coords[v][k]] = static_cast<int>(k);
  RepMap f{src, dst, {}};
  Algebra::Elem alpha = a->basis_elem(a->arrow_index(arrow));
  for (int v = 0; v < a->num_vertices(); ++v) {
    Mat comp(a->field(), dst.dims[v], src.dims[v]);
    for (std::size_t j = 0; j < src_coords[v].size(); ++j) {
      Algebra::Elem prod = a->multiply(a->basis_elem(src_coords[v][j]), alpha);
      for (int k = 0; k < a->dim(); ++k)
        if (!prod[k].is_zero()) comp.at(dst_pos[k], j) = prod[k];
    }
    f.comps.push_back(std::move(comp));
  }
  return f;
}

// coordinates of an intertwiner in a fixed hom basis (unique when the basis
// spans; throws otherwise)
Mat hom_coordinates(const HomBasis& basis, const Rep& src, const Rep& tgt,
                    const std::vector<Mat>& comps) {
  Field f = src.field();
  std::vector<Scalar> flat_target = flatten_map(src, tgt, comps);
  Mat B(f, flat_target.size(), basis.basis.size());
  for (std::size_t j = 0; j < basis.basis.size(); ++j) {
    std::vector<Scalar> col = flatten_map(src, tgt, basis.basis[j]);
    for (std::size_t i = 0; i < col.size(); ++i) B.at(i, j) = col[i];
  }
  auto sol = solve_matrix(B, flat_to_mat(f, flat_target));
  if (!sol) throw std::logic_error("map does not lie in the span of the hom basis");
  return *sol;
}

}  // namespace

Rep dual_module(const Rep& m) {
  const AlgebraPtr& a = m.alg;
  AlgebraPtr op = opposite(a);
  Field f = m.field();

  std::vector<HomBasis> bases;
  for (int v = 0; v < a->num_vertices(); ++v) bases.push_back(hom_basis(m, projective(a, v)));

  Rep dual{op, {}, {}};
  for (int v = 0; v < a->num_vertices(); ++v) dual.dims.push_back(bases[v].dim());
  dual.action.resize(a->num_arrows(), Mat(f, 0, 0));

  for (int arrow = 0; arrow < a->num_arrows(); ++arrow) {
    const Arrow& ar = a->spec().arrows[arrow];
    // op arrow: t(a) -> s(a); acts by post-composition with right mult
    RepMap r = right_mult_map(a, arrow);
    Mat act(f, dual.dims[ar.source], dual.dims[ar.target]);
    for (int j = 0; j < bases[ar.target].dim(); ++j) {
      RepMap composed = compose(r, bases[ar.target].as_map(j));
      Mat coords = hom_coordinates(bases[ar.source], m, r.target, composed.comps);
      for (int i = 0; i < dual.dims[ar.source]; ++i) act.at(i, j) = coords.at(i, 0);
    }
    dual.action[arrow] = std::move(act);
  }
  return dual;
}

Rep klinear_dual(const Rep& m) {
  Rep d{opposite(m.alg), m.dims, {}};
  for (const Mat& act : m.action) d.action.push_back(act.transpose());
  return d;
}

BidualResult bidual_with_map(const Rep& m) {
  const AlgebraPtr& a = m.alg;
  AlgebraPtr op = opposite(a);
  Field f = m.field();

  Rep mstar = dual_module(m);
  Rep mss = dual_module(mstar);

  // the dual bases used inside dual_module, rebuilt for coordinates
  std::vector<HomBasis> star_bases;
  for (int v = 0; v < a->num_vertices(); ++v)
    star_bases.push_back(hom_basis(m, projective(a, v)));
  std::vector<HomBasis> bidual_bases;
  for (int v = 0; v < op->num_vertices(); ++v)
    bidual_bases.push_back(hom_basis(mstar, projective(op, v)));

  std::vector<Mat> ev_comps;
  for (int v = 0; v < a->num_vertices(); ++v) {
    Mat evv(f, mss.dims[v], m.dims[v]);
    Rep pv_op = projective(op, v);
    for (int k = 0; k < m.dims[v]; ++k) {
      // evaluation at the k-th unit vector of m_v, as a map mstar -> P^op_v
      std::vector<Mat> comps;
      for (int u = 0; u < a->num_vertices(); ++u) {
        Mat cu(f, pv_op.dims[u], mstar.dims[u]);
        for (int j = 0; j < mstar.dims[u]; ++j) {
          const Mat& fj_at_v = star_bases[u].basis[j][v];  // (P_u)_v x m_v
          for (std::size_t r = 0; r < fj_at_v.rows(); ++r) cu.at(r, j) = fj_at_v.at(r, k);
        }
        comps.push_back(std::move(cu));
      }
      Mat coords = hom_coordinates(bidual_bases[v], mstar, pv_op, comps);
      for (int i = 0; i < mss.dims[v]; ++i) evv.at(i, k) = coords.at(i, 0);
    }
    ev_comps.push_back(std::move(evv));
  }

  BidualResult res{mss, RepMap{m, mss, ev_comps}, false};
  res.canonical_iso = res.eval.is_invertible();
  return res;
}

TriResult is_totally_reflexive(const Rep& m, int bound, std::uint64_t seed) {
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  if (m.is_zero()) return {Tri::yes, "zero module"};

  for (int i = 1; i <= bound; ++i) {
    int d = ext_against_regular(m, i);
    if (d != 0)
      return {Tri::no, "Ext^" + std::to_string(i) + "(m, Lambda) has dimension " +
                           std::to_string(d)};
  }
  Rep mstar = dual_module(m);
  for (int i = 1; i <= bound; ++i) {
    int d = ext_against_regular(mstar, i);
    if (d != 0)
      return {Tri::no, "Ext^" + std::to_string(i) +
                           "(dual, Lambda^op) has dimension " + std::to_string(d)};
  }

  BidualResult bd = bidual_with_map(m);
  bool dd_ok = bd.canonical_iso;
  if (!dd_ok) {
    IsoResult iso = is_isomorphic(m, bd.bidual, seed);
    if (iso.is_no()) return {Tri::no, "module is not isomorphic to its double dual"};
    if (!iso.is_yes())
      return {Tri::unknown, "double dual comparison inconclusive at bound " +
                                std::to_string(bound)};
  }

  GorensteinData g = gorenstein_data(m.alg, bound, seed);
  if (g.finite() && bound >= g.max())
    return {Tri::yes, "all conditions verified; bound covers the injective dimension " +
                          std::to_string(g.max())};
  return {Tri::unknown, "conditions hold up to bound " + std::to_string(bound) +
                            " but the Gorenstein data does not certify sufficiency"};
}

PdResult projective_dimension(const Rep& m, int bound, std::uint64_t seed) {
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  std::vector<Rep> chain;  // stripped syzygies for periodicity detection
  Rep cur = m;
  for (int k = 0; k <= bound; ++k) {
    if (cur.is_zero()) return {PdResult::Kind::finite, std::max(0, k - 1), 0, 0};
    Cover c = projective_cover(cur);
    Rep ker = kernel(c.pi).sub;
    if (ker.is_zero()) return {PdResult::Kind::finite, k, 0, 0};
    chain.push_back(cur);
    for (int j = 0; j < static_cast<int>(chain.size()) - 0; ++j) {
      if (j >= static_cast<int>(chain.size())) break;
      if (chain[j].dims != ker.dims) continue;
      if (is_isomorphic(chain[j], ker, seed).is_yes())
        return {PdResult::Kind::infinite, 0, j, k + 1};
    }
    cur = ker;
  }
  return {PdResult::Kind::at_least, bound, 0, 0};
}

GorensteinData gorenstein_data(const AlgebraPtr& a, int bound, std::uint64_t seed) {
  GorensteinData g;
  g.bound = bound;
  AlgebraPtr op = opposite(a);

  PdResult left = projective_dimension(klinear_dual(regular_rep(a)), bound, seed);
  if (left.kind == PdResult::Kind::finite) g.left_injdim = left.value;
  PdResult right = projective_dimension(klinear_dual(regular_rep(op)), bound, seed);
  if (right.kind == PdResult::Kind::finite) g.right_injdim = right.value;

  if (g.finite() && *g.left_injdim != *g.right_injdim)
    throw std::logic_error("left and right injective dimensions disagree");
  return g;
}

TriResult is_gorenstein_projective(const Rep& m, int bound, std::uint64_t seed) {
  if (m.is_zero()) return {Tri::yes, "zero module"};
  GorensteinData g = gorenstein_data(m.alg, bound, seed);
  if (g.finite()) {
    int d = g.max();
    for (int i = 1; i <= d; ++i) {
      int dim = ext_against_regular(m, i);
      if (dim != 0)
        return {Tri::no, "Ext^" + std::to_string(i) + "(m, Lambda) has dimension " +
                             std::to_string(dim)};
    }
    return {Tri::yes, "Cohen-Macaulay test over a Gorenstein algebra, d = " +
                          std::to_string(d)};
  }
  return is_totally_reflexive(m, bound, seed);
}

}  // namespace qdr
