#pragma once

#include "qdr/rep.hpp"

namespace qdr {

struct hypothesis_failed : std::runtime_error {
  explicit hypothesis_failed(const std::string& what) : std::runtime_error(what) {}
};

// Minimal projective cover P -> m. The cover is the direct sum, in vertex
// order, of projective(v) with multiplicity = dim of the vertex-v part of
// top(m); pi is surjective with kernel inside rad P.
struct Cover {
  Rep total;
  RepMap pi;
  std::vector<int> multiplicities;
};

Cover projective_cover(const Rep& m);

// Left regular module as the direct sum of all indecomposable projectives
// (the algebra is basic, so each occurs once).
Rep regular_rep(const AlgebraPtr& a);

// n-th syzygy via iterated minimal covers, re-coordinatized to canonical
// bases. With strip = true, projective direct summands detected by
// idempotent splitting of End are removed after each step.
Rep syzygy(const Rep& m, int n, bool strip = false);

struct StripResult {
  Rep core;                  // complement after removing projective summands
  std::vector<int> removed;  // vertices of removed indecomposable projectives
};
StripResult strip_projective_summands(const Rep& m);

struct StableHom {
  HomBasis ambient;
  int projective_factor_dim = 0;
  int quotient_dim = 0;
};

// Hom modulo maps factoring through a projective; a map factors through a
// projective iff it factors through the cover of the target.
StableHom stable_hom(const Rep& m, const Rep& n);

struct ExtResult {
  int degree = 0;
  int dim = 0;
  int ambient_hom_dim = 0;   // dim Hom(Omega^i m, n)
  int restriction_rank = 0;  // rank of Hom(P_{i-1}, n) restricted to the syzygy
};

// Ext^i(m, n) as the cokernel of the restriction map
// Hom(P_{i-1}, n) -> Hom(Omega^i m, n) along the syzygy inclusion.
ExtResult ext(const Rep& m, const Rep& n, int degree);

// Ext^i(m, n) computed as stable Hom(Omega^i m, n); requires the vanishing
// hypothesis Ext^i(m, Lambda) = 0 and throws hypothesis_failed otherwise.
ExtResult ext_via_stable(const Rep& m, const Rep& n, int degree);

// dim Ext^i(m, Lambda) via the regular module, summed over projectives.
int ext_against_regular(const Rep& m, int degree);

// Hom(m, Lambda) as a left module over the opposite algebra.
Rep dual_module(const Rep& m);

// k-linear dual D(m) = Hom_k(m, k) as a module over the opposite algebra:
// same dimension vector, transposed action on reversed arrows.
Rep klinear_dual(const Rep& m);

struct BidualResult {
  Rep bidual;
  RepMap eval;          // canonical comparison map m -> m**
  bool canonical_iso = false;
};
BidualResult bidual_with_map(const Rep& m);

enum class Tri { yes, no, unknown };

struct TriResult {
  Tri value = Tri::unknown;
  std::string detail;

  bool is_yes() const { return value == Tri::yes; }
  bool is_no() const { return value == Tri::no; }
};

// Total reflexivity: m isomorphic to its double dual and Ext^i(m, Lambda),
// Ext^i over the opposite algebra of the dual both vanish for 1 <= i <=
// bound. A definite "yes" additionally needs the bound to cover the
// algebra's Gorenstein data.
TriResult is_totally_reflexive(const Rep& m, int bound, std::uint64_t seed = 0);

struct PdResult {
  enum class Kind { finite, infinite, at_least } kind = Kind::at_least;
  int value = 0;        // pd when finite, the bound otherwise
  int period_from = 0;  // syzygy periodicity witness for infinite
  int period_to = 0;
};

PdResult projective_dimension(const Rep& m, int bound, std::uint64_t seed = 0);

struct GorensteinData {
  std::optional<int> left_injdim;
  std::optional<int> right_injdim;
  int bound = 0;

  bool finite() const { return left_injdim && right_injdim; }
  int max() const { return std::max(*left_injdim, *right_injdim); }
};

// Injective dimensions of the algebra on both sides, computed as projective
// dimensions of the k-linear duals of the regular modules; the two agree
// whenever both are finite.
GorensteinData gorenstein_data(const AlgebraPtr& a, int bound, std::uint64_t seed = 0);

// Exact decision through Ext^i(m, Lambda) = 0 for 1 <= i <= d when the
// algebra's Gorenstein data is finite with maximum d; otherwise falls back
// to the totally-reflexive test at the given bound.
TriResult is_gorenstein_projective(const Rep& m, int bound, std::uint64_t seed = 0);

}  // namespace qdr
