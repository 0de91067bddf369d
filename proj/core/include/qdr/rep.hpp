#pragma once

#include <optional>
#include <random>

#include "qdr/algebra.hpp"

namespace qdr {

struct invalid_module : std::runtime_error {
  explicit invalid_module(const std::string& what) : std::runtime_error(what) {}
};

// A finite-dimensional left module presented as a quiver representation:
// one space per vertex, one matrix per arrow, every relation evaluating to
// zero. Immutable by convention; operations return fresh values.
struct Rep {
  AlgebraPtr alg;
  std::vector<int> dims;    // per vertex
  std::vector<Mat> action;  // per arrow: dims[target] x dims[source]

  Field field() const { return alg->field(); }
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  bool same_shape(const Rep& o) const { return alg == o.alg && dims == o.dims; }
};

// Intertwiner f: source -> target, one matrix per vertex.
struct RepMap {
  Rep source;
  Rep target;
  std::vector<Mat> comps;  // per vertex: target.dims[v] x source.dims[v]

  bool is_intertwiner() const;
  bool is_invertible() const;
  bool is_surjective() const;
  Mat apply_column(int vertex, const Mat& col) const { return comps[vertex] * col; }
};

RepMap identity_map(const Rep& m);
RepMap compose(const RepMap& g, const RepMap& f);  // g after f

Rep zero_rep(const AlgebraPtr& a);
Rep simple(const AlgebraPtr& a, int vertex);
Rep projective(const AlgebraPtr& a, int vertex);

// Algebra basis indices that realize the coordinates of projective(vertex):
// slot v lists the basis paths with the given source and target v, in the
// order used by the representation.
std::vector<std::vector<int>> projective_coordinates(const AlgebraPtr& a, int vertex);

struct StringLetter {
  int arrow = 0;
  bool inverse = false;
};

// Letters in application order (first letter of the walk first); the JSON
// word arrays arrive leftmost-last-applied and must be reversed by the caller.
using StringWord = std::vector<StringLetter>;

StringWord parse_string_word(const QuiverSpec& spec, const std::vector<std::string>& json_word);
StringWord inverse_word(const StringWord& w);

Rep string_module(const AlgebraPtr& a, const StringWord& w);
Rep ideal_module(const AlgebraPtr& a, int arrow);

std::vector<std::string> validate(const Rep& m);  // empty = ok

Rep direct_sum(const Rep& m, const Rep& n);

// action of a path on the source-vertex component
Mat path_action(const Rep& m, const std::vector<int>& word, int source_vertex);
Mat element_action(const Rep& m, const Algebra::Elem& x, int source_vertex, int target_vertex);

struct IsoResult {
  enum class Verdict { yes, no, inconclusive } verdict;
  std::optional<RepMap> witness;  // set on yes
  std::string reason;

  bool is_yes() const { return verdict == Verdict::yes; }
  bool is_no() const { return verdict == Verdict::no; }
};

// Randomized isomorphism test. "no" is certified (dimension or Hom/End
// dimension obstructions); "yes" carries an invertible intertwiner found by
// sampling the Hom space (64 trials); otherwise inconclusive.
IsoResult is_isomorphic(const Rep& m, const Rep& n, std::uint64_t seed);

// Submodule given per-vertex spanning columns; re-coordinatized to the
// canonical reduced basis so equal constructions are bit-identical.
struct SubmoduleResult {
  Rep sub;
  RepMap inclusion;
};
SubmoduleResult submodule(const Rep& m, const std::vector<Mat>& spanning_cols);

struct QuotientResult {
  Rep quot;
  RepMap projection;
};
QuotientResult quotient(const Rep& m, const std::vector<Mat>& sub_cols);

SubmoduleResult image(const RepMap& f);
SubmoduleResult kernel(const RepMap& f);

SubmoduleResult radical_submodule(const Rep& m);
QuotientResult top(const Rep& m);

// All intertwiners m -> n as a list of per-vertex matrix tuples.
struct HomBasis {
  Rep source;
  Rep target;
  std::vector<std::vector<Mat>> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  RepMap as_map(std::size_t i) const { return RepMap{source, target, basis[i]}; }
};

HomBasis hom_basis(const Rep& m, const Rep& n);

// Flattened coordinates of an intertwiner in the ambient hom space.
std::vector<Scalar> flatten_map(const Rep& m, const Rep& n, const std::vector<Mat>& comps);

}  // namespace qdr
