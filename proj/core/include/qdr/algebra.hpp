#pragma once

#include <memory>
#include <mutex>

#include "qdr/matrix.hpp"
#include "qdr/quiver.hpp"

namespace qdr {

struct not_admissible : std::runtime_error {
  explicit not_admissible(const std::string& what) : std::runtime_error(what) {}
};

// Finite-dimensional quotient of the path algebra of a quiver by the
// two-sided ideal generated by the spec's relations. The basis consists of
// path representatives chosen greedily by (length, lexicographic arrow
// order); multiplication is tabulated on the basis.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  using Elem = std::vector<Scalar>;                       // dense coordinates over basis
  using Sparse = std::vector<std::pair<int, Scalar>>;     // sorted by basis index

  struct BasisPath {
    Path path;
    std::string name;
  };

  const QuiverSpec& spec() const { return spec_; }
  Field field() const { return spec_.field; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int num_vertices() const { return static_cast<int>(spec_.vertices.size()); }
  int num_arrows() const { return static_cast<int>(spec_.arrows.size()); }
  int nilpotency() const { return nilpotency_; }

  const std::vector<BasisPath>& basis() const { return basis_; }
  int idempotent_index(int vertex) const { return idempotent_[vertex]; }
  int arrow_index(int arrow) const { return arrow_class_[arrow]; }

  const Sparse& mult_entry(int i, int j) const { return mult_[i][j]; }

  Elem zero_elem() const { return Elem(basis_.size(), Scalar(field())); }
  Elem unit() const;
  Elem basis_elem(int i) const;
  Elem multiply(const Elem& x, const Elem& y) const;

  // Class of an arbitrary path in the quotient (zero vector when it dies).
  Elem path_class(const Path& p) const;
  bool path_in_ideal(const Path& p) const;

  // Indices of basis elements lying in J^n (the n-th radical power).
  const std::vector<std::vector<int>>& radical_layers() const { return radical_layers_; }

  friend std::shared_ptr<const Algebra> build_algebra(const QuiverSpec& spec);
  friend std::shared_ptr<const Algebra> opposite(const std::shared_ptr<const Algebra>& a);

 private:
  Algebra() = default;
  void compute_radical_filtration();

  QuiverSpec spec_;
  std::vector<BasisPath> basis_;
  std::vector<std::vector<Sparse>> mult_;
  std::vector<int> idempotent_;    // per vertex
  std::vector<int> arrow_class_;   // per arrow
  std::vector<std::vector<int>> radical_layers_;  // [n] = basis indices in J^n, n = 0..nilpotency
  int nilpotency_ = 0;

  mutable std::mutex op_mutex_;
  mutable std::weak_ptr<const Algebra> op_cache_;
  std::shared_ptr<const Algebra> op_of_;  // set on opposites, points back
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// Constructs the quotient, searching for a truncation degree N with all
// length-N paths inside the ideal (start 2 x longest relation term, double
// on failure, hard cap 64). Throws not_admissible at the cap.
AlgebraPtr build_algebra(const QuiverSpec& spec);

// Same basis indexing with reversed paths and transposed multiplication;
// involutive: opposite(opposite(a)) is pointer-identical to a.
AlgebraPtr opposite(const AlgebraPtr& a);

std::vector<int> radical_power_basis(const Algebra& a, int n);

}  // namespace qdr
