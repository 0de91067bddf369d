#include "qdr/algebra.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace qdr {

namespace {

struct PathTable {
  // All paths of length <= cap, indexed in (length, lexicographic arrow
  // name sequence) order. Index order doubles as the elimination order:
  // pivoting on the largest index eliminates the longest representative.
  std::vector<Path> paths;
  std::map<std::vector<int>, int> by_word;  // nonempty application-order word -> id
  std::vector<int> trivial_ids;             // per vertex
  int cap = 0;

  // Nonempty words determine their endpoints; trivial paths are looked up
  // by vertex through trivial_ids.
  int id_of(const std::vector<int>& word) const {
    auto it = by_word.find(word);
    return it == by_word.end() ? -1 : it->second;
  }
};

PathTable enumerate_paths(const QuiverSpec& spec, int cap) {
  PathTable t;
  t.cap = cap;
  std::vector<std::vector<Path>> by_len(cap + 1);
  for (int v = 0; v < static_cast<int>(spec.vertices.size()); ++v)
    by_len[0].push_back(spec.trivial_path(v));
  for (int len = 1; len <= cap; ++len) {
    for (const Path& p : by_len[len - 1])
      for (int a = 0; a < static_cast<int>(spec.arrows.size()); ++a)
        if (spec.arrows[a].source == p.target) {
          Path q = p;
          q.word.push_back(a);
          q.target = spec.arrows[a].target;
          by_len[len].push_back(std::move(q));
        }
    auto lex = [&](const Path& x, const Path& y) {
      for (std::size_t i = 0; i < x.word.size(); ++i) {
        const std::string& xn = spec.arrows[x.word[i]].name;
        const std::string& yn = spec.arrows[y.word[i]].name;
        if (xn != yn) return xn < yn;
      }
      return false;
    };
    std::sort(by_len[len].begin(), by_len[len].end(), lex);
  }
  t.trivial_ids.resize(spec.vertices.size(), -1);
  for (auto& level : by_len)
    for (Path& p : level) {
      int id = static_cast<int>(t.paths.size());
      if (p.word.empty())
        t.trivial_ids[p.source] = id;
      else
        t.by_word.emplace(p.word, id);
      t.paths.push_back(std::move(p));
    }
  return t;
}

// Two-sided ideal span of the relations inside kQ/J^(cap+1), as a row
// echelon space over path coordinates. Closure by iterated one-arrow
// multiplication on both sides until the span stabilizes.
RowSpace ideal_span(const QuiverSpec& spec, const PathTable& t) {
  RowSpace span(spec.field, t.paths.size(), /*pivot_high=*/true);
  std::deque<RowSpace::SparseRow> work;

  auto push = [&](RowSpace::SparseRow row) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // merge duplicate path ids
    RowSpace::SparseRow merged;
    for (auto& [i, x] : row) {
      if (!merged.empty() && merged.back().first == i)
        merged.back().second += x;
      else
        merged.emplace_back(i, x);
    }
    std::erase_if(merged, [](const auto& e) { return e.second.is_zero(); });
    auto residual = span.reduce(std::move(merged));
    if (residual.empty()) return;
    Scalar inv = residual.back().second.inverse();
    for (auto& [i, x] : residual) x *= inv;
    span.insert(residual);
    work.push_back(std::move(residual));
  };

  for (const Relation& rel : spec.relations) {
    RowSpace::SparseRow row;
    for (const RelationTerm& term : rel) {
      int id = t.id_of(term.arrows);
      if (id < 0) continue;  // beyond the cap: zero in the truncation
      row.emplace_back(id, Scalar::parse(spec.field, term.coeff));
    }
    push(std::move(row));
  }

  while (!work.empty()) {
    RowSpace::SparseRow row = std::move(work.front());
    work.pop_front();
    for (int a = 0; a < static_cast<int>(spec.arrows.size()); ++a) {
      RowSpace::SparseRow left, right;
      for (const auto& [id, x] : row) {
        const Path& p = t.paths[id];
        if (p.target == spec.arrows[a].source) {  // a after p
          std::vector<int> w = p.word;
          w.push_back(a);
          int nid = t.id_of(w);
          if (nid >= 0) left.emplace_back(nid, x);
        }
        if (spec.arrows[a].target == p.source) {  // p after a
          std::vector<int> w;
          w.reserve(p.word.size() + 1);
          w.push_back(a);
          w.insert(w.end(), p.word.begin(), p.word.end());
          int nid = t.id_of(w);
          if (nid >= 0) right.emplace_back(nid, x);
        }
      }
      if (!left.empty()) push(std::move(left));
      if (!right.empty()) push(std::move(right));
    }
  }
  return span;
}

int longest_relation_term(const QuiverSpec& spec) {
  std::size_t n = 1;
  for (const Relation& rel : spec.relations)
    for (const RelationTerm& term : rel) n = std::max(n, term.arrows.size());
  return static_cast<int>(n);
}

}  // namespace

Algebra::Elem Algebra::unit() const {
  Elem e = zero_elem();
  for (int v = 0; v < num_vertices(); ++v) e[idempotent_[v]] = Scalar::one(field());
  return e;
}

Algebra::Elem Algebra::basis_elem(int i) const {
  Elem e = zero_elem();
  e[i] = Scalar::one(field());
  return e;
}

Algebra::Elem Algebra::multiply(const Elem& x, const Elem& y) const {
  if (x.size() != basis_.size() || y.size() != basis_.size())
    throw dimension_mismatch();
  Elem r = zero_elem();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      for (const auto& [k, v] : mult_[i][j]) r[k] += c * v;
    }
  }
  return r;
}

Algebra::Elem Algebra::path_class(const Path& p) const {
  Elem acc = basis_elem(idempotent_[p.source]);
  for (int a : p.word) acc = multiply(basis_elem(arrow_class_[a]), acc);
  return acc;
}

bool Algebra::path_in_ideal(const Path& p) const {
  Elem c = path_class(p);
  return std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); });
}

void Algebra::compute_radical_filtration() {
  Field f = field();
  radical_layers_.clear();
  std::vector<int> all(basis_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  radical_layers_.push_back(all);  // J^0 = A

  RowSpace layer(f, basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].path.length() >= 1) {
      RowSpace::SparseRow r{{i, Scalar::one(f)}};
      layer.insert(r);
    }

  int n = 1;
  while (layer.dim() > 0) {
    std::vector<int> members;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      RowSpace::SparseRow r{{i, Scalar::one(f)}};
      if (layer.contains(r)) members.push_back(static_cast<int>(i));
    }
    if (members.size() != layer.dim())
      throw std::logic_error("radical power is not spanned by basis elements");
    radical_layers_.push_back(members);

    // J^(n+1) = J . J^n
    RowSpace next(f, basis_.size());
    for (const auto& [pv, row] : layer.rows()) {
      for (int a = 0; a < num_arrows(); ++a) {
        Elem prod = zero_elem();
        for (const auto& [j, x] : row)
          for (const auto& [k, v] : mult_[arrow_class_[a]][j]) prod[k] += x * v;
        next.insert(RowSpace::to_sparse(prod));
      }
    }
    layer = std::move(next);
    ++n;
  }
  nilpotency_ = n;
}

AlgebraPtr build_algebra(const QuiverSpec& spec) {
  int start = std::max({2 * longest_relation_term(spec), spec.max_len_hint, 2});
  constexpr int kCap = 64;

  for (int cap = start;; cap *= 2) {
    if (cap > kCap)
      throw not_admissible(
          "relation ideal does not contain all paths of any length up to the search cap " +
          std::to_string(kCap) + "; the quotient is not finite-dimensional (or needs a larger cap)");
    PathTable t = enumerate_paths(spec, std::min(cap, kCap));
    RowSpace span = ideal_span(spec, t);

    bool all_top_in_ideal = true;
    for (std::size_t id = 0; id < t.paths.size(); ++id) {
      if (static_cast<int>(t.paths[id].length()) != t.cap) continue;
      RowSpace::SparseRow r{{id, Scalar::one(spec.field)}};
      if (!span.contains(r)) {
        all_top_in_ideal = false;
        break;
      }
    }
    if (!all_top_in_ideal) continue;

    auto alg = std::shared_ptr<Algebra>(new Algebra());
    alg->spec_ = spec;

    std::vector<int> basis_of_path(t.paths.size(), -1);
    for (std::size_t id = 0; id < t.paths.size(); ++id) {
      if (span.has_pivot(id)) continue;
      basis_of_path[id] = static_cast<int>(alg->basis_.size());
      alg->basis_.push_back({t.paths[id], path_name(spec, t.paths[id])});
    }

    alg->idempotent_.assign(spec.vertices.size(), -1);
    for (std::size_t id = 0; id < t.paths.size(); ++id) {
      const Path& p = t.paths[id];
      if (p.length() == 0) alg->idempotent_[p.source] = basis_of_path[id];
    }
    alg->arrow_class_.resize(spec.arrows.size(), -1);
    for (std::size_t id = 0; id < t.paths.size(); ++id) {
      const Path& p = t.paths[id];
      if (p.length() == 1) alg->arrow_class_[p.word[0]] = basis_of_path[id];
    }
    for (int v : alg->idempotent_)
      if (v < 0) throw std::logic_error("trivial path eliminated from the basis");
    for (int a : alg->arrow_class_)
      if (a < 0) throw std::logic_error("arrow eliminated from the basis");

    // multiplication table on basis classes
    std::size_t n = alg->basis_.size();
    alg->mult_.assign(n, std::vector<Algebra::Sparse>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const Path& pi = alg->basis_[i].path;
      for (std::size_t j = 0; j < n; ++j) {
        const Path& pj = alg->basis_[j].path;
        if (pj.target != pi.source) continue;  // basis_i * basis_j = (pi after pj)
        std::vector<int> w = pj.word;
        w.insert(w.end(), pi.word.begin(), pi.word.end());
        if (static_cast<int>(w.size()) > t.cap) continue;  // inside J^N, hence the ideal
        int id = w.empty() ? t.trivial_ids[pj.source] : t.id_of(w);
        RowSpace::SparseRow r{{static_cast<std::size_t>(id), Scalar::one(spec.field)}};
        auto residual = span.reduce_all(std::move(r));
        Algebra::Sparse coords;
        for (const auto& [pid, x] : residual) coords.emplace_back(basis_of_path[pid], x);
        std::sort(coords.begin(), coords.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        alg->mult_[i][j] = std::move(coords);
      }
    }

    alg->compute_radical_filtration();
    return alg;
  }
}

AlgebraPtr opposite(const AlgebraPtr& a) {
  if (a->op_of_) return a->op_of_;
  std::scoped_lock lock(a->op_mutex_);
  if (auto cached = a->op_cache_.lock()) return cached;

  auto op = std::shared_ptr<Algebra>(new Algebra());
  QuiverSpec s = a->spec();
  for (Arrow& ar : s.arrows) std::swap(ar.source, ar.target);
  for (Relation& rel : s.relations)
    for (RelationTerm& term : rel) std::reverse(term.arrows.begin(), term.arrows.end());
  op->spec_ = s;

  op->basis_.reserve(a->basis_.size());
  for (const auto& bp : a->basis_) {
    Path p = bp.path;
    std::swap(p.source, p.target);
    std::reverse(p.word.begin(), p.word.end());
    op->basis_.push_back({p, path_name(s, p)});
  }
  std::size_t n = a->basis_.size();
  op->mult_.assign(n, std::vector<Algebra::Sparse>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) op->mult_[i][j] = a->mult_[j][i];
  op->idempotent_ = a->idempotent_;
  op->arrow_class_ = a->arrow_class_;
  op->radical_layers_ = a->radical_layers_;
  op->nilpotency_ = a->nilpotency_;
  op->op_of_ = a;

  a->op_cache_ = op;
  return op;
}

std::vector<int> radical_power_basis(const Algebra& a, int n) {
  if (n < 0) throw std::invalid_argument("radical power must be nonnegative");
  const auto& layers = a.radical_layers();
  if (n >= static_cast<int>(layers.size())) return {};
  return layers[n];
}

}  // namespace qdr
