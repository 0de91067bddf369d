#include "qdr/rep.hpp"

#include <algorithm>
#include <sstream>

#include "qdr/biserial.hpp"

namespace qdr {

int Rep::total_dim() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

bool RepMap::is_intertwiner() const {
  const AlgebraPtr& a = source.alg;
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    int u = a->spec().arrows[ar].source;
    int w = a->spec().arrows[ar].target;
    if (comps[w] * source.action[ar] != target.action[ar] * comps[u]) return false;
  }
  return true;
}

bool RepMap::is_invertible() const {
  if (source.dims != target.dims) return false;
  for (const Mat& c : comps)
    if (c.rows() > 0 && !c.inverse()) return false;
  return true;
}

bool RepMap::is_surjective() const {
  for (std::size_t v = 0; v < comps.size(); ++v)
    if (rank(comps[v]) != static_cast<std::size_t>(target.dims[v])) return false;
  return true;
}

RepMap identity_map(const Rep& m) {
  RepMap f{m, m, {}};
  for (int d : m.dims) f.comps.push_back(Mat::identity(m.field(), d));
  return f;
}

RepMap compose(const RepMap& g, const RepMap& f) {
  RepMap h{f.source, g.target, {}};
  for (std::size_t v = 0; v < f.comps.size(); ++v) h.comps.push_back(g.comps[v] * f.comps[v]);
  return h;
}

Rep zero_rep(const AlgebraPtr& a) {
  Rep m{a, std::vector<int>(a->num_vertices(), 0), {}};
  for (int ar = 0; ar < a->num_arrows(); ++ar) m.action.emplace_back(a->field(), 0, 0);
  return m;
}

Rep simple(const AlgebraPtr& a, int vertex) {
  if (vertex < 0 || vertex >= a->num_vertices()) throw invalid_module("unknown vertex");
  Rep m = zero_rep(a);
  m.dims[vertex] = 1;
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    const Arrow& arr = a->spec().arrows[ar];
    m.action[ar] = Mat(a->field(), m.dims[arr.target], m.dims[arr.source]);
  }
  return m;
}

std::vector<std::vector<int>> projective_coordinates(const AlgebraPtr& a, int vertex) {
  std::vector<std::vector<int>> coords(a->num_vertices());
  for (int i = 0; i < a->dim(); ++i) {
    const Path& p = a->basis()[i].path;
    if (p.source == vertex) coords[p.target].push_back(i);
  }
  return coords;
}

Rep projective(const AlgebraPtr& a, int vertex) {
  if (vertex < 0 || vertex >= a->num_vertices()) throw invalid_module("unknown vertex");
  auto coords = projective_coordinates(a, vertex);
  Rep m{a, {}, {}};
  m.dims.resize(a->num_vertices());
  m.action.resize(a->num_arrows());
  std::vector<int> position(a->dim(), -1);
  for (int v = 0; v < a->num_vertices(); ++v) {
    m.dims[v] = static_cast<int>(coords[v].size());
    for (std::size_t k = 0; k < coords[v].size(); ++k) position[coords[v][k]] = static_cast<int>(k);
  }
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    const Arrow& arr = a->spec().arrows[ar];
    Mat act(a->field(), m.dims[arr.target], m.dims[arr.source]);
    for (std::size_t j = 0; j < coords[arr.source].size(); ++j) {
      const auto& prod = a->mult_entry(a->arrow_index(ar), coords[arr.source][j]);
      for (const auto& [k, c] : prod) act.at(position[k], j) = c;
    }
    m.action[ar] = std::move(act);
  }
  return m;
}

StringWord parse_string_word(const QuiverSpec& spec,
                             const std::vector<std::string>& json_word) {
  StringWord w;
  for (const std::string& tok : json_word) {
    StringLetter l;
    std::string name = tok;
    if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
      l.inverse = true;
      name = name.substr(0, name.size() - 3);
    }
    l.arrow = spec.arrow_index(name);
    if (l.arrow < 0) throw invalid_module("unknown arrow \"" + name + "\" in string word");
    w.push_back(l);
  }
  // JSON words are leftmost-last-applied; the walk starts at the right.
  std::reverse(w.begin(), w.end());
  return w;
}

StringWord inverse_word(const StringWord& w) {
  StringWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->arrow, !it->inverse});
  return r;
}

namespace {

int letter_from(const QuiverSpec& spec, const StringLetter& l) {
  return l.inverse ? spec.arrows[l.arrow].target : spec.arrows[l.arrow].source;
}
int letter_to(const QuiverSpec& spec, const StringLetter& l) {
  return l.inverse ? spec.arrows[l.arrow].source : spec.arrows[l.arrow].target;
}

}  // namespace

Rep string_module(const AlgebraPtr& a, const StringWord& w) {
  const QuiverSpec& spec = a->spec();
  if (w.empty()) throw invalid_module("empty string word (use a simple module instead)");

  BiserialReport br = check_special_biserial(*a, MembershipMode::ideal);
  if (!br.special_biserial)
    throw invalid_module("string modules require a special biserial algebra");

  // walk points p_0 .. p_n
  std::vector<int> point_vertex;
  point_vertex.push_back(letter_from(spec, w[0]));
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (letter_from(spec, w[i]) != point_vertex.back())
      throw invalid_module("string letters are not composable as a walk");
    point_vertex.push_back(letter_to(spec, w[i]));
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i].arrow == w[i + 1].arrow && w[i].inverse != w[i + 1].inverse)
      throw invalid_module("string contains a letter followed by its inverse");

  // maximal direct / inverse runs must avoid the relation ideal
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j + 1 < w.size() && w[j + 1].inverse == w[i].inverse) ++j;
    std::vector<int> word;
    if (!w[i].inverse)
      for (std::size_t k = i; k <= j; ++k) word.push_back(w[k].arrow);
    else
      for (std::size_t k = j + 1; k-- > i;) word.push_back(w[k].arrow);
    if (word.size() >= 2) {
      Path p{spec.arrows[word.front()].source, spec.arrows[word.back()].target, word};
      if (a->path_in_ideal(p))
        throw invalid_module("string contains a subword inside the relation ideal: " +
                             path_name(spec, p));
    }
    i = j + 1;
  }

  Rep m = zero_rep(a);
  std::vector<int> point_pos(point_vertex.size());
  for (std::size_t k = 0; k < point_vertex.size(); ++k) point_pos[k] = m.dims[point_vertex[k]]++;
  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    const Arrow& arr = spec.arrows[ar];
    m.action[ar] = Mat(a->field(), m.dims[arr.target], m.dims[arr.source]);
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    Mat& act = m.action[w[k].arrow];
    if (!w[k].inverse)
      act.at(point_pos[k + 1], point_pos[k]) = Scalar::one(a->field());
    else
      act.at(point_pos[k], point_pos[k + 1]) = Scalar::one(a->field());
  }

  auto bad = validate(m);
  if (!bad.empty()) throw invalid_module("string word does not define a module: " + bad.front());
  return m;
}

Rep ideal_module(const AlgebraPtr& a, int arrow) {
  const Arrow& arr = a->spec().arrows[arrow];
  Rep src = projective(a, arr.target);
  Rep dst = projective(a, arr.source);
  auto src_coords = projective_coordinates(a, arr.target);
  auto dst_coords = projective_coordinates(a, arr.source);
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
  return image(f).sub;
}

std::vector<std::string> validate(const Rep& m) {
  std::vector<std::string> problems;
  const QuiverSpec& spec = m.alg->spec();
  if (static_cast<int>(m.dims.size()) != m.alg->num_vertices() ||
      static_cast<int>(m.action.size()) != m.alg->num_arrows()) {
    problems.push_back("shape data does not match the quiver");
    return problems;
  }
  for (int ar = 0; ar < m.alg->num_arrows(); ++ar) {
    const Arrow& arr = spec.arrows[ar];
    if (m.action[ar].rows() != static_cast<std::size_t>(m.dims[arr.target]) ||
        m.action[ar].cols() != static_cast<std::size_t>(m.dims[arr.source])) {
      problems.push_back("matrix shape of arrow \"" + arr.name + "\" does not match dims");
      return problems;
    }
  }
  int rel_no = 0;
  for (const Relation& rel : spec.relations) {
    ++rel_no;
    int s = spec.arrows[rel.front().arrows.front()].source;
    int t = spec.arrows[rel.front().arrows.back()].target;
    Mat acc(m.field(), m.dims[t], m.dims[s]);
    for (const RelationTerm& term : rel) {
      Scalar c = Scalar::parse(m.field(), term.coeff);
      acc = acc + path_action(m, term.arrows, s).scaled(c);
    }
    if (!acc.is_zero()) {
      std::string terms;
      for (const RelationTerm& term : rel) {
        Path p{s, t, term.arrows};
        terms += (terms.empty() ? "" : " + ") + term.coeff + "*" + path_name(spec, p);
      }
      problems.push_back("relation " + std::to_string(rel_no) + " (" + terms +
                         ") evaluates to a nonzero matrix");
    }
  }
  return problems;
}

Rep direct_sum(const Rep& m, const Rep& n) {
  if (m.alg != n.alg) throw invalid_module("direct sum across different algebras");
  Rep s{m.alg, {}, {}};
  for (std::size_t v = 0; v < m.dims.size(); ++v) s.dims.push_back(m.dims[v] + n.dims[v]);
  for (int ar = 0; ar < m.alg->num_arrows(); ++ar) {
    const Arrow& arr = m.alg->spec().arrows[ar];
    Mat block(m.field(), s.dims[arr.target], s.dims[arr.source]);
    for (std::size_t i = 0; i < m.action[ar].rows(); ++i)
      for (std::size_t j = 0; j < m.action[ar].cols(); ++j)
        block.at(i, j) = m.action[ar].at(i, j);
    for (std::size_t i = 0; i < n.action[ar].rows(); ++i)
      for (std::size_t j = 0; j < n.action[ar].cols(); ++j)
        block.at(m.dims[arr.target] + i, m.dims[arr.source] + j) = n.action[ar].at(i, j);
    s.action.push_back(std::move(block));
  }
  return s;
}

Mat path_action(const Rep& m, const std::vector<int>& word, int source_vertex) {
  Mat acc = Mat::identity(m.field(), m.dims[source_vertex]);
  for (int ar : word) acc = m.action[ar] * acc;
  return acc;
}

Mat element_action(const Rep& m, const Algebra::Elem& x, int source_vertex, int target_vertex) {
  Mat acc(m.field(), m.dims[target_vertex], m.dims[source_vertex]);
  for (int i = 0; i < m.alg->dim(); ++i) {
    if (x[i].is_zero()) continue;
    const Path& p = m.alg->basis()[i].path;
    if (p.source != source_vertex || p.target != target_vertex) continue;
    acc = acc + path_action(m, p.word, source_vertex).scaled(x[i]);
  }
  return acc;
}

HomBasis hom_basis(const Rep& m, const Rep& n) {
  if (m.alg != n.alg) throw invalid_module("hom across different algebras");
  Field f = m.field();
  int nv = m.alg->num_vertices();
  std::vector<int> base(nv + 1, 0);
  for (int v = 0; v < nv; ++v) base[v + 1] = base[v] + n.dims[v] * m.dims[v];
  int unknowns = base[nv];

  std::size_t rows = 0;
  for (int ar = 0; ar < m.alg->num_arrows(); ++ar) {
    const Arrow& arr = m.alg->spec().arrows[ar];
    rows += static_cast<std::size_t>(n.dims[arr.target]) * m.dims[arr.source];
  }
  Mat E(f, rows, unknowns);
  std::size_t row0 = 0;
  for (int ar = 0; ar < m.alg->num_arrows(); ++ar) {
    const Arrow& arr = m.alg->spec().arrows[ar];
    int u = arr.source, w = arr.target;
    const Mat& Ma = m.action[ar];
    const Mat& Na = n.action[ar];
    // f_w M_a - N_a f_u = 0, entry (r, c): r < n.dims[w], c < m.dims[u]
    for (int r = 0; r < n.dims[w]; ++r)
      for (int c = 0; c < m.dims[u]; ++c) {
        std::size_t row = row0 + static_cast<std::size_t>(r) * m.dims[u] + c;
        for (int j = 0; j < m.dims[w]; ++j)
          E.at(row, base[w] + r * m.dims[w] + j) += Ma.at(j, c);
        for (int i = 0; i < n.dims[u]; ++i)
          E.at(row, base[u] + i * m.dims[u] + c) -= Na.at(r, i);
      }
    row0 += static_cast<std::size_t>(n.dims[w]) * m.dims[u];
  }

  Mat K = kernel_basis(E);
  HomBasis hb{m, n, {}};
  for (std::size_t col = 0; col < K.cols(); ++col) {
    std::vector<Mat> comps;
    for (int v = 0; v < nv; ++v) {
      Mat c(f, n.dims[v], m.dims[v]);
      for (int i = 0; i < n.dims[v]; ++i)
        for (int j = 0; j < m.dims[v]; ++j) c.at(i, j) = K.at(base[v] + i * m.dims[v] + j, col);
      comps.push_back(std::move(c));
    }
    hb.basis.push_back(std::move(comps));
  }
  return hb;
}

std::vector<Scalar> flatten_map(const Rep& m, const Rep& n, const std::vector<Mat>& comps) {
  std::vector<Scalar> flat;
  for (std::size_t v = 0; v < comps.size(); ++v)
    for (std::size_t i = 0; i < comps[v].rows(); ++i)
      for (std::size_t j = 0; j < comps[v].cols(); ++j) flat.push_back(comps[v].at(i, j));
  (void)m;
  (void)n;
  return flat;
}

IsoResult is_isomorphic(const Rep& m, const Rep& n, std::uint64_t seed) {
  if (m.alg != n.alg) throw invalid_module("isomorphism across different algebras");
  if (m.dims != n.dims)
    return {IsoResult::Verdict::no, std::nullopt, "dimension vectors differ"};
  if (m.total_dim() == 0) return {IsoResult::Verdict::yes, RepMap{m, n, {}}, "zero modules"};

  HomBasis hom = hom_basis(m, n);
  HomBasis end_m = hom_basis(m, m);
  HomBasis end_n = hom_basis(n, n);
  if (hom.dim() != end_m.dim() || end_m.dim() != end_n.dim())
    return {IsoResult::Verdict::no, std::nullopt,
            "hom/end dimension obstruction (dim Hom = " + std::to_string(hom.dim()) +
                ", dim End = " + std::to_string(end_m.dim()) + ", " +
                std::to_string(end_n.dim()) + ")"};
  if (hom.dim() == 0)
    return {IsoResult::Verdict::no, std::nullopt, "no nonzero homomorphisms"};

  std::mt19937_64 rng(seed);
  Field f = m.field();
  auto random_scalar = [&]() {
    if (f.is_rational()) {
      std::uniform_int_distribution<int> d(-3, 3);
      return Scalar::from_int(f, d(rng));
    }
    std::uniform_int_distribution<std::uint32_t> d(0, f.characteristic() - 1);
    return Scalar::from_int(f, d(rng));
  };

  for (int trial = 0; trial < 64; ++trial) {
    std::vector<Mat> cand;
    for (std::size_t v = 0; v < m.dims.size(); ++v) cand.emplace_back(f, n.dims[v], m.dims[v]);
    for (int i = 0; i < hom.dim(); ++i) {
      Scalar c = random_scalar();
      if (c.is_zero()) continue;
      for (std::size_t v = 0; v < cand.size(); ++v)
        cand[v] = cand[v] + hom.basis[i][v].scaled(c);
    }
    RepMap fmap{m, n, cand};
    if (fmap.is_invertible())
      return {IsoResult::Verdict::yes, std::move(fmap), "invertible intertwiner found"};
  }
  return {IsoResult::Verdict::inconclusive, std::nullopt,
          "no invertible combination found in 64 seeded samples"};
}

SubmoduleResult submodule(const Rep& m, const std::vector<Mat>& spanning_cols) {
  Field f = m.field();
  std::vector<Mat> S;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    RowSpace rs(f, m.dims[v]);
    for (std::size_t j = 0; j < spanning_cols[v].cols(); ++j) {
      std::vector<Scalar> row;
      for (int i = 0; i < m.dims[v]; ++i) row.push_back(spanning_cols[v].at(i, j));
      rs.insert_dense(row);
    }
    S.push_back(rs.basis_matrix().transpose());
  }

  Rep sub{m.alg, {}, {}};
  for (std::size_t v = 0; v < m.dims.size(); ++v) sub.dims.push_back(static_cast<int>(S[v].cols()));
  for (int ar = 0; ar < m.alg->num_arrows(); ++ar) {
    const Arrow& arr = m.alg->spec().arrows[ar];
    auto sol = solve_matrix(S[arr.target], m.action[ar] * S[arr.source]);
    if (!sol) throw invalid_module("spanning columns are not action-invariant");
    sub.action.push_back(std::move(*sol));
  }
  return {sub, RepMap{sub, m, S}};
}

QuotientResult quotient(const Rep& m, const std::vector<Mat>& sub_cols) {
  Field f = m.field();
  QuotientResult res{Rep{m.alg, {}, {}}, RepMap{}};
  std::vector<Mat> proj, lift;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    RowSpace rs(f, m.dims[v]);
    for (std::size_t j = 0; j < sub_cols[v].cols(); ++j) {
      std::vector<Scalar> row;
      for (int i = 0; i < m.dims[v]; ++i) row.push_back(sub_cols[v].at(i, j));
      rs.insert_dense(row);
    }
    std::vector<std::size_t> free_coords;
    for (int i = 0; i < m.dims[v]; ++i)
      if (!rs.has_pivot(i)) free_coords.push_back(i);

    Mat Q(f, free_coords.size(), m.dims[v]);
    for (int j = 0; j < m.dims[v]; ++j) {
      RowSpace::SparseRow e{{static_cast<std::size_t>(j), Scalar::one(f)}};
      auto residual = rs.reduce_all(e);
      for (const auto& [idx, x] : residual) {
        auto it = std::lower_bound(free_coords.begin(), free_coords.end(), idx);
        Q.at(static_cast<std::size_t>(it - free_coords.begin()), j) = x;
      }
    }
    Mat L(f, m.dims[v], free_coords.size());
    for (std::size_t k = 0; k < free_coords.size(); ++k)
      L.at(free_coords[k], k) = Scalar::one(f);
    res.quot.dims.push_back(static_cast<int>(free_coords.size()));
    proj.push_back(std::move(Q));
    lift.push_back(std::move(L));
  }
  for (int ar = 0; ar < m.alg->num_arrows(); ++ar) {
    const Arrow& arr = m.alg->spec().arrows[ar];
    res.quot.action.push_back(proj[arr.target] * m.action[ar] * lift[arr.source]);
  }
  res.projection = RepMap{m, res.quot, proj};
  return res;
}

SubmoduleResult image(const RepMap& f) { return submodule(f.target, f.comps); }

SubmoduleResult kernel(const RepMap& f) {
  std::vector<Mat> gens;
  for (std::size_t v = 0; v < f.comps.size(); ++v) gens.push_back(kernel_basis(f.comps[v]));
  return submodule(f.source, gens);
}

SubmoduleResult radical_submodule(const Rep& m) {
  std::vector<Mat> gens;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    Mat g(m.field(), m.dims[v], 0);
    for (int ar = 0; ar < m.alg->num_arrows(); ++ar)
      if (m.alg->spec().arrows[ar].target == static_cast<int>(v))
        g = Mat::hstack(g, m.action[ar]);
    gens.push_back(std::move(g));
  }
  return submodule(m, gens);
}

QuotientResult top(const Rep& m) {
  auto rad = radical_submodule(m);
  return quotient(m, rad.inclusion.comps);
}

}  // namespace qdr
