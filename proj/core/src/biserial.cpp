#include "qdr/biserial.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace qdr {

namespace {

// composition "second after first" as a length-two path
bool pair_in_rho(const Algebra& a, int first, int second, MembershipMode mode) {
  const QuiverSpec& spec = a.spec();
  if (mode == MembershipMode::literal) {
    for (const Relation& rel : spec.relations) {
      if (rel.size() != 1) continue;
      const auto& w = rel.front().arrows;
      if (w.size() == 2 && w[0] == first && w[1] == second) return true;
    }
    return false;
  }
  Path p{spec.arrows[first].source, spec.arrows[second].target, {first, second}};
  return a.path_in_ideal(p);
}

}  // namespace

BiserialReport check_special_biserial(const Algebra& a, MembershipMode mode) {
  const QuiverSpec& spec = a.spec();
  BiserialReport rep;

  for (int v = 0; v < a.num_vertices(); ++v) {
    int out = 0, in = 0;
    for (const Arrow& ar : spec.arrows) {
      if (ar.source == v) ++out;
      if (ar.target == v) ++in;
    }
    if (out > 2)
      rep.violations.push_back({"i", "vertex " + spec.vertices[v] + " starts " +
                                         std::to_string(out) + " arrows"});
    if (in > 2)
      rep.violations.push_back({"i'", "vertex " + spec.vertices[v] + " ends " +
                                          std::to_string(in) + " arrows"});
  }

  for (int b = 0; b < a.num_arrows(); ++b) {
    std::vector<int> comps_in, comps_out;
    for (int x = 0; x < a.num_arrows(); ++x) {
      // (ii): alpha with beta alpha not in rho
      if (spec.arrows[x].target == spec.arrows[b].source && !pair_in_rho(a, x, b, mode))
        comps_in.push_back(x);
      // (ii'): gamma with gamma beta not in rho
      if (spec.arrows[x].source == spec.arrows[b].target && !pair_in_rho(a, b, x, mode))
        comps_out.push_back(x);
    }
    if (comps_in.size() > 1) {
      std::string w = "arrow " + spec.arrows[b].name + " composes nontrivially with";
      for (int x : comps_in) w += " " + spec.arrows[x].name;
      rep.violations.push_back({"ii", w});
    }
    if (comps_out.size() > 1) {
      std::string w = "arrow " + spec.arrows[b].name + " is followed nontrivially by";
      for (int x : comps_out) w += " " + spec.arrows[x].name;
      rep.violations.push_back({"ii'", w});
    }
  }

  rep.special_biserial = rep.violations.empty();
  return rep;
}

BiserialReport check_gentle(const Algebra& a, MembershipMode mode) {
  const QuiverSpec& spec = a.spec();
  BiserialReport rep = check_special_biserial(a, mode);

  int rel_no = 0;
  for (const Relation& rel : spec.relations) {
    ++rel_no;
    if (rel.size() != 1) {
      rep.violations.push_back(
          {"iii", "relation " + std::to_string(rel_no) + " is not a monomial"});
      continue;
    }
    if (rel.front().arrows.size() != 2)
      rep.violations.push_back({"iii", "relation " + std::to_string(rel_no) + " has length " +
                                           std::to_string(rel.front().arrows.size())});
  }

  for (int b = 0; b < a.num_arrows(); ++b) {
    std::vector<int> killed_in, killed_out;
    for (int x = 0; x < a.num_arrows(); ++x) {
      if (spec.arrows[x].target == spec.arrows[b].source && pair_in_rho(a, x, b, mode))
        killed_in.push_back(x);
      if (spec.arrows[x].source == spec.arrows[b].target && pair_in_rho(a, b, x, mode))
        killed_out.push_back(x);
    }
    if (killed_in.size() > 1) {
      std::string w = "arrow " + spec.arrows[b].name + " kills";
      for (int x : killed_in) w += " " + spec.arrows[x].name;
      rep.violations.push_back({"iv", w});
    }
    if (killed_out.size() > 1) {
      std::string w = "arrow " + spec.arrows[b].name + " is killed by";
      for (int x : killed_out) w += " " + spec.arrows[x].name;
      rep.violations.push_back({"iv'", w});
    }
  }

  bool extra_ok = std::none_of(rep.violations.begin(), rep.violations.end(),
                               [](const Violation& v) {
                                 return v.condition == "iii" || v.condition == "iv" ||
                                        v.condition == "iv'";
                               });
  rep.gentle = rep.special_biserial && extra_ok;
  return rep;
}

namespace {

std::vector<int> canonical_rotation(const QuiverSpec& spec, std::vector<int> printed) {
  std::vector<int> best = printed;
  for (std::size_t r = 1; r < printed.size(); ++r) {
    std::rotate(printed.begin(), printed.begin() + 1, printed.end());
    auto less = [&](const std::vector<int>& x, const std::vector<int>& y) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        const std::string& xn = spec.arrows[x[i]].name;
        const std::string& yn = spec.arrows[y[i]].name;
        if (xn != yn) return xn < yn;
      }
      return false;
    };
    if (less(printed, best)) best = printed;
  }
  return best;
}

}  // namespace

CriticalCycles critical_cycles(const Algebra& a, MembershipMode mode) {
  BiserialReport g = check_gentle(a, mode);
  if (!g.gentle) throw not_gentle("critical cycles require a gentle algebra");

  const QuiverSpec& spec = a.spec();
  std::set<std::vector<int>> seen;
  CriticalCycles out;

  // DFS over application-order sequences with pairwise-distinct arrows and
  // every consecutive composition in the ideal.
  std::vector<int> chain;
  std::vector<bool> used(a.num_arrows(), false);

  auto emit = [&](const std::vector<int>& app_order) {
    std::vector<int> printed(app_order.rbegin(), app_order.rend());
    std::vector<int> canon = canonical_rotation(spec, printed);
    if (seen.insert(canon).second) out.cycles.push_back(canon);
  };

  std::function<void(int)> dfs = [&](int first) {
    int last = chain.back();
    // close the cycle?
    if (spec.arrows[last].target == spec.arrows[first].source &&
        pair_in_rho(a, last, first, mode))
      emit(chain);
    for (int nxt = 0; nxt < a.num_arrows(); ++nxt) {
      if (used[nxt]) continue;
      if (spec.arrows[last].target != spec.arrows[nxt].source) continue;
      if (!pair_in_rho(a, last, nxt, mode)) continue;
      used[nxt] = true;
      chain.push_back(nxt);
      dfs(first);
      chain.pop_back();
      used[nxt] = false;
    }
  };

  for (int first = 0; first < a.num_arrows(); ++first) {
    used[first] = true;
    chain = {first};
    dfs(first);
    used[first] = false;
  }

  std::sort(out.cycles.begin(), out.cycles.end(), [&](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::string& xn = spec.arrows[x[i]].name;
      const std::string& yn = spec.arrows[y[i]].name;
      if (xn != yn) return xn < yn;
    }
    return false;
  });

  // gentle algebras admit at most one critical cycle through each arrow
  std::vector<int> count(a.num_arrows(), 0);
  for (const auto& c : out.cycles)
    for (int ar : c) ++count[ar];
  for (int ar = 0; ar < a.num_arrows(); ++ar)
    if (count[ar] > 1)
      throw std::logic_error("arrow " + spec.arrows[ar].name +
                             " lies on two distinct critical cycles");
  return out;
}

std::vector<GProjEntry> classify_gproj_gentle(const AlgebraPtr& a, std::uint64_t seed,
                                              MembershipMode mode) {
  CriticalCycles cc = critical_cycles(*a, mode);  // throws not_gentle when it must
  const QuiverSpec& spec = a->spec();

  std::vector<GProjEntry> out;
  for (int v = 0; v < a->num_vertices(); ++v)
    out.push_back({"P_" + spec.vertices[v], projective(a, v), "", true});

  std::set<int> cycle_arrows;
  for (const auto& c : cc.cycles) cycle_arrows.insert(c.begin(), c.end());

  // candidate string modules: simples and direct strings along basis paths
  struct Candidate {
    std::string name;
    Rep module;
  };
  std::vector<Candidate> candidates;
  for (int v = 0; v < a->num_vertices(); ++v)
    candidates.push_back({"M[1_" + spec.vertices[v] + "]", simple(a, v)});
  for (const auto& bp : a->basis()) {
    if (bp.path.length() < 1) continue;
    StringWord w;
    for (int ar : bp.path.word) w.push_back({ar, false});
    std::string name;
    for (auto it = bp.path.word.rbegin(); it != bp.path.word.rend(); ++it)
      name += spec.arrows[*it].name;
    candidates.push_back({"M[" + name + "]", string_module(a, w)});
  }

  for (int ar = 0; ar < a->num_arrows(); ++ar) {
    if (!cycle_arrows.count(ar)) continue;
    GProjEntry e{"R(" + spec.arrows[ar].name + ")", ideal_module(a, ar), "", false};
    for (const Candidate& c : candidates) {
      if (c.module.dims != e.module.dims) continue;
      if (is_isomorphic(e.module, c.module, seed).is_yes()) {
        e.iso_name = c.name;
        break;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace qdr
