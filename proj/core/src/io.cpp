#include "qdr/io.hpp"

#include <fstream>
#include <sstream>

namespace qdr {

using nlohmann::json;

std::string slurp_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw spec_error("cannot read file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

NamedModule parse_module(const AlgebraPtr& a, const json& spec) {
  const QuiverSpec& qs = a->spec();
  std::string kind = spec.value("kind", "");
  if (kind == "simple") {
    std::string v = spec.value("vertex", "");
    int vi = qs.vertex_index(v);
    if (vi < 0) throw invalid_module("unknown vertex \"" + v + "\"");
    return {"M[1_" + v + "]", simple(a, vi)};
  }
  if (kind == "projective") {
    std::string v = spec.value("vertex", "");
    int vi = qs.vertex_index(v);
    if (vi < 0) throw invalid_module("unknown vertex \"" + v + "\"");
    return {"P_" + v, projective(a, vi)};
  }
  if (kind == "string") {
    std::vector<std::string> word = spec.value("word", std::vector<std::string>{});
    StringWord w = parse_string_word(qs, word);
    std::string name = "M[";
    for (const auto& tok : word) name += tok;
    name += "]";
    return {name, string_module(a, w)};
  }
  if (kind == "ideal") {
    std::string ar = spec.value("arrow", "");
    int ai = qs.arrow_index(ar);
    if (ai < 0) throw invalid_module("unknown arrow \"" + ar + "\"");
    return {"R(" + ar + ")", ideal_module(a, ai)};
  }
  if (kind == "sum") {
    Rep acc = zero_rep(a);
    std::string name;
    for (const auto& part : spec.value("parts", json::array())) {
      NamedModule nm = parse_module(a, part);
      acc = direct_sum(acc, nm.module);
      name += (name.empty() ? "" : " + ") + nm.name;
    }
    return {name.empty() ? "0" : name, acc};
  }
  if (kind == "explicit") {
    Rep m = zero_rep(a);
    for (auto& [vname, d] : spec.value("dims", json::object()).items()) {
      int vi = qs.vertex_index(vname);
      if (vi < 0) throw invalid_module("unknown vertex \"" + vname + "\"");
      m.dims[vi] = d.get<int>();
    }
    for (int ar = 0; ar < a->num_arrows(); ++ar) {
      const Arrow& arr = qs.arrows[ar];
      m.action[ar] = Mat(a->field(), m.dims[arr.target], m.dims[arr.source]);
    }
    for (auto& [aname, rows] : spec.value("matrices", json::object()).items()) {
      int ai = qs.arrow_index(aname);
      if (ai < 0) throw invalid_module("unknown arrow \"" + aname + "\"");
      const Arrow& arr = qs.arrows[ai];
      Mat mat(a->field(), m.dims[arr.target], m.dims[arr.source]);
      if (rows.size() != mat.rows()) throw invalid_module("matrix rows mismatch for " + aname);
      for (std::size_t i = 0; i < mat.rows(); ++i) {
        if (rows[i].size() != mat.cols())
          throw invalid_module("matrix cols mismatch for " + aname);
        for (std::size_t j = 0; j < mat.cols(); ++j)
          mat.at(i, j) = Scalar::parse(a->field(), rows[i][j].get<std::string>());
      }
      m.action[ai] = std::move(mat);
    }
    auto bad = validate(m);
    if (!bad.empty()) throw invalid_module("explicit module invalid: " + bad.front());
    return {"explicit", m};
  }
  if (kind == "band")
    throw invalid_module("band modules unsupported");
  throw invalid_module("unknown module kind \"" + kind + "\"");
}

std::vector<NamedModule> parse_module_list(const AlgebraPtr& a, const json& list) {
  std::vector<NamedModule> out;
  for (const auto& entry : list) {
    NamedModule nm = parse_module(a, entry.at("module"));
    if (entry.contains("name")) nm.name = entry["name"].get<std::string>();
    out.push_back(std::move(nm));
  }
  return out;
}

json gorenstein_to_json(const GorensteinData& g) {
  json j;
  j["left"] = g.left_injdim ? json(*g.left_injdim)
                            : json("at least " + std::to_string(g.bound));
  j["right"] = g.right_injdim ? json(*g.right_injdim)
                              : json("at least " + std::to_string(g.bound));
  j["finite"] = g.finite();
  return j;
}

json biserial_to_json(const BiserialReport& r) {
  json j;
  j["special_biserial"] = r.special_biserial;
  j["gentle"] = r.gentle;
  j["violations"] = json::array();
  for (const auto& v : r.violations)
    j["violations"].push_back({{"condition", v.condition}, {"witness", v.witness}});
  return j;
}

json ring_to_json(const RingClass& r) {
  json j;
  switch (r.kind) {
    case RingClass::Kind::trivial:
      j["type"] = "k";
      break;
    case RingClass::Kind::truncated:
      j["type"] = "truncated";
      j["N"] = r.n;
      break;
    case RingClass::Kind::bounded:
      j["type"] = "bounded";
      j["verified_level"] = r.n;
      break;
    case RingClass::Kind::multivariable:
      j["type"] = "multivariable";
      j["tangent_dim"] = r.tangent_dim;
      break;
  }
  j["display"] = ring_to_string(r);
  return j;
}

json versal_to_json(const VersalReport& r) {
  json j;
  j["module"] = r.module_label;
  j["gp"] = r.gp.is_yes() ? json(true) : (r.gp.is_no() ? json(false) : json("unknown"));
  j["gp_detail"] = r.gp.detail;
  j["end_dim"] = r.end_dim;
  j["stable_end_dim"] = r.stable_end_dim;
  j["ext1_dim"] = r.ext1_dim;
  j["ring"] = ring_to_json(r.ring);
  j["universal"] = r.universal;
  j["justification"] = r.justification;
  j["field"] = r.field;
  j["seed"] = r.seed;
  j["level_bound"] = r.level_bound;
  j["obstruction_log"] = json::array();
  for (const auto& e : r.obstruction_log)
    j["obstruction_log"].push_back({{"level", e.level},
                                    {"status", e.status},
                                    {"evidence", e.evidence},
                                    {"params_before", e.params_before},
                                    {"params_after", e.params_after}});
  return j;
}

}  // namespace qdr
