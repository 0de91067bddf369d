#include "qdr/quiver.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace qdr {

using nlohmann::json;

int QuiverSpec::vertex_index(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  return -1;
}

int QuiverSpec::arrow_index(const std::string& name) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  return -1;
}

Path QuiverSpec::trivial_path(int vertex) const { return Path{vertex, vertex, {}}; }

Path QuiverSpec::arrow_path(int arrow) const {
  const Arrow& a = arrows.at(arrow);
  return Path{a.source, a.target, {arrow}};
}

QuiverSpec parse_algebra(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw spec_error(std::string("invalid JSON: ") + e.what());
  }

  QuiverSpec spec;
  std::vector<std::string> problems;

  try {
    if (j.contains("field")) {
      if (j["field"].is_string())
        spec.field = parse_field(j["field"].get<std::string>());
      else if (j["field"].is_object() && j["field"].contains("Fp"))
        spec.field = Field::prime(j["field"]["Fp"].get<std::uint32_t>());
      else
        problems.push_back("field must be \"Q\" or {\"Fp\": p}");
    }
  } catch (const std::exception& e) {
    problems.push_back(std::string("field: ") + e.what());
  }

  for (const auto& v : j.value("vertices", json::array())) {
    std::string name = v.get<std::string>();
    if (spec.vertex_index(name) >= 0)
      problems.push_back("duplicate vertex \"" + name + "\"");
    else
      spec.vertices.push_back(name);
  }
  if (spec.vertices.empty()) problems.push_back("no vertices declared");

  for (const auto& a : j.value("arrows", json::array())) {
    Arrow arr;
    arr.name = a.value("name", "");
    if (arr.name.empty()) problems.push_back("arrow without a name");
    if (spec.arrow_index(arr.name) >= 0)
      problems.push_back("duplicate arrow \"" + arr.name + "\"");
    arr.source = spec.vertex_index(a.value("from", ""));
    arr.target = spec.vertex_index(a.value("to", ""));
    if (arr.source < 0)
      problems.push_back("arrow \"" + arr.name + "\": undeclared source vertex \"" +
                         a.value("from", "") + "\"");
    if (arr.target < 0)
      problems.push_back("arrow \"" + arr.name + "\": undeclared target vertex \"" +
                         a.value("to", "") + "\"");
    spec.arrows.push_back(arr);
  }

  int rel_no = 0;
  for (const auto& r : j.value("relations", json::array())) {
    ++rel_no;
    Relation rel;
    int rel_source = -1, rel_target = -1;
    for (const auto& term : r) {
      RelationTerm t;
      t.coeff = term.value("coeff", "1");
      try {
        Scalar::parse(spec.field, t.coeff);
      } catch (const std::exception&) {
        problems.push_back("relation " + std::to_string(rel_no) + ": bad coefficient \"" +
                           t.coeff + "\"");
      }
      std::vector<std::string> names = term.value("path", std::vector<std::string>{});
      // JSON paths are written leftmost-last-applied; store in application order.
      std::reverse(names.begin(), names.end());
      bool ok = true;
      for (const auto& an : names) {
        int ai = spec.arrow_index(an);
        if (ai < 0) {
          problems.push_back("relation " + std::to_string(rel_no) + ": unknown arrow \"" + an +
                             "\"");
          ok = false;
          break;
        }
        t.arrows.push_back(ai);
      }
      if (!ok) continue;
      if (t.arrows.size() < 2) {
        problems.push_back("relation " + std::to_string(rel_no) +
                           ": term of length < 2 (relations are combinations of paths of length"
                           " at least two)");
        continue;
      }
      bool composable = true;
      for (std::size_t i = 0; i + 1 < t.arrows.size(); ++i)
        if (spec.arrows[t.arrows[i]].target != spec.arrows[t.arrows[i + 1]].source) {
          problems.push_back("relation " + std::to_string(rel_no) + ": path not composable at \"" +
                             spec.arrows[t.arrows[i]].name + "\" -> \"" +
                             spec.arrows[t.arrows[i + 1]].name + "\"");
          composable = false;
          break;
        }
      if (!composable) continue;
      int s = spec.arrows[t.arrows.front()].source;
      int e = spec.arrows[t.arrows.back()].target;
      if (rel_source < 0) {
        rel_source = s;
        rel_target = e;
      } else if (rel_source != s || rel_target != e) {
        problems.push_back("relation " + std::to_string(rel_no) +
                           ": terms do not share source and target");
      }
      rel.push_back(std::move(t));
    }
    if (!rel.empty()) spec.relations.push_back(std::move(rel));
  }

  spec.max_len_hint = j.value("max_len_hint", 0);

  if (!problems.empty()) {
    std::ostringstream os;
    os << "algebra spec has " << problems.size() << " problem(s):";
    for (const auto& p : problems) os << "\n  - " << p;
    throw spec_error(os.str());
  }
  return spec;
}

Path compose(const QuiverSpec& spec, const Path& beta, const Path& alpha) {
  if (alpha.target != beta.source)
    throw spec_error("paths not composable: target(" + path_name(spec, alpha) + ") = " +
                     spec.vertices[alpha.target] + " but source(" + path_name(spec, beta) +
                     ") = " + spec.vertices[beta.source]);
  Path p;
  p.source = alpha.source;
  p.target = beta.target;
  p.word = alpha.word;
  p.word.insert(p.word.end(), beta.word.begin(), beta.word.end());
  return p;
}

std::string path_name(const QuiverSpec& spec, const Path& p) {
  if (p.word.empty()) return "e_" + spec.vertices[p.source];
  std::string s;
  for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) {
    if (!s.empty()) s += ".";
    s += spec.arrows[*it].name;
  }
  return s;
}

}  // namespace qdr
