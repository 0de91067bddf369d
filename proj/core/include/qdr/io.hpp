#pragma once

#include <json.hpp>

#include "qdr/biserial.hpp"
#include "qdr/deform.hpp"

namespace qdr {

std::string slurp_file(const std::string& path);

// Module spec JSON: {"kind":"simple","vertex":"1"}, {"kind":"projective",
// "vertex":"0"}, {"kind":"string","word":["b"]} (inverse letters "a^-1",
// leftmost letter applied last), {"kind":"ideal","arrow":"a"},
// {"kind":"sum","parts":[...]}, {"kind":"explicit","dims":{...},
// "matrices":{...}} with exact scalar strings.
struct NamedModule {
  std::string name;
  Rep module;
};

NamedModule parse_module(const AlgebraPtr& a, const nlohmann::json& spec);

// identify lists: [{"name": "...", "module": {...}}, ...]
std::vector<NamedModule> parse_module_list(const AlgebraPtr& a, const nlohmann::json& list);

nlohmann::json gorenstein_to_json(const GorensteinData& g);
nlohmann::json biserial_to_json(const BiserialReport& r);
nlohmann::json ring_to_json(const RingClass& r);
nlohmann::json versal_to_json(const VersalReport& r);

}  // namespace qdr
