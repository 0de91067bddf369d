#pragma once

#include <string>
#include <vector>

#include "qdr/scalar.hpp"

namespace qdr {

struct spec_error : std::runtime_error {
  explicit spec_error(const std::string& what) : std::runtime_error(what) {}
};

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

// A path as a composable sequence of arrows. `word` is stored in application
// order: word[0] acts first. The printed form follows the composition
// convention "beta alpha" = first alpha, then beta, so the printed word is
// the reverse of `word`.
struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> word;  // arrow indices, first applied first

  std::size_t length() const { return word.size(); }
};

struct RelationTerm {
  std::string coeff;          // exact scalar literal
  std::vector<int> arrows;    // application order (reverse of the JSON array)
};

using Relation = std::vector<RelationTerm>;

struct QuiverSpec {
  Field field;
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  int max_len_hint = 0;  // 0 = none

  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& name) const;

  Path trivial_path(int vertex) const;
  Path arrow_path(int arrow) const;
};

// Validates and loads the JSON algebra format. Collects every violation
// before failing, so one pass reports all problems in the input.
QuiverSpec parse_algebra(const std::string& json_text);

// beta after alpha; throws spec_error unless target(alpha) = source(beta).
Path compose(const QuiverSpec& spec, const Path& beta, const Path& alpha);

std::string path_name(const QuiverSpec& spec, const Path& p);

}  // namespace qdr
