#pragma once

#include "qdr/algebra.hpp"
#include "qdr/rep.hpp"

namespace qdr {

struct not_gentle : std::runtime_error {
  explicit not_gentle(const std::string& what) : std::runtime_error(what) {}
};

// Whether "beta alpha not in rho" is read as ideal membership of the
// composition or literal membership in the relation set. The two agree on
// monomial length-two relation sets; ideal membership is the default.
enum class MembershipMode { ideal, literal };

struct Violation {
  std::string condition;  // one of i, i', ii, ii', iii, iv, iv'
  std::string witness;    // concrete vertices / arrows
};

struct BiserialReport {
  bool special_biserial = false;
  bool gentle = false;
  std::vector<Violation> violations;
};

BiserialReport check_special_biserial(const Algebra& a,
                                      MembershipMode mode = MembershipMode::ideal);
BiserialReport check_gentle(const Algebra& a, MembershipMode mode = MembershipMode::ideal);

// Rotation classes of repetition-free cyclic arrow sequences with every
// consecutive composition (cyclically) inside the relation ideal. Cycles
// are stored in printed order (leftmost arrow applied last) and canonically
// rotated to the lexicographically smallest arrow-name sequence.
struct CriticalCycles {
  std::vector<std::vector<int>> cycles;
};

CriticalCycles critical_cycles(const Algebra& a, MembershipMode mode = MembershipMode::ideal);

struct GProjEntry {
  std::string label;     // "P_v" or "R(alpha)"
  Rep module;
  std::string iso_name;  // string identification, empty when none found
  bool projective = false;
};

// All indecomposable finitely generated Gorenstein-projective modules over
// a gentle algebra: the indecomposable projectives plus the arrow ideals
// R(alpha) for arrows on critical cycles, with string identifications.
std::vector<GProjEntry> classify_gproj_gentle(const AlgebraPtr& a, std::uint64_t seed,
                                              MembershipMode mode = MembershipMode::ideal);

}  // namespace qdr
