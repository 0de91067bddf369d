#pragma once

#include "qdr/homalg.hpp"

namespace qdr {

struct base_mismatch : std::runtime_error {
  explicit base_mismatch(const std::string& what) : std::runtime_error(what) {}
};

// A lift of `target` over k[t]/(t^level): free vertex components of constant
// rank, arrow matrices with truncated polynomial entries, and the
// identification of the mod-t reduction with the target.
struct Lift {
  Rep target;
  int level = 2;                          // base = k[t]/(t^level), level >= 1
  std::vector<std::vector<Mat>> coeffs;   // [arrow][t-power], powers 0..level-1
  std::vector<Mat> reduction_iso;         // phi_v: reduction -> target

  Field field() const { return target.field(); }
};

Lift trivial_lift(const Rep& m, int level);

// Every violated condition: matrix shapes, invertibility and intertwining
// of phi, and each relation coefficient that fails to vanish over the base.
std::vector<std::string> check_lift(const Lift& l);

struct FirstOrderSpace {
  std::vector<std::vector<Mat>> cocycles;       // basis of the linearized relation kernel
  std::vector<std::vector<Mat>> coboundaries;   // basis of the gauge directions
  std::vector<std::vector<Mat>> complement;     // cocycle representatives of Ext^1
  int ext1_dim = 0;
};

// Deformations over the dual numbers: cocycles are the t-linear parts of the
// relations at action + t delta, coboundaries the infinitesimal conjugations
// h.rho - rho.h. The Ext^1 dimension always agrees with the syzygy
// presentation; versal_report asserts that identity.
FirstOrderSpace first_order_space(const Rep& m);

struct ExtendOutcome {
  bool extended = false;
  std::optional<Lift> extension;            // particular solution, one level up
  std::vector<std::vector<Mat>> kernel;     // cocycle freedom at the new level
  // certificate when obstructed: the level-n obstruction vector lies outside
  // the image of the linearized operator
  std::vector<Scalar> obstruction;
  int image_rank = 0;
  int augmented_rank = 0;
};

// One small-extension step k[t]/(t^n) -> k[t]/(t^(n+1)) for a concrete lift.
ExtendOutcome extend_lift(const Lift& l);

// The level-n obstruction of a lift (zero-padded), as stacked relation
// coefficients of t^n; used by the re-padding invariance checks.
std::vector<Scalar> lift_obstruction(const Lift& l);

// Isomorphism of lifts over the same base. respect_reduction = true tests
// deformation equality (the reduction must match the phis, decided exactly
// by an affine solve); false tests weak equality (certified "no" by
// Hom/End dimension obstructions, "yes" by seeded sampling).
IsoResult lifts_isomorphic(const Lift& l1, const Lift& l2, bool respect_reduction,
                           std::uint64_t seed);

// Lifts an intertwiner v0: target(lm) -> target(lq) through the bases,
// where the reduction of lm is Gorenstein-projective and lq lifts a
// projective. Existence is guaranteed; a failed solve is a logic error.
std::vector<std::vector<Mat>> lift_hom(const std::vector<Mat>& v0, const Lift& lm,
                                       const Lift& lq);

struct RingClass {
  enum class Kind { trivial, truncated, bounded, multivariable } kind = Kind::trivial;
  int n = 0;            // truncated: k[[t]]/(t^n); bounded: verified level
  int tangent_dim = 0;  // multivariable
};

struct ObstructionLogEntry {
  int level = 0;          // target level of the extension attempt
  std::string status;     // extended | restricted | obstructed | undetermined
  std::string evidence;
  int params_before = 0;
  int params_after = 0;
};

struct VersalReport {
  std::string module_label;
  TriResult gp;
  int end_dim = 0;
  int stable_end_dim = 0;
  int ext1_dim = 0;
  RingClass ring;
  bool universal = false;
  std::string justification;  // projective | end-trivial | gp-stable-end-trivial | none
  std::string field;
  std::uint64_t seed = 0;
  int level_bound = 0;
  std::vector<ObstructionLogEntry> obstruction_log;
};

// Full report: tangent dimension, level-by-level obstruction calculus with
// symbolically tracked kernel parameters (normalized first-order parameter),
// ring classification and the universality flag.
VersalReport versal_report(const Rep& m, int level_bound, std::uint64_t seed,
                           const std::string& label = "module");

struct SyzygyCompare {
  VersalReport base;
  VersalReport syz;
  bool rings_match = false;
};

SyzygyCompare syzygy_compare(const Rep& m, int level_bound, std::uint64_t seed,
                             const std::string& label = "module");

bool ring_equal(const RingClass& a, const RingClass& b);
std::string ring_to_string(const RingClass& r);

}  // namespace qdr
