#pragma once

#include <string>
#include <vector>

#include "excad/solid.hpp"

namespace excad {

enum class ValidityFlag {
  ZeroExtrusion,      ///< effective height below one quantization bin
  ZeroScale,          ///< sketch scale quantized to 0
  DegenerateProfile,  ///< even-odd interior area below 1e-6
  NonIntersectingCut, ///< cut extrusion that removes no existing material
  BuildError,         ///< profile or plane construction failed
  GrammarViolation,   ///< sequence violates the command grammar
};

const char* flag_name(ValidityFlag flag);

struct ExtrusionValidity {
  int index = 0;
  std::vector<ValidityFlag> flags;
};

struct ValidityReport {
  std::vector<ValidityFlag> sequence_flags; ///< grammar / build failures
  std::vector<ExtrusionValidity> extrusions; ///< one entry per flagged extrusion
  std::string detail;                        ///< human-readable context

  bool valid() const { return sequence_flags.empty() && extrusions.empty(); }
  std::string summary() const;
};

inline constexpr int kCutProbeBudget = 100000;

/// Geometric validity per extrusion: zero extrusion distance, zero sketch
/// scale, a degenerate zero-area profile, and cuts that do not intersect any
/// existing geometry. The cut check is a Monte-Carlo probe over the cut
/// prism's bounding box with a seed derived from the sequence id, so reports
/// are reproducible per sample.
ValidityReport validate_model(const CadSequence& seq, int cut_probes = kCutProbeBudget);

} // namespace excad
