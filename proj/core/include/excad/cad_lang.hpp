#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "excad/errors.hpp"

namespace excad {

// ---------------------------------------------------------------------------
// Command language
//
// A CAD model is an ordered list of sketch-and-extrude commands. All numeric
// parameters are quantized to 8 bits; the continuous ranges they map to are
// fixed per parameter class (see ParamClass below).
// ---------------------------------------------------------------------------

/// Quantized parameter value, always in [0, 255].
using quant_t = std::uint8_t;

enum class CommandKind : std::uint8_t { Sol, Line, Arc, Circle, Extrude, Eos };

enum class BoolOp : std::uint8_t { New = 0, Join = 1, Cut = 2, Intersect = 3 };
enum class ExtrudeType : std::uint8_t { OneSided = 0, Symmetric = 1, TwoSided = 2 };

struct SolCmd {
  friend bool operator==(const SolCmd&, const SolCmd&) = default;
};

struct LineCmd {
  quant_t x = 0; ///< line end point
  quant_t y = 0;
  friend bool operator==(const LineCmd&, const LineCmd&) = default;
};

struct ArcCmd {
  quant_t x = 0; ///< arc end point
  quant_t y = 0;
  quant_t sweep = 0; ///< sweep angle
  quant_t ccw = 0;   ///< counterclockwise flag, 0 or 1
  friend bool operator==(const ArcCmd&, const ArcCmd&) = default;
};

struct CircleCmd {
  quant_t x = 0; ///< center
  quant_t y = 0;
  quant_t r = 0; ///< radius
  friend bool operator==(const CircleCmd&, const CircleCmd&) = default;
};

struct ExtrudeCmd {
  quant_t theta = 0; ///< sketch plane orientation (spherical angles + roll)
  quant_t phi = 0;
  quant_t gamma = 0;
  quant_t px = 0; ///< sketch plane origin
  quant_t py = 0;
  quant_t pz = 0;
  quant_t scale = 0; ///< sketch scale
  quant_t e1 = 0;    ///< extrusion distances
  quant_t e2 = 0;
  BoolOp op = BoolOp::New;
  ExtrudeType type = ExtrudeType::OneSided;
  friend bool operator==(const ExtrudeCmd&, const ExtrudeCmd&) = default;
};

struct EosCmd {
  friend bool operator==(const EosCmd&, const EosCmd&) = default;
};

using Command = std::variant<SolCmd, LineCmd, ArcCmd, CircleCmd, ExtrudeCmd, EosCmd>;

CommandKind kind_of(const Command& cmd);
const char* kind_name(CommandKind kind);

/// Number of parameters carried by each command kind (L:2, A:4, R:3, E:11).
int param_count(CommandKind kind);

/// Parameters of a command in canonical order, as quantized integers.
/// Extrude order: theta, phi, gamma, px, py, pz, s, e1, e2, b, u.
std::vector<int> params_of(const Command& cmd);

// ---------------------------------------------------------------------------
// Quantization
// ---------------------------------------------------------------------------

/// Continuous range a quantized parameter maps to.
enum class ParamClass {
  SketchCoord,   ///< [0, 1]    sketch-plane coordinates and radii
  ModelCoord,    ///< [-1, 1]   plane origin components
  Distance,      ///< [-1, 1]   extrusion distances
  Scale,         ///< [0, 1]    sketch scale
  AngleTheta,    ///< [0, pi]   plane inclination
  AnglePhiGamma, ///< [-pi, pi] plane azimuth and roll
  Sweep,         ///< [0, 2pi]  arc sweep angle
};

struct ParamRange {
  double lo;
  double hi;
  double bin_width() const { return (hi - lo) / 255.0; }
};

ParamRange param_range(ParamClass cls);

/// Quantize a continuous value to its 8-bit bin (round half up). Values
/// outside the class range by at most one bin width are clamped; farther
/// values raise RangeError.
quant_t quantize(double value, ParamClass cls);

/// Bin-center continuous value of a quantized parameter.
double dequantize(quant_t q, ParamClass cls);

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

inline constexpr int kMaxCommands = 60;
inline constexpr int kMaxExtrusions = 10;
/// Quantized Chebyshev tolerance for a loop returning to its start.
inline constexpr int kLoopClosureTol = 1;

struct CadSequence {
  std::string id;
  std::vector<Command> commands;

  std::size_t size() const { return commands.size(); }
  int extrusion_count() const;
  friend bool operator==(const CadSequence&, const CadSequence&) = default;
};

enum class ModelClass { Simple, Complex };

/// Checks the sequence grammar: one or more (SOL curve+)+ Extrude blocks,
/// a single terminating EOS, loops that return the pen to the origin, a
/// circle alone in its loop, and the command/extrusion budgets.
/// Returns an explanation for the first violation, or nullopt if valid.
std::optional<std::string> grammar_violation(const CadSequence& seq);

/// Throws GrammarError unless the sequence is grammar-valid.
void validate_grammar(const CadSequence& seq);

/// Splits a sequence into its per-extrusion blocks. Each output holds the
/// loops and Extrude of one block, terminated by EOS, and keeps the parent
/// id and the original boolean op.
std::vector<CadSequence> split_extrusions(const CadSequence& seq);

/// Inverse of split_extrusions: strips the EOS of all but the last input
/// and joins the command lists. Throws LimitError if the merged sequence
/// exceeds the command or extrusion budget.
CadSequence concatenate(const std::vector<CadSequence>& seqs);

ModelClass classify(const CadSequence& seq);

} // namespace excad
