#include "excad/cad_lang.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace excad {

CommandKind kind_of(const Command& cmd) {
  return static_cast<CommandKind>(cmd.index());
}

const char* kind_name(CommandKind kind) {
  switch (kind) {
    case CommandKind::Sol: return "SOL";
    case CommandKind::Line: return "L";
    case CommandKind::Arc: return "A";
    case CommandKind::Circle: return "R";
    case CommandKind::Extrude: return "E";
    case CommandKind::Eos: return "EOS";
  }
  return "?";
}

int param_count(CommandKind kind) {
  switch (kind) {
    case CommandKind::Sol: return 0;
    case CommandKind::Line: return 2;
    case CommandKind::Arc: return 4;
    case CommandKind::Circle: return 3;
    case CommandKind::Extrude: return 11;
    case CommandKind::Eos: return 0;
  }
  return 0;
}

std::vector<int> params_of(const Command& cmd) {
  struct Visitor {
    std::vector<int> operator()(const SolCmd&) const { return {}; }
    std::vector<int> operator()(const EosCmd&) const { return {}; }
    std::vector<int> operator()(const LineCmd& c) const { return {c.x, c.y}; }
    std::vector<int> operator()(const ArcCmd& c) const { return {c.x, c.y, c.sweep, c.ccw}; }
    std::vector<int> operator()(const CircleCmd& c) const { return {c.x, c.y, c.r}; }
    std::vector<int> operator()(const ExtrudeCmd& c) const {
      return {c.theta, c.phi, c.gamma, c.px, c.py, c.pz, c.scale, c.e1, c.e2,
              static_cast<int>(c.op), static_cast<int>(c.type)};
    }
  };
  return std::visit(Visitor{}, cmd);
}

ParamRange param_range(ParamClass cls) {
  constexpr double pi = std::numbers::pi;
  switch (cls) {
    case ParamClass::SketchCoord: return {0.0, 1.0};
    case ParamClass::ModelCoord: return {-1.0, 1.0};
    case ParamClass::Distance: return {-1.0, 1.0};
    case ParamClass::Scale: return {0.0, 1.0};
    case ParamClass::AngleTheta: return {0.0, pi};
    case ParamClass::AnglePhiGamma: return {-pi, pi};
    case ParamClass::Sweep: return {0.0, 2.0 * pi};
  }
  return {0.0, 1.0};
}

quant_t quantize(double value, ParamClass cls) {
  const ParamRange r = param_range(cls);
  const double w = r.bin_width();
  // Tolerate up to one bin of overshoot (clamped); reject anything farther.
  const double slack = w * (1.0 + 1e-9);
  if (value < r.lo) {
    if (r.lo - value > slack) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "value %g below range [%g, %g]", value, r.lo, r.hi);
      throw RangeError(buf);
    }
    value = r.lo;
  } else if (value > r.hi) {
    if (value - r.hi > slack) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "value %g above range [%g, %g]", value, r.lo, r.hi);
      throw RangeError(buf);
    }
    value = r.hi;
  }
  const double t = (value - r.lo) / (r.hi - r.lo) * 255.0;
  const double rounded = std::floor(t + 0.5); // round half up
  return static_cast<quant_t>(rounded < 0.0 ? 0.0 : (rounded > 255.0 ? 255.0 : rounded));
}

double dequantize(quant_t q, ParamClass cls) {
  const ParamRange r = param_range(cls);
  return r.lo + (static_cast<double>(q) / 255.0) * (r.hi - r.lo);
}

int CadSequence::extrusion_count() const {
  int n = 0;
  for (const Command& c : commands) {
    if (kind_of(c) == CommandKind::Extrude) ++n;
  }
  return n;
}

namespace {

// Pen tracking in quantized integer space. A loop starts at (0,0); lines and
// arcs move the pen to their end point; the final curve must come back to
// (0,0) within kLoopClosureTol (Chebyshev).
struct PenState {
  int x = 0;
  int y = 0;
  bool closed() const {
    return std::abs(x) <= kLoopClosureTol && std::abs(y) <= kLoopClosureTol;
  }
};

} // namespace

std::optional<std::string> grammar_violation(const CadSequence& seq) {
  const auto& cmds = seq.commands;
  if (cmds.empty()) return "empty sequence";
  if (cmds.size() > static_cast<std::size_t>(kMaxCommands)) {
    return "sequence exceeds " + std::to_string(kMaxCommands) + " commands";
  }

  enum class State { ExpectSol, InLoop, AfterLoop };
  State state = State::ExpectSol;
  PenState pen;
  bool loop_has_circle = false;
  int curves_in_loop = 0;
  int extrusions = 0;
  bool loop_seen_since_extrude = false;

  auto close_loop = [&]() -> std::optional<std::string> {
    if (curves_in_loop == 0) return "empty loop";
    if (loop_has_circle && curves_in_loop != 1) return "circle must be the only curve in its loop";
    if (!loop_has_circle && !pen.closed()) return "loop does not return to its start";
    return std::nullopt;
  };

  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const Command& c = cmds[i];
    const CommandKind kind = kind_of(c);
    const bool is_last = (i + 1 == cmds.size());

    if (kind == CommandKind::Eos) {
      if (!is_last) return "EOS before end of sequence";
      if (state == State::ExpectSol && extrusions == 0) return "sequence has no extrusion";
      if (state != State::ExpectSol) return "sequence ends inside a sketch block";
      continue;
    }
    if (is_last) return "sequence does not end with EOS";

    switch (state) {
      case State::ExpectSol:
        if (kind != CommandKind::Sol) {
          return std::string("expected SOL, found ") + kind_name(kind);
        }
        state = State::InLoop;
        pen = PenState{};
        loop_has_circle = false;
        curves_in_loop = 0;
        break;

      case State::InLoop:
      case State::AfterLoop:
        switch (kind) {
          case CommandKind::Line: {
            if (state == State::AfterLoop) return "curve outside a loop";
            if (loop_has_circle) return "circle must be the only curve in its loop";
            const auto& l = std::get<LineCmd>(c);
            pen.x = l.x;
            pen.y = l.y;
            ++curves_in_loop;
            break;
          }
          case CommandKind::Arc: {
            if (state == State::AfterLoop) return "curve outside a loop";
            if (loop_has_circle) return "circle must be the only curve in its loop";
            const auto& a = std::get<ArcCmd>(c);
            if (a.ccw > 1) return "arc flag must be 0 or 1";
            pen.x = a.x;
            pen.y = a.y;
            ++curves_in_loop;
            break;
          }
          case CommandKind::Circle: {
            if (state == State::AfterLoop) return "curve outside a loop";
            if (curves_in_loop > 0) return "circle must be the only curve in its loop";
            loop_has_circle = true;
            ++curves_in_loop;
            break;
          }
          case CommandKind::Sol: {
            if (auto err = close_loop()) return err;
            loop_seen_since_extrude = true;
            state = State::InLoop;
            pen = PenState{};
            loop_has_circle = false;
            curves_in_loop = 0;
            break;
          }
          case CommandKind::Extrude: {
            if (state == State::InLoop) {
              if (auto err = close_loop()) return err;
              loop_seen_since_extrude = true;
            }
            if (!loop_seen_since_extrude) return "extrusion without a preceding loop";
            ++extrusions;
            if (extrusions > kMaxExtrusions) {
              return "sequence exceeds " + std::to_string(kMaxExtrusions) + " extrusions";
            }
            state = State::ExpectSol;
            loop_seen_since_extrude = false;
            break;
          }
          default:
            return std::string("unexpected ") + kind_name(kind);
        }
        break;
    }
  }
  if (kind_of(cmds.back()) != CommandKind::Eos) return "sequence does not end with EOS";
  return std::nullopt;
}

void validate_grammar(const CadSequence& seq) {
  if (auto err = grammar_violation(seq)) throw GrammarError(*err);
}

std::vector<CadSequence> split_extrusions(const CadSequence& seq) {
  std::vector<CadSequence> out;
  std::vector<Command> block;
  for (const Command& c : seq.commands) {
    const CommandKind kind = kind_of(c);
    if (kind == CommandKind::Eos) break;
    block.push_back(c);
    if (kind == CommandKind::Extrude) {
      block.emplace_back(EosCmd{});
      out.push_back(CadSequence{seq.id, std::move(block)});
      block.clear();
    }
  }
  return out;
}

CadSequence concatenate(const std::vector<CadSequence>& seqs) {
  if (seqs.empty()) throw LimitError("nothing to concatenate");
  CadSequence out;
  out.id = seqs.front().id;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const auto& cmds = seqs[i].commands;
    const bool last = (i + 1 == seqs.size());
    std::size_t take = cmds.size();
    if (!last && take > 0 && kind_of(cmds.back()) == CommandKind::Eos) --take;
    out.commands.insert(out.commands.end(), cmds.begin(), cmds.begin() + take);
  }
  if (out.commands.size() > static_cast<std::size_t>(kMaxCommands)) {
    throw LimitError("merged sequence exceeds " + std::to_string(kMaxCommands) + " commands");
  }
  if (out.extrusion_count() > kMaxExtrusions) {
    throw LimitError("merged sequence exceeds " + std::to_string(kMaxExtrusions) + " extrusions");
  }
  return out;
}

ModelClass classify(const CadSequence& seq) {
  return seq.extrusion_count() > 1 ? ModelClass::Complex : ModelClass::Simple;
}

} // namespace excad
