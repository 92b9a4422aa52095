#include <doctest.h>

#include <cmath>

#include "excad/cad_lang.hpp"
#include "excad/sequence_io.hpp"
#include "helpers.hpp"

using namespace excad;
using namespace testutil;

namespace {

// Scalar reference quantizer: round half up over the normalized position.
int reference_quantize(double value, double lo, double hi) {
  const double t = (value - lo) / (hi - lo) * 255.0;
  return static_cast<int>(std::floor(t + 0.5));
}

const ParamClass kAllClasses[] = {
    ParamClass::SketchCoord, ParamClass::ModelCoord,  ParamClass::Distance,
    ParamClass::Scale,       ParamClass::AngleTheta,  ParamClass::AnglePhiGamma,
    ParamClass::Sweep,
};

CadSequence two_circle_sequence() {
  CadSequence seq;
  seq.id = "two";
  seq.commands = {SolCmd{}, CircleCmd{128, 128, 60},
                  make_extrude(96, 96, 96, 128, 166),
                  SolCmd{},  CircleCmd{100, 100, 40},
                  make_extrude(120, 120, 140, 80, 150, BoolOp::Join), EosCmd{}};
  return seq;
}

} // namespace

TEST_CASE("quantize endpoints and midpoint") {
  CHECK(quantize(-1.0, ParamClass::ModelCoord) == 0);
  CHECK(quantize(1.0, ParamClass::ModelCoord) == 255);
  CHECK(quantize(0.0, ParamClass::SketchCoord) == 0);
  CHECK(quantize(1.0, ParamClass::SketchCoord) == 255);
  // 0.0 sits exactly between bins 127 and 128; round half up takes 128.
  CHECK(quantize(0.0, ParamClass::ModelCoord) == 128);
}

TEST_CASE("quantize matches the scalar reference on every bin boundary") {
  for (const ParamClass cls : kAllClasses) {
    const ParamRange r = param_range(cls);
    for (int q = 0; q <= 255; ++q) {
      const double center = r.lo + (q / 255.0) * (r.hi - r.lo);
      CHECK(reference_quantize(center, r.lo, r.hi) == q);
      CHECK(quantize(center, cls) == q);
    }
  }
}

TEST_CASE("dequantize endpoints") {
  CHECK(dequantize(0, ParamClass::ModelCoord) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(dequantize(255, ParamClass::SketchCoord) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("quantize-dequantize round trip over all bins of every class") {
  for (const ParamClass cls : kAllClasses) {
    for (int q = 0; q <= 255; ++q) {
      CHECK(quantize(dequantize(static_cast<quant_t>(q), cls), cls) == q);
    }
  }
}

TEST_CASE("dequantize-quantize moves values by at most half a bin") {
  Rng rng(17);
  for (const ParamClass cls : kAllClasses) {
    const ParamRange r = param_range(cls);
    const double half_bin = 0.5 * r.bin_width() + 1e-12;
    for (int i = 0; i < 2000; ++i) {
      const double v = rng.uniform(r.lo, r.hi);
      const double back = dequantize(quantize(v, cls), cls);
      CHECK(std::abs(back - v) <= half_bin);
    }
  }
}

TEST_CASE("quantize clamps one bin of overshoot, rejects more") {
  const ParamRange r = param_range(ParamClass::Scale);
  CHECK(quantize(1.0 + 0.9 * r.bin_width(), ParamClass::Scale) == 255);
  CHECK(quantize(0.0 - 0.9 * r.bin_width(), ParamClass::Scale) == 0);
  CHECK_THROWS_AS(quantize(1.0 + 2.0 * r.bin_width(), ParamClass::Scale), RangeError);
  CHECK_THROWS_AS(quantize(-0.5, ParamClass::Scale), RangeError);
}

TEST_CASE("quantize is monotone") {
  const ParamRange r = param_range(ParamClass::Distance);
  int prev = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double v = r.lo + (r.hi - r.lo) * i / 1000.0;
    const int q = quantize(v, ParamClass::Distance);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("minimal square sequence parses") {
  const CadSequence seq = cube_seq();
  const std::string text = serialize_sequence(seq);
  const CadSequence parsed = parse_sequence(text);
  CHECK(parsed.size() == 7);
  CHECK(parsed.extrusion_count() == 1);
  CHECK(parsed == seq);
}

TEST_CASE("two-extrusion circle sequence parses") {
  const CadSequence seq = two_circle_sequence();
  const CadSequence parsed = parse_sequence(serialize_sequence(seq));
  CHECK(parsed.extrusion_count() == 2);
  CHECK(classify(parsed) == ModelClass::Complex);
}

TEST_CASE("grammar violations are rejected") {
  SUBCASE("empty loop") {
    CadSequence seq;
    seq.commands = {SolCmd{}, make_extrude(96, 96, 96, 128, 166), EosCmd{}};
    CHECK_THROWS_AS(validate_grammar(seq), GrammarError);
  }
  SUBCASE("extrude without loop") {
    CadSequence seq;
    seq.commands = {make_extrude(96, 96, 96, 128, 166), EosCmd{}};
    CHECK_THROWS_AS(validate_grammar(seq), GrammarError);
  }
  SUBCASE("no EOS") {
    CadSequence seq = cube_seq();
    seq.commands.pop_back();
    CHECK_THROWS_AS(validate_grammar(seq), GrammarError);
  }
  SUBCASE("unclosed loop") {
    CadSequence seq;
    seq.commands = {SolCmd{}, LineCmd{200, 0}, LineCmd{200, 200},
                    make_extrude(96, 96, 96, 128, 166), EosCmd{}};
    CHECK_THROWS_AS(validate_grammar(seq), GrammarError);
  }
  SUBCASE("closure within one bin is accepted") {
    CadSequence seq;
    seq.commands = {SolCmd{}, LineCmd{200, 0}, LineCmd{200, 200}, LineCmd{1, 1},
                    make_extrude(96, 96, 96, 128, 166), EosCmd{}};
    CHECK(!grammar_violation(seq));
  }
  SUBCASE("circle mixed with lines") {
    CadSequence seq;
    seq.commands = {SolCmd{}, CircleCmd{128, 128, 40}, LineCmd{0, 0},
                    make_extrude(96, 96, 96, 128, 166), EosCmd{}};
    CHECK_THROWS_AS(validate_grammar(seq), GrammarError);
  }
  SUBCASE("no extrusion") {
    CadSequence seq;
    seq.commands = {SolCmd{}, CircleCmd{128, 128, 40}, EosCmd{}};
    CHECK_THROWS_AS(validate_grammar(seq), GrammarError);
  }
}

TEST_CASE("parse errors carry distinct types") {
  CHECK_THROWS_AS(parse_sequence("not json"), SyntaxError);
  CHECK_THROWS_AS(parse_sequence(R"({"id":"x"})"), SyntaxError);
  CHECK_THROWS_AS(parse_sequence(R"({"id":"x","commands":[{"t":"L","x":4}]})"), SyntaxError);
  CHECK_THROWS_AS(parse_sequence(R"({"id":"x","commands":[{"t":"L","x":999,"y":0}]})"),
                  RangeError);
  CHECK_THROWS_AS(
      parse_sequence(R"({"id":"x","commands":[{"t":"SOL"},{"t":"EOS"}]})"),
      GrammarError);
}

TEST_CASE("lenient parsing keeps grammar-broken records") {
  const std::string text = R"({"id":"x","commands":[{"t":"SOL"},{"t":"EOS"}]})";
  const CadSequence seq = parse_sequence(text, GrammarPolicy::Lenient);
  CHECK(seq.size() == 2);
  CHECK(grammar_violation(seq));
}

TEST_CASE("serialization refuses invalid sequences") {
  CadSequence empty;
  empty.id = "bad";
  CHECK_THROWS_AS(serialize_sequence(empty), SerializationError);
}

TEST_CASE("parse-serialize round trip on 10000 random sequences") {
  Rng rng(20260810);
  for (int i = 0; i < 10000; ++i) {
    const CadSequence seq = random_grammar_sequence(rng);
    REQUIRE(!grammar_violation(seq));
    const CadSequence back = parse_sequence(serialize_sequence(seq));
    REQUIRE(back == seq);
  }
}

TEST_CASE("split yields one single-extrusion block per extrude") {
  const CadSequence seq = two_circle_sequence();
  const std::vector<CadSequence> parts = split_extrusions(seq);
  REQUIRE(parts.size() == 2);
  for (const CadSequence& part : parts) {
    CHECK(part.extrusion_count() == 1);
    CHECK(kind_of(part.commands.back()) == CommandKind::Eos);
    CHECK(classify(part) == ModelClass::Simple);
    CHECK(!grammar_violation(part));
  }
  // Original boolean ops preserved.
  CHECK(std::get<ExtrudeCmd>(parts[1].commands[2]).op == BoolOp::Join);
  CHECK(concatenate(parts) == seq);
}

TEST_CASE("split of a simple model is the identity") {
  const CadSequence seq = cube_seq();
  const std::vector<CadSequence> parts = split_extrusions(seq);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0] == seq);
}

TEST_CASE("concatenate drops all but the final EOS") {
  CadSequence a;
  a.id = "m";
  a.commands = {SolCmd{}, CircleCmd{128, 128, 60}, make_extrude(96, 96, 96, 128, 166),
                EosCmd{}};
  CadSequence b = a;
  const CadSequence merged = concatenate({a, b});
  CHECK(merged.size() == 7);
  CHECK(merged.extrusion_count() == 2);
}

TEST_CASE("concatenate enforces the extrusion budget") {
  CadSequence prim;
  prim.id = "m";
  prim.commands = {SolCmd{}, CircleCmd{128, 128, 60}, make_extrude(96, 96, 96, 128, 166),
                   EosCmd{}};
  std::vector<CadSequence> eleven(11, prim);
  CHECK_THROWS_AS(concatenate(eleven), LimitError);
}

TEST_CASE("concatenate enforces the command budget") {
  CadSequence big;
  big.id = "m";
  for (int i = 0; i < 5; ++i) {
    append_square_loop(big.commands);
    append_square_loop(big.commands);
    big.commands.emplace_back(make_extrude(96, 96, 96, 128, 166, BoolOp::Join));
  }
  big.commands.emplace_back(EosCmd{});
  REQUIRE(big.size() == 56);
  REQUIRE(!grammar_violation(big));
  CHECK_THROWS_AS(concatenate({big, big}), LimitError);
}

TEST_CASE("split-concat round trip on 10000 random sequences") {
  Rng rng(42);
  for (int i = 0; i < 10000; ++i) {
    const CadSequence seq = random_grammar_sequence(rng);
    const std::vector<CadSequence> parts = split_extrusions(seq);
    CHECK(parts.size() == static_cast<std::size_t>(seq.extrusion_count()));
    for (const CadSequence& part : parts) {
      if (part.extrusion_count() != 1) {
        REQUIRE(part.extrusion_count() == 1);
      }
    }
    const CadSequence back = concatenate(parts);
    if (!(back == seq)) {
      REQUIRE(back == seq);
    }
  }
}

TEST_CASE("classify thresholds") {
  CHECK(classify(cube_seq()) == ModelClass::Simple);
  CHECK(classify(two_circle_sequence()) == ModelClass::Complex);
}

TEST_CASE("sequence over 60 commands is rejected at parse") {
  CadSequence big;
  big.id = "too_big";
  for (int i = 0; i < 11; ++i) {
    append_square_loop(big.commands);
    big.commands.emplace_back(make_extrude(96, 96, 96, 128, 166, BoolOp::Join));
  }
  big.commands.emplace_back(EosCmd{});
  CHECK(big.size() == 67);
  CHECK(grammar_violation(big));
}

TEST_CASE("param tables match the command payloads") {
  CHECK(param_count(CommandKind::Sol) == 0);
  CHECK(param_count(CommandKind::Line) == 2);
  CHECK(param_count(CommandKind::Arc) == 4);
  CHECK(param_count(CommandKind::Circle) == 3);
  CHECK(param_count(CommandKind::Extrude) == 11);
  CHECK(param_count(CommandKind::Eos) == 0);
  const Command e = make_extrude(1, 2, 3, 4, 5, BoolOp::Cut, ExtrudeType::TwoSided, 6, 7, 8, 9);
  const std::vector<int> params = params_of(e);
  REQUIRE(params.size() == 11);
  CHECK(params == std::vector<int>{7, 8, 9, 1, 2, 3, 4, 5, 6, 2, 2});
}
