#include "excad/sequence_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace excad {

namespace {

using ordered_json = nlohmann::ordered_json;

quant_t get_quant(const nlohmann::json& rec, const char* key) {
  if (!rec.contains(key)) {
    throw SyntaxError(std::string("missing field '") + key + "' in command record");
  }
  const auto& v = rec.at(key);
  if (!v.is_number_integer()) {
    throw SyntaxError(std::string("field '") + key + "' must be an integer");
  }
  const auto i = v.get<std::int64_t>();
  if (i < 0 || i > 255) {
    throw RangeError(std::string("field '") + key + "' = " + std::to_string(i) +
                     " outside [0, 255]");
  }
  return static_cast<quant_t>(i);
}

Command parse_command(const nlohmann::json& rec) {
  if (!rec.is_object() || !rec.contains("t") || !rec.at("t").is_string()) {
    throw SyntaxError("command record must be an object with a string field 't'");
  }
  const std::string t = rec.at("t").get<std::string>();
  if (t == "SOL") return SolCmd{};
  if (t == "EOS") return EosCmd{};
  if (t == "L") return LineCmd{get_quant(rec, "x"), get_quant(rec, "y")};
  if (t == "A") {
    ArcCmd a{get_quant(rec, "x"), get_quant(rec, "y"), get_quant(rec, "a"),
             get_quant(rec, "f")};
    if (a.ccw > 1) throw RangeError("field 'f' must be 0 or 1");
    return a;
  }
  if (t == "R") return CircleCmd{get_quant(rec, "x"), get_quant(rec, "y"), get_quant(rec, "r")};
  if (t == "E") {
    ExtrudeCmd e;
    e.theta = get_quant(rec, "theta");
    e.phi = get_quant(rec, "phi");
    e.gamma = get_quant(rec, "gamma");
    e.px = get_quant(rec, "px");
    e.py = get_quant(rec, "py");
    e.pz = get_quant(rec, "pz");
    e.scale = get_quant(rec, "s");
    e.e1 = get_quant(rec, "e1");
    e.e2 = get_quant(rec, "e2");
    const quant_t b = get_quant(rec, "b");
    if (b > 3) throw RangeError("field 'b' must be in [0, 3]");
    const quant_t u = get_quant(rec, "u");
    if (u > 2) throw RangeError("field 'u' must be in [0, 2]");
    e.op = static_cast<BoolOp>(b);
    e.type = static_cast<ExtrudeType>(u);
    return e;
  }
  throw SyntaxError("unknown command type '" + t + "'");
}

ordered_json command_to_json(const Command& cmd) {
  struct Visitor {
    ordered_json operator()(const SolCmd&) const { return {{"t", "SOL"}}; }
    ordered_json operator()(const EosCmd&) const { return {{"t", "EOS"}}; }
    ordered_json operator()(const LineCmd& c) const {
      return {{"t", "L"}, {"x", c.x}, {"y", c.y}};
    }
    ordered_json operator()(const ArcCmd& c) const {
      return {{"t", "A"}, {"x", c.x}, {"y", c.y}, {"a", c.sweep}, {"f", c.ccw}};
    }
    ordered_json operator()(const CircleCmd& c) const {
      return {{"t", "R"}, {"x", c.x}, {"y", c.y}, {"r", c.r}};
    }
    ordered_json operator()(const ExtrudeCmd& c) const {
      return {{"t", "E"},      {"theta", c.theta}, {"phi", c.phi},
              {"gamma", c.gamma}, {"px", c.px},    {"py", c.py},
              {"pz", c.pz},    {"s", c.scale},     {"e1", c.e1},
              {"e2", c.e2},    {"b", static_cast<int>(c.op)},
              {"u", static_cast<int>(c.type)}};
    }
  };
  return std::visit(Visitor{}, cmd);
}

} // namespace

CadSequence parse_sequence(const std::string& text, GrammarPolicy policy) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SyntaxError("top level must be an object");
  CadSequence seq;
  if (doc.contains("id")) {
    if (!doc.at("id").is_string()) throw SyntaxError("'id' must be a string");
    seq.id = doc.at("id").get<std::string>();
  }
  if (!doc.contains("commands") || !doc.at("commands").is_array()) {
    throw SyntaxError("missing 'commands' array");
  }
  for (const auto& rec : doc.at("commands")) {
    seq.commands.push_back(parse_command(rec));
  }
  if (policy == GrammarPolicy::Strict) validate_grammar(seq);
  return seq;
}

std::string serialize_sequence(const CadSequence& seq) {
  if (auto err = grammar_violation(seq)) {
    throw SerializationError("refusing to serialize invalid sequence: " + *err);
  }
  ordered_json doc;
  doc["id"] = seq.id;
  ordered_json cmds = ordered_json::array();
  for (const Command& c : seq.commands) cmds.push_back(command_to_json(c));
  doc["commands"] = std::move(cmds);
  return doc.dump(2) + "\n";
}

CadSequence read_sequence_file(const std::filesystem::path& path, GrammarPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  CadSequence seq = parse_sequence(buf.str(), policy);
  if (seq.id.empty()) seq.id = path.stem().string();
  return seq;
}

void write_sequence_file(const std::filesystem::path& path, const CadSequence& seq) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << serialize_sequence(seq);
}

} // namespace excad
