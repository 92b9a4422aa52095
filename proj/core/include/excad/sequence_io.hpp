#pragma once

#include <filesystem>
#include <string>

#include "excad/cad_lang.hpp"

namespace excad {

enum class GrammarPolicy {
  Strict,  ///< reject grammar violations (the documented contract)
  Lenient, ///< keep structurally valid records even if the grammar is broken;
           ///< used when scoring model predictions, which may be malformed
};

/// Parses the native JSON sequence format. Throws SyntaxError for malformed
/// text or records, RangeError for parameters outside [0, 255], and (under
/// Strict) GrammarError for grammar violations.
CadSequence parse_sequence(const std::string& text,
                           GrammarPolicy policy = GrammarPolicy::Strict);

/// Deterministic canonical serialization; parse_sequence round-trips it.
/// Throws SerializationError if the sequence violates the grammar.
std::string serialize_sequence(const CadSequence& seq);

CadSequence read_sequence_file(const std::filesystem::path& path,
                               GrammarPolicy policy = GrammarPolicy::Strict);
void write_sequence_file(const std::filesystem::path& path, const CadSequence& seq);

} // namespace excad
