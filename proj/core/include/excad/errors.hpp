#pragma once

#include <stdexcept>
#include <string>

namespace excad {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (bad JSON, wrong record structure).
class SyntaxError : public Error {
public:
  using Error::Error;
};

/// Structurally well-formed sequence that violates the command grammar.
class GrammarError : public Error {
public:
  using Error::Error;
};

/// Parameter value outside its admissible range.
class RangeError : public Error {
public:
  using Error::Error;
};

/// Refused to serialize an object that violates its own invariants.
class SerializationError : public Error {
public:
  using Error::Error;
};

/// Merged sequence would exceed the command or extrusion budget.
class LimitError : public Error {
public:
  using Error::Error;
};

/// Arc segment whose center/radius cannot be solved from its parameters.
class DegenerateArc : public Error {
public:
  using Error::Error;
};

/// Loop whose final pen position does not return to the loop start.
class OpenLoop : public Error {
public:
  using Error::Error;
};

/// Surface sampling stalled: the final solid exposes no surface.
class EmptySurface : public Error {
public:
  using Error::Error;
};

/// Operation received an empty point cloud where one is required.
class EmptyInput : public Error {
public:
  using Error::Error;
};

/// Random-sequence generator exhausted its resampling budget.
class GenerationError : public Error {
public:
  using Error::Error;
};

/// File or directory could not be read or written.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace excad
