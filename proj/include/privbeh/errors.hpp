#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace privbeh {

/// Base class of everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ill-formed or inconsistent model: undeclared names, duplicate
/// declarations, dangling edge endpoints, conflicting records.
struct ModelError : Error {
  using Error::Error;
};

/// A variable assignment left its declared [min, max] range.
struct BoundsError : ModelError {
  BoundsError(const std::string& variable, int value, int min, int max,
              const std::string& context = "")
      : ModelError("value " + std::to_string(value) + " for variable '" +
                   variable + "' outside declared range [" +
                   std::to_string(min) + ", " + std::to_string(max) + "]" +
                   (context.empty() ? "" : " (" + context + ")")),
        variable(variable), value(value), min(min), max(max) {}

  std::string variable;
  int value;
  int min;
  int max;
};

/// Syntax error from the query or expression parser. `position` is a
/// 0-based character offset into the input text.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t position)
      : Error("syntax error at offset " + std::to_string(position) + ": " + msg),
        position(position) {}

  std::size_t position;
};

/// A query atom that does not resolve against the given network.
struct BindError : Error {
  using Error::Error;
};

/// Record-file or model-file problem (bad token, schema mismatch, ...).
struct IoError : Error {
  using Error::Error;
};

/// Pipeline input violating a synthesis precondition (e.g. an accepted
/// word whose length is not three symbols).
struct SynthesisError : Error {
  using Error::Error;
};

}  // namespace privbeh
