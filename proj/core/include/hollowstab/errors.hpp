#pragma once

#include <stdexcept>
#include <string>

namespace hollowstab {

/// Input file or stream could not be parsed (bad header, non-numeric or
/// non-finite entries, truncated data).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// The computation could not be completed to the documented accuracy
/// (e.g. a root guaranteed by theory was not found numerically, or a
/// gain search exhausted its budget).
class BreakdownError : public std::runtime_error {
 public:
  explicit BreakdownError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace hollowstab
