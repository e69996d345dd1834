#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdisp {

/// Failure categories raised by the numerical core.
enum class ErrorKind {
  InvalidArgument,
  DegenerateInput,
  OffShell,
  SingularMatrix,
  GridTooCoarse,
  NotNormalized,
  AliasRisk,
  TooFewSamples,
  NormalizationFailure,
  DegenerateState,
};

std::string_view to_string(ErrorKind kind);

/// A precondition or numerical failure inside the library. The CLI maps
/// InvalidArgument to a configuration error and everything else to a
/// numerical failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Bad user configuration (unknown keys, unparsable values, missing files).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace qdisp
