#pragma once

#include <stdexcept>
#include <string>

namespace frobw {

// Error categories double as CLI exit codes.
enum class ErrorKind : int {
  usage = 1,
  parse = 2,
  validation = 3,
  internal = 4,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
  ErrorKind kind_;
};

struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::validation, what) {}
};

/// Raised when a size cap is hit; reported as a validation failure.
struct TooLargeError : ValidationError {
  explicit TooLargeError(const std::string& what)
      : ValidationError("instance too large: " + what) {}
};

/// A self-check failed. This always indicates a bug (or an input that
/// violates an unverifiable precondition) and carries the falsifying datum.
struct InternalCheckFailure : Error {
  explicit InternalCheckFailure(const std::string& what)
      : Error(ErrorKind::internal, "internal check failed: " + what) {}
};

} // namespace frobw
