#pragma once

#include <stdexcept>
#include <string>

namespace gruppen {

// Error categories; the numeric values double as CLI exit codes.
enum class ErrorCode : int {
  usage = 2,     // invalid parameters, malformed input, field mismatch
  refused = 3,   // protocol refusal (recovery gate, exclusion list)
  io = 4,        // file could not be read or written
  internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error(ErrorCode::usage, what) {}
};

struct DivisionByZero : UsageError {
  explicit DivisionByZero(const std::string& what) : UsageError(what) {}
};

// Duplicate interpolation nodes and similar degenerate inputs.
struct DegenerateInput : UsageError {
  explicit DegenerateInput(const std::string& what) : UsageError(what) {}
};

struct ProtocolError : UsageError {
  explicit ProtocolError(const std::string& what) : UsageError(what) {}
};

struct RefusedError : Error {
  explicit RefusedError(const std::string& what) : Error(ErrorCode::refused, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace gruppen
