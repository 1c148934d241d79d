#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ordperm {

enum class ErrorCode {
  NonMonotonicInput,
  NotInvariant,
  ModelMismatch,
  IdenticalPoints,
  NotInStabilizer,
  OverlappingBlocks,
  IdentityBase,
  NotInQ,
  SupportsNotDisjoint,
  NoSupportingInterval,
  DepthExhausted,
  AbelianComponent,
  MalformedCert,
  ParseError,
  UnknownSuite,
  DepthOutOfRange,
  Internal,
};

inline std::string_view error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonMonotonicInput: return "NonMonotonicInput";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::IdenticalPoints: return "IdenticalPoints";
    case ErrorCode::NotInStabilizer: return "NotInStabilizer";
    case ErrorCode::OverlappingBlocks: return "OverlappingBlocks";
    case ErrorCode::IdentityBase: return "IdentityBase";
    case ErrorCode::NotInQ: return "NotInQ";
    case ErrorCode::SupportsNotDisjoint: return "SupportsNotDisjoint";
    case ErrorCode::NoSupportingInterval: return "NoSupportingInterval";
    case ErrorCode::DepthExhausted: return "DepthExhausted";
    case ErrorCode::AbelianComponent: return "AbelianComponent";
    case ErrorCode::MalformedCert: return "MalformedCert";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::DepthOutOfRange: return "DepthOutOfRange";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace ordperm
