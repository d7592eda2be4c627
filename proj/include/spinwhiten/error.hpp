#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spinwhiten {

enum class ErrorCode {
  IndexOutOfRange,
  QubitCountExceeded,
  InvalidQubitIndex,
  QubitCountMismatch,
  OracleScaleExceeded,
  InvalidArgument,
  NotTransverse,
  NonPositiveInput,
  NotPowerOfTwo,
  LineAboveNyquist,
  LengthMismatch,
  EmptyInput,
  WindowOverlap,
  EmptyWindow,
  ZeroNoiseFloor,
  OutOfRange,
  SyntaxError,
  ProtocolError,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Base for every error raised by the library. The code is stable and is
/// what tests and the CLI dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Pulse-program syntax error. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

/// Violated ordering rule in a pulse program (e.g. whiten before pulse90).
class ProtocolError : public Error {
 public:
  ProtocolError(int line, const std::string& message);

  int line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  int line_;
  std::string detail_;
};

/// A module error raised while executing a statement, tagged with its line.
class ExecutionError : public Error {
 public:
  ExecutionError(int line, const Error& cause);

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace spinwhiten
