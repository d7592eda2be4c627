#include "spinwhiten/error.hpp"

namespace spinwhiten {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::QubitCountExceeded: return "QubitCountExceeded";
    case ErrorCode::InvalidQubitIndex: return "InvalidQubitIndex";
    case ErrorCode::QubitCountMismatch: return "QubitCountMismatch";
    case ErrorCode::OracleScaleExceeded: return "OracleScaleExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotTransverse: return "NotTransverse";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::LineAboveNyquist: return "LineAboveNyquist";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::WindowOverlap: return "WindowOverlap";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::ZeroNoiseFloor: return "ZeroNoiseFloor";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

SyntaxError::SyntaxError(int line, int column, const std::string& message)
    : Error(ErrorCode::SyntaxError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

ProtocolError::ProtocolError(int line, const std::string& message)
    : Error(ErrorCode::ProtocolError, "line " + std::to_string(line) + ": " + message),
      line_(line),
      detail_(message) {}

ExecutionError::ExecutionError(int line, const Error& cause)
    : Error(cause.code(), "line " + std::to_string(line) + ": " + cause.what()), line_(line) {}

}  // namespace spinwhiten
