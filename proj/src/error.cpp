#include "latknot/error.hpp"

namespace latknot {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::NotTwoValent: return "NotTwoValent";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::InvalidBound: return "InvalidBound";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::UnknownKnot: return "UnknownKnot";
    case ErrorCode::TooCoarse: return "TooCoarse";
    case ErrorCode::NotTwoComponents: return "NotTwoComponents";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::UnsupportedVariant: return "UnsupportedVariant";
  }
  return "Error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorCode::Syntax,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace latknot
