#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace latknot {

enum class ErrorCode {
  Syntax,
  NotTwoValent,
  EmptyGraph,
  OutOfBounds,
  DuplicateEdge,
  InvalidBound,
  InvalidArgument,
  CapExceeded,
  LimitExceeded,
  UnknownKnot,
  TooCoarse,
  NotTwoComponents,
  DegenerateGeometry,
  UnsupportedVariant,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace latknot
