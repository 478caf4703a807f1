#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

enum class ErrorKind {
  InvalidSize,
  InvalidArgument,
  DimensionMismatch,
  OracleTooLarge,
  OddOddImpossible,
  InvalidTiling,
  InvalidBaseline,
  InvalidGraph,
  UndefinedMetric,
  BudgetExceeded,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qwalk
