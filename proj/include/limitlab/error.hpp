#pragma once

#include <stdexcept>
#include <string>

namespace limitlab {

enum class ErrorKind {
  MalformedPoint,
  MalformedSpace,
  MalformedMap,
  EmptySet,
  BudgetExceeded,
  PolicyDeadEnd,
  InvalidArgument,
  Parse,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedPoint: return "malformed-point";
    case ErrorKind::MalformedSpace: return "malformed-space";
    case ErrorKind::MalformedMap: return "malformed-map";
    case ErrorKind::EmptySet: return "empty-set";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::PolicyDeadEnd: return "policy-dead-end";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown when an enumeration outgrows its configured cap. `level` is the
/// depth at which the cap was hit (or -1 when not level-structured).
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, long level)
      : Error(ErrorKind::BudgetExceeded, what), level_(level) {}
  long level() const noexcept { return level_; }

 private:
  long level_;
};

}  // namespace limitlab
