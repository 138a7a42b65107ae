#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "limitlab/rational.hpp"
#include "limitlab/space.hpp"

namespace limitlab {

enum class Outcome { Pass, Fail, Inconclusive };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct Witness {
  std::optional<std::int64_t> time;   // return time, gap bound, period ...
  std::optional<Rational> distance;   // distance evidence at the stated budget
  std::vector<TreePoint> points;      // witness point(s) / preimage pieces
  std::string note;
};

/// Outcome of one classification or structural query. Verdicts marked
/// `budget_relative` only claim "no witness within the recorded budgets".
struct Verdict {
  std::string query;
  std::string subject;
  std::optional<Rational> epsilon;
  std::vector<std::pair<std::string, std::int64_t>> budgets;
  Outcome outcome = Outcome::Inconclusive;
  bool budget_relative = false;
  Witness witness;

  bool passed() const { return outcome == Outcome::Pass; }
  bool failed() const { return outcome == Outcome::Fail; }
};

}  // namespace limitlab
