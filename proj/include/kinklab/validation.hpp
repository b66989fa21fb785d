#pragma once

#include <string>
#include <vector>

namespace kinklab {

struct ValidationClause {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  std::string detail;
};

/// Outcome of a hypothesis check. A violated clause yields a failing report,
/// not an exception.
struct ValidationReport {
  std::string subject;
  std::vector<ValidationClause> clauses;

  bool passed() const {
    for (const auto& c : clauses)
      if (!c.passed) return false;
    return true;
  }
};

}  // namespace kinklab
