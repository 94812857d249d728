#pragma once

#include <string>
#include <vector>

namespace sdyn {

// Outcome of one symbolic identity check; residuals are the normal forms
// that must vanish, printed.
struct Certificate {
  std::string name;
  bool ok = false;
  std::vector<std::string> residuals;
};

inline bool all_ok(const std::vector<Certificate>& cs) {
  for (const auto& c : cs)
    if (!c.ok) return false;
  return true;
}

} // namespace sdyn
