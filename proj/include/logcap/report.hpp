#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>

namespace logcap {

enum class Verdict { holds, violated, not_applicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

/// Relative threshold separating float noise from a genuine violation.
inline constexpr double kViolationThreshold = 1e-7;

/// One checked inequality  left >= right.
struct BoundReport {
  std::string id;
  double left = 0.0;
  double right = 0.0;
  double slack = 0.0;
  std::map<std::string, double> constants;
  std::string inputs_digest;
  Verdict verdict = Verdict::not_applicable;
  bool guaranteed = true;  // false for user-supplied inputs whose hypotheses are unverified
  std::optional<bool> exact_holds;
  std::optional<bool> exact_equality;  // both sides equal in exact arithmetic
  std::string note;

  bool is_violation() const { return verdict == Verdict::violated; }
  double relative_slack() const { return slack / std::max({1.0, std::abs(left), std::abs(right)}); }
};

/// Fills slack and verdict for left >= right.
inline void judge(BoundReport& rep) {
  rep.slack = rep.left - rep.right;
  const double scale = std::max({1.0, std::abs(rep.left), std::abs(rep.right)});
  if (!std::isfinite(rep.left) || !std::isfinite(rep.right)) {
    rep.verdict = rep.left >= rep.right ? Verdict::holds : Verdict::violated;
    return;
  }
  rep.verdict = rep.slack < -kViolationThreshold * scale ? Verdict::violated : Verdict::holds;
}

inline std::string hex_digest(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace logcap
