#pragma once

#include <optional>
#include <string>
#include <vector>

#include "families.hpp"
#include "rational.hpp"

namespace slopelab {

enum class Status { holds, violated, equality, inapplicable };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::holds:
      return "HOLDS";
    case Status::violated:
      return "VIOLATED";
    case Status::equality:
      return "EQUALITY";
    case Status::inapplicable:
      return "INAPPLICABLE";
  }
  return "?";
}

inline Status parse_status(const std::string& s) {
  if (s == "HOLDS") return Status::holds;
  if (s == "VIOLATED") return Status::violated;
  if (s == "EQUALITY") return Status::equality;
  if (s == "INAPPLICABLE") return Status::inapplicable;
  throw StructuralError("unknown verdict status '" + s + "'");
}

/// Exact comparison lhs >= rhs.
inline Status compare(const Rational& lhs, const Rational& rhs) {
  if (lhs > rhs) return Status::holds;
  if (lhs == rhs) return Status::equality;
  return Status::violated;
}

/// One inequality checked against a report. `lhs` and `rhs` are the two sides
/// as exact rationals; `tag` carries qualifiers such as the (1,2)-fiber
/// exception of the Noether-Severi comparison.
struct Verdict {
  std::string name;
  Status status = Status::inapplicable;
  Rational lhs = 0;
  Rational rhs = 0;
  std::string tag;
  std::string detail;

  /// EQUALITY or EXCEPTION-EQUALITY style label.
  std::string label() const {
    std::string s = status_name(status);
    if (tag == "exception") s = "EXCEPTION-" + s;
    return s;
  }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline constexpr int kReportSchemaVersion = 1;

struct InvariantsReport {
  FamilyParams params;
  int n = 3;
  int g = 0;
  Integer k_rel_n = 0;   // K_{X/B}^n
  Integer deg_push = 0;  // deg f_* omega_{X/B}
  Integer rank = 0;      // rank f_* omega_{X/B}
  Integer kf_top = 0;    // K_F^{n-1}
  Integer pg_f = 0;      // p_g(F)
  std::optional<Integer> chi;  // chi(X, omega_X), q(F) = 0 families with n = 3
  Integer k_abs_n = 0;         // K_X^n
  std::optional<Rational> slope;
  std::string pushforward;  // f_* omega_{X/B} as a sum of line bundles on B
  std::vector<Verdict> verdicts;
  std::vector<std::string> warnings;

  const Verdict* find(const std::string& name) const {
    for (const auto& v : verdicts) {
      if (v.name == name) return &v;
    }
    return nullptr;
  }

  bool is_one_two_fiber() const { return n == 3 && kf_top == 1 && pg_f == 2; }

  friend bool operator==(const InvariantsReport& a, const InvariantsReport& b) {
    return a.params.family == b.params.family && a.n == b.n && a.g == b.g && a.k_rel_n == b.k_rel_n &&
           a.deg_push == b.deg_push && a.rank == b.rank && a.kf_top == b.kf_top && a.pg_f == b.pg_f &&
           a.chi == b.chi && a.k_abs_n == b.k_abs_n && a.slope == b.slope && a.pushforward == b.pushforward &&
           a.verdicts == b.verdicts && a.warnings == b.warnings && params_equal(a, b);
  }

 private:
  static bool params_equal(const InvariantsReport& a, const InvariantsReport& b) {
    for (const auto& k : FamilyParams::names(a.params.family)) {
      if (a.params.get(k) != b.params.get(k)) return false;
    }
    return true;
  }
};

}  // namespace slopelab
