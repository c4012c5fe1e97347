#pragma once

// Inequality verdicts over an InvariantsReport. Every comparison is exact.

#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "report.hpp"

namespace slopelab {

/// K_{X/B}^n >= n * K_F^{n-1} / p_g(F) * deg f_* omega_{X/B}.
inline Verdict verdict_slope_inequality(const InvariantsReport& r) {
  Verdict v{"slope_inequality", Status::inapplicable, 0, 0, {}, {}};
  if (r.pg_f <= 0) {
    v.detail = "p_g(F) = 0";
    return v;
  }
  v.lhs = Rational(r.k_rel_n);
  v.rhs = Rational(r.n * r.kf_top * r.deg_push, r.pg_f);
  // Cross-multiplied integer comparison; identical to comparing lhs and rhs.
  Integer left = r.k_rel_n * r.pg_f;
  Integer right = r.n * r.kf_top * r.deg_push;
  v.status = left > right ? Status::holds : (left == right ? Status::equality : Status::violated);
  return v;
}

/// Closed-form criterion for the abelian-base family:
/// (n-1)(3^n - 3^{n-2}) - 3^{2n-2} + 1 < 0 exactly when the slope inequality fails.
inline Integer violation_margin_abelian(int n) {
  if (n < 3) throw RangeError("n >= 3 required");
  const unsigned u = static_cast<unsigned>(n);
  return Integer(n - 1) * (ipow(3, u) - ipow(3, u - 2)) - ipow(3, 2 * u - 2) + 1;
}

inline bool violation_criterion_abelian(int n) { return violation_margin_abelian(n) < 0; }

/// Slope lower bounds for 3-fold fibrations: 4/3 always, 2 away from
/// (1,2)-surface fibers, and 4K^2/(K^2+4).
inline std::vector<Verdict> verdict_sharp_bounds(const InvariantsReport& r) {
  std::vector<Verdict> out;
  if (r.n != 3 || r.deg_push <= 0 || !r.slope) return out;
  const Rational& s = *r.slope;
  const bool one_two = r.is_one_two_fiber();

  Verdict four_thirds{"slope_four_thirds", compare(s, Rational(4, 3)), s, Rational(4, 3), {}, {}};
  if (four_thirds.status == Status::equality) {
    four_thirds.tag = one_two ? "fiber_1_2" : "unexpected_fiber";
    four_thirds.detail = "equality forces (K_F^2, p_g(F)) = (1, 2)";
  }
  out.push_back(four_thirds);

  Verdict two{"slope_two", Status::inapplicable, s, Rational(2), {}, {}};
  if (one_two) {
    two.detail = "(K_F^2, p_g(F)) = (1, 2)";
  } else {
    two.status = compare(s, Rational(2));
  }
  out.push_back(two);

  Rational chx(4 * r.kf_top, r.kf_top + 4);
  out.push_back(Verdict{"slope_chx", compare(s, chx), s, chx, {}, {}});
  return out;
}

/// K_X^3 >= 2 chi(X, omega_X) for irregular 3-folds fibered over a curve of
/// genus >= 1; a (1,2)-surface fiber is compared against (4/3) chi instead and
/// tagged as the exception.
inline Verdict verdict_noether_severi(const InvariantsReport& r) {
  Verdict v{"noether_severi", Status::inapplicable, 0, 0, {}, {}};
  if (r.n != 3) {
    v.detail = "3-folds only";
    return v;
  }
  if (r.g < 1) {
    v.detail = "g >= 1 required (irregular 3-fold)";
    return v;
  }
  if (!r.chi) {
    v.detail = "chi(X, omega_X) unavailable: q(F) = 0 not known";
    return v;
  }
  v.lhs = Rational(r.k_abs_n);
  if (r.is_one_two_fiber()) {
    v.rhs = Rational(4 * *r.chi, 3);
    v.tag = "exception";
    v.detail = "(1,2)-surface fiber: compared with (4/3) chi";
  } else {
    v.rhs = Rational(2 * *r.chi);
  }
  v.status = compare(v.lhs, v.rhs);
  return v;
}

struct Table1Row {
  Rational previous;
  Rational ours;
  bool coincide = false;  // the two bounds agree (K_F^2 = 2 p_g(F) - 4 on the last row)
};

/// Previous and new slope lower bounds for given fiber invariants.
inline Table1Row table1_bounds(int kf2, int pg) {
  if (kf2 < 1) throw DomainError("K_F^2 >= 1 required for a surface of general type");
  if (pg < 0) throw DomainError("p_g(F) >= 0 required");
  if (kf2 < 2 * pg - 4) {
    throw DomainError("Noether inequality K_F^2 >= 2p_g(F) - 4 violated by (" + std::to_string(kf2) + ", " +
                      std::to_string(pg) + ")");
  }
  Table1Row row;
  if (kf2 == 1) {
    row.previous = 1;
    row.ours = Rational(4, 3);
  } else if (kf2 <= 3) {
    row.previous = Rational(4, 3);
    row.ours = 2;
  } else {
    if (pg == 0) throw DomainError("p_g(F) >= 1 required: the bound 4(p_g - 2)/p_g is undefined at p_g = 0");
    row.previous = Rational(4 * (pg - 2), pg);
    row.ours = Rational(4 * kf2, kf2 + 4);
  }
  row.coincide = row.previous == row.ours;
  return row;
}

}  // namespace slopelab
