#include <gtest/gtest.h>

#include "support.hpp"

using namespace slopelab;
using namespace testing_support;

namespace {

void expect_core(const InvariantsReport& r, long k, long deg, long kf, long pg) {
  EXPECT_EQ(r.k_rel_n, k);
  EXPECT_EQ(r.deg_push, deg);
  EXPECT_EQ(r.kf_top, kf);
  EXPECT_EQ(r.pg_f, pg);
}

Status status_of(const InvariantsReport& r, const std::string& name) {
  const Verdict* v = r.find(name);
  EXPECT_NE(v, nullptr) << name;
  return v ? v->status : Status::inapplicable;
}

}  // namespace

TEST(Params, Validation) {
  FamilyParams p = params(Family::kobayashi12);
  p.e = 2;
  try {
    p.validate();
    FAIL();
  } catch (const RangeError& e) {
    EXPECT_NE(std::string(e.what()).find("e >= 3"), std::string::npos);
  }
  p = params(Family::abelian_base);
  p.n = 2;
  EXPECT_THROW(p.validate(), RangeError);
  p = params(Family::p1_base);
  p.deg_da = 1;
  EXPECT_THROW(p.validate(), RangeError);
  p.deg_da = 2;
  auto w = p.validate();
  ASSERT_EQ(w.size(), 1u);
  EXPECT_NE(w[0].find("nef and big, but not ample"), std::string::npos);
  p = params(Family::surf23);
  p.g = -1;
  EXPECT_THROW(build_family(p), RangeError);
  EXPECT_THROW(parse_family("nope"), RangeError);
  EXPECT_EQ(parse_family("surf23"), Family::surf23);
}

TEST(Invariants, AbelianBase) {
  for (int g = 0; g <= 3; ++g) {
    FamilyParams p = params(Family::abelian_base);
    p.g = g;
    auto r = invariants(p);
    expect_core(r, 52, 10, 8, 4);
    EXPECT_EQ(r.slope, Rational(26, 5));
    EXPECT_EQ(status_of(r, "slope_inequality"), Status::violated);
    EXPECT_EQ(r.find("slope_inequality")->rhs, 60);
    EXPECT_FALSE(r.chi.has_value());
    EXPECT_EQ(status_of(r, "noether_severi"), Status::inapplicable);
  }
  FamilyParams p = params(Family::abelian_base);
  p.n = 5;
  expect_core(invariants(p), 5808, 82, 480, 28);
}

TEST(Invariants, HigherDimensionHasNoSharpBounds) {
  FamilyParams p = params(Family::abelian_base);
  p.n = 4;
  auto r = invariants(p);
  EXPECT_EQ(r.verdicts.size(), 1u);
  EXPECT_EQ(r.find("slope_four_thirds"), nullptr);
}

TEST(Invariants, P1Base) {
  FamilyParams p = params(Family::p1_base);
  p.deg_db = 2;
  auto r = invariants(p);
  expect_core(r, 216, 52, 16, 10);
  EXPECT_EQ(status_of(r, "slope_inequality"), Status::violated);
  EXPECT_EQ(r.find("slope_inequality")->rhs, Rational(1248, 5));
}

TEST(Invariants, P1BaseWarningStillComputes) {
  FamilyParams p = params(Family::p1_base);
  p.deg_da = 2;
  auto r = invariants(p);
  ASSERT_EQ(r.warnings.size(), 1u);
  expect_core(r, 4 * 1 * (26 - 12), 16, 8, 6);
}

TEST(Invariants, Kobayashi) {
  for (int g = 0; g <= 3; ++g) {
    FamilyParams p = params(Family::kobayashi12);
    p.g = g;
    auto fm = build_family(p);
    auto r = invariants(fm);
    expect_core(r, 12, 9, 1, 2);
    const auto& R = fm.total->ring;
    EXPECT_EQ(integrate(power(*fm.m_class, 3, R), R), 12 + 6 * g - 6);
    EXPECT_EQ(r.slope, Rational(4, 3));
    EXPECT_EQ(status_of(r, "slope_inequality"), Status::violated);
    const Verdict* ft = r.find("slope_four_thirds");
    EXPECT_EQ(ft->status, Status::equality);
    EXPECT_EQ(ft->tag, "fiber_1_2");
    EXPECT_EQ(status_of(r, "slope_two"), Status::inapplicable);
    EXPECT_EQ(status_of(r, "slope_chx"), Status::holds);
  }
  FamilyParams p = params(Family::kobayashi12);
  p.g = 1;
  auto r = invariants(p);
  EXPECT_EQ(r.chi, 9);
  EXPECT_EQ(r.k_abs_n, 12);
  const Verdict* ns = r.find("noether_severi");
  EXPECT_EQ(ns->label(), "EXCEPTION-EQUALITY");
  EXPECT_EQ(ns->rhs, 12);
}

TEST(Invariants, Surf23) {
  for (int d = 1; d <= 5; ++d) {
    FamilyParams p = params(Family::surf23);
    p.deg_d2 = d;
    p.g = 1;
    auto r = invariants(p);
    expect_core(r, 6 * d, 3 * d, 2, 3);
    EXPECT_EQ(r.slope, 2);
    EXPECT_EQ(r.chi, 3 * d);
    EXPECT_EQ(r.k_abs_n, 6 * d);
    EXPECT_EQ(status_of(r, "slope_two"), Status::equality);
    EXPECT_EQ(status_of(r, "slope_four_thirds"), Status::holds);
    EXPECT_EQ(status_of(r, "slope_chx"), Status::holds);
    EXPECT_EQ(r.find("slope_chx")->rhs, Rational(4, 3));
    EXPECT_EQ(r.find("noether_severi")->label(), "EQUALITY");
  }
}

TEST(Invariants, NoetherSeveriNeedsIrregularity) {
  FamilyParams p = params(Family::surf23);
  p.g = 0;
  auto r = invariants(p);
  EXPECT_EQ(status_of(r, "noether_severi"), Status::inapplicable);
  EXPECT_EQ(r.chi, 3 - 4);
}

TEST(Invariants, GenusIndependence) {
  for (auto f : {Family::abelian_base, Family::kobayashi12, Family::p1_base, Family::surf23}) {
    auto base = invariants(params(f));
    for (int g = 1; g <= 4; ++g) {
      FamilyParams p = params(f);
      p.g = g;
      auto r = invariants(p);
      EXPECT_EQ(r.k_rel_n, base.k_rel_n);
      EXPECT_EQ(r.deg_push, base.deg_push);
      EXPECT_EQ(r.kf_top, base.kf_top);
      EXPECT_EQ(r.pg_f, base.pg_f);
    }
  }
}

TEST(Invariants, LinearInBaseDivisor) {
  struct Case {
    Family f;
    const char* key;
  };
  for (auto c : {Case{Family::abelian_base, "deg_db"}, Case{Family::p1_base, "deg_db"},
                 Case{Family::surf23, "deg_d2"}}) {
    auto one = invariants(params(c.f));
    for (int d = 2; d <= 5; ++d) {
      FamilyParams p = params(c.f);
      p.set(c.key, d);
      auto r = invariants(p);
      EXPECT_EQ(r.k_rel_n, d * one.k_rel_n);
      EXPECT_EQ(r.deg_push, d * one.deg_push);
      EXPECT_EQ(r.kf_top, one.kf_top);
    }
  }
  for (int e = 3; e <= 8; ++e) {
    FamilyParams p = params(Family::kobayashi12);
    p.e = e;
    auto r = invariants(p);
    EXPECT_EQ(r.k_rel_n, 4 * e);
    EXPECT_EQ(r.deg_push, 3 * e);
  }
}

TEST(Invariants, ReportIdentities) {
  for (auto f : {Family::abelian_base, Family::p1_base, Family::kobayashi12, Family::surf23}) {
    for (int g = 0; g <= 2; ++g) {
      FamilyParams p = params(f);
      p.g = g;
      auto r = invariants(p);
      EXPECT_EQ(r.k_abs_n, r.k_rel_n + r.n * (2 * g - 2) * r.kf_top);
      ASSERT_TRUE(r.slope);
      EXPECT_EQ(*r.slope * r.deg_push, r.k_rel_n);
      EXPECT_EQ(r.rank, r.pg_f);
    }
  }
}

TEST(Verdicts, SlopeInequalityFromReport) {
  InvariantsReport r;
  r.n = 3;
  r.k_rel_n = 60;
  r.kf_top = 8;
  r.deg_push = 10;
  r.pg_f = 4;
  EXPECT_EQ(verdict_slope_inequality(r).status, Status::equality);
  r.k_rel_n = 61;
  EXPECT_EQ(verdict_slope_inequality(r).status, Status::holds);
  r.pg_f = 0;
  EXPECT_EQ(verdict_slope_inequality(r).status, Status::inapplicable);
}

TEST(Verdicts, AbelianCriterion) {
  EXPECT_EQ(violation_margin_abelian(3), -32);
  EXPECT_EQ(violation_margin_abelian(4), -512);
  for (int n = 3; n <= 12; ++n) EXPECT_TRUE(violation_criterion_abelian(n));
  EXPECT_THROW(violation_margin_abelian(2), RangeError);
}

TEST(Table1, Rows) {
  auto check = [](int k, int p, Rational prev, Rational ours) {
    auto row = table1_bounds(k, p);
    EXPECT_EQ(row.previous, prev) << k << "," << p;
    EXPECT_EQ(row.ours, ours) << k << "," << p;
  };
  check(1, 2, 1, Rational(4, 3));
  check(2, 3, Rational(4, 3), 2);
  check(3, 1, Rational(4, 3), 2);
  check(4, 3, Rational(4, 3), 2);
  check(6, 5, Rational(12, 5), Rational(12, 5));
  EXPECT_TRUE(table1_bounds(6, 5).coincide);
  EXPECT_FALSE(table1_bounds(4, 3).coincide);
}

TEST(Table1, Errors) {
  EXPECT_THROW(table1_bounds(1, 3), DomainError);
  EXPECT_THROW(table1_bounds(4, 5), DomainError);
  EXPECT_THROW(table1_bounds(0, 1), DomainError);
  EXPECT_THROW(table1_bounds(4, 0), DomainError);
  try {
    table1_bounds(2, 4);
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("K_F^2 >= 2p_g(F) - 4"), std::string::npos);
  }
}
