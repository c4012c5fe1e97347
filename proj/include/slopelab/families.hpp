#pragma once

// The four fibered families and their numerical invariants.
//
//   abelian-base   X -> P(O + O(-2D)) -> A x B, A abelian of dim n-2
//   p1-base        same construction with A = P^1 (n = 3)
//   kobayashi12    (1,2)-surface fibration over a ruled surface tower; the
//                  minimal model is never built, M = K_{X'} - Sigma is used
//   surf23         double cover of P^2 x B branched along 2D, D = 4h + D_2

#include <optional>
#include <string>
#include <vector>

#include "bundles.hpp"
#include "errors.hpp"
#include "rational.hpp"
#include "ring.hpp"
#include "tower.hpp"

namespace slopelab {

enum class Family { abelian_base, p1_base, kobayashi12, surf23 };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::abelian_base:
      return "abelian-base";
    case Family::p1_base:
      return "p1-base";
    case Family::kobayashi12:
      return "kobayashi12";
    case Family::surf23:
      return "surf23";
  }
  return "?";
}

inline Family parse_family(const std::string& name) {
  if (name == "abelian-base") return Family::abelian_base;
  if (name == "p1-base") return Family::p1_base;
  if (name == "kobayashi12") return Family::kobayashi12;
  if (name == "surf23") return Family::surf23;
  throw RangeError("unknown family '" + name + "' (expected abelian-base, p1-base, kobayashi12, surf23)");
}

struct FamilyParams {
  Family family = Family::abelian_base;
  int n = 3;
  int g = 0;
  int chi_a = 1;   // abelian-base: h^0(A, D_A)
  int deg_da = 3;  // p1-base
  int deg_db = 1;  // abelian-base, p1-base
  int e = 3;       // kobayashi12: deg D_B
  int deg_d2 = 1;  // surf23

  /// Parameter names in the order used for sweeps and reports.
  static std::vector<std::string> names(Family f) {
    switch (f) {
      case Family::abelian_base:
        return {"n", "chi_a", "deg_db", "g"};
      case Family::p1_base:
        return {"deg_da", "deg_db", "g"};
      case Family::kobayashi12:
        return {"e", "g"};
      case Family::surf23:
        return {"deg_d2", "g"};
    }
    return {};
  }

  int get(const std::string& key) const {
    if (key == "n") return n;
    if (key == "g") return g;
    if (key == "chi_a") return chi_a;
    if (key == "deg_da") return deg_da;
    if (key == "deg_db") return deg_db;
    if (key == "e") return e;
    if (key == "deg_d2") return deg_d2;
    throw RangeError("unknown parameter '" + key + "'");
  }

  void set(const std::string& key, int v) {
    if (key == "n") n = v;
    else if (key == "g") g = v;
    else if (key == "chi_a") chi_a = v;
    else if (key == "deg_da") deg_da = v;
    else if (key == "deg_db") deg_db = v;
    else if (key == "e") e = v;
    else if (key == "deg_d2") deg_d2 = v;
    else throw RangeError("unknown parameter '" + key + "'");
  }

  int dimension() const { return family == Family::abelian_base ? n : 3; }

  /// Throws RangeError naming the violated hypothesis; returns warnings for
  /// admissible but degenerate choices.
  std::vector<std::string> validate() const {
    std::vector<std::string> warnings;
    if (g < 0) throw RangeError("g >= 0 required: B is a smooth curve of genus g");
    switch (family) {
      case Family::abelian_base:
        if (n < 3) throw RangeError("n >= 3 required: the fibration has dimension n > 2");
        if (chi_a < 1) throw RangeError("chi_a >= 1 required: D_A is ample on the abelian variety A");
        if (deg_db < 1) throw RangeError("deg_db >= 1 required: D_B is ample on B");
        break;
      case Family::p1_base:
        if (n != 3) throw RangeError("n = 3 required: the construction over A = P^1 gives 3-folds only");
        if (deg_db < 1) throw RangeError("deg_db >= 1 required: D_B is ample on B");
        if (deg_da < 2) throw RangeError("deg_da >= 3 required: deg D_A > 2 makes K_F ample");
        if (deg_da == 2) warnings.emplace_back("deg_da = 2: K_F is nef and big, but not ample");
        break;
      case Family::kobayashi12:
        if (n != 3) throw RangeError("n = 3 required: the (1,2)-surface fibration is a 3-fold");
        if (e < 3) throw RangeError("e >= 3 required: D_B is an effective divisor of degree e >= 3");
        break;
      case Family::surf23:
        if (n != 3) throw RangeError("n = 3 required: the (2,3)-surface fibration is a 3-fold");
        if (deg_d2 < 1) throw RangeError("deg_d2 >= 1 required: D_2 is ample on B");
        break;
    }
    return warnings;
  }
};

/// A constructed family: total tower, fiber tower and the class whose powers
/// give the invariants (K_{X/B}, or M - f'^*K_B for kobayashi12).
struct FamilyModel {
  FamilyParams params;
  TowerPtr total;
  TowerPtr fiber;
  GradedClass relative_class;  // K_{X/B} on the minimal model, pulled back
  GradedClass absolute_class;  // K_X likewise
  FiberIrregularity irregularity = FiberIrregularity::not_vanishing;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
  /// kobayashi12 only: Sigma = pi^*H / 2 and M = K_{X'} - Sigma.
  std::optional<GradedClass> sigma;
  std::optional<GradedClass> m_class;
};

namespace detail {

inline TowerPtr cover_of_section_bundle(const TowerPtr& base, const GradedClass& D, const std::string& section) {
  auto Y = proj_bundle_rank2(base, 2 * D, section);
  const auto& R = Y->ring;
  GradedClass d_up = transfer(D, base->ring, R);
  // H + H' with H' in |5H + 10D| is linear equivalent to 2(3H + 5D).
  return double_cover(Y, {3 * R.gen(section) + 5 * d_up});
}

}  // namespace detail

inline FamilyModel build_family(const FamilyParams& p) {
  FamilyModel fm;
  fm.params = p;
  fm.warnings = p.validate();
  switch (p.family) {
    case Family::abelian_base: {
      auto Z = product(abelian(p.n - 2, p.chi_a, "D_A"), curve(p.g, "P"));
      GradedClass D = Z->ring.gen("D_A") + Z->ring.gen("P", p.deg_db);
      fm.total = detail::cover_of_section_bundle(Z, D, "H");
      fm.notes.emplace_back("|2D| assumed base point free; Kodaira vanishing assumed on A");
      break;
    }
    case Family::p1_base: {
      auto Z = product(projective_space(1, "h"), curve(p.g, "P"));
      GradedClass D = Z->ring.gen("h", p.deg_da) + Z->ring.gen("P", p.deg_db);
      fm.total = detail::cover_of_section_bundle(Z, D, "H");
      fm.irregularity = FiberIrregularity::vanishing;
      fm.notes.emplace_back("|2D| assumed base point free; F is a Horikawa surface with q(F) = 0");
      break;
    }
    case Family::kobayashi12: {
      auto B = curve(p.g, "C");
      auto S = proj_bundle_rank2(B, B->ring.gen("C", p.e), "Bp");
      GradedClass D = S->ring.gen("Bp") + S->ring.gen("C", p.e);
      fm.total = detail::cover_of_section_bundle(S, D, "H");
      fm.irregularity = FiberIrregularity::vanishing;
      fm.notes.emplace_back("minimal model obtained by contracting the rulings of Sigma; computed via M on X'");
      break;
    }
    case Family::surf23: {
      auto Z = product(projective_space(2, "h"), curve(p.g, "P"));
      GradedClass D = Z->ring.gen("h", 4) + Z->ring.gen("P", p.deg_d2);
      fm.total = double_cover(Z, {D});
      fm.irregularity = FiberIrregularity::vanishing;
      fm.notes.emplace_back("branch divisor: smooth member of |2D|, D_1 a smooth quartic");
      break;
    }
  }
  fm.fiber = fiber_restriction(fm.total);
  const auto& X = *fm.total;
  if (p.family == Family::kobayashi12) {
    GradedClass sigma = X.ring.gen("H", Rational(1, 2));
    GradedClass m = normalize(X.canonical - sigma, X.ring);
    fm.sigma = sigma;
    fm.m_class = m;
    fm.absolute_class = m;
    fm.relative_class = normalize(m - X.base_canonical_pullback(), X.ring);
  } else {
    fm.absolute_class = X.canonical;
    fm.relative_class = *X.relative_canonical;
  }
  return fm;
}

}  // namespace slopelab
