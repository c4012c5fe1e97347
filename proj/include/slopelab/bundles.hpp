#pragma once

// Formal direct sums of line bundles, pushed down a tower one construction
// step at a time: double cover, P^1-bundle, product with the base curve. Only
// the rule "negative fiber degree pushes forward to zero" is tracked; higher
// direct images are never computed.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "ring.hpp"
#include "tower.hpp"

namespace slopelab {

struct LineBundle {
  GradedClass divisor;  // first Chern class, in the carrier ring
  Integer multiplicity = 1;
};

/// Direct sum of line bundles on one tower level.
class BundleSum {
 public:
  explicit BundleSum(TowerPtr carrier) : carrier_(std::move(carrier)) {}

  const TowerPtr& carrier() const noexcept { return carrier_; }
  const std::vector<LineBundle>& summands() const noexcept { return summands_; }

  /// Adds `multiplicity` copies of O(divisor); equal divisors are merged.
  void add(const GradedClass& divisor, const Integer& multiplicity = 1) {
    if (multiplicity < 0) throw StructuralError("negative multiplicity");
    if (multiplicity == 0) return;
    GradedClass d = normalize(divisor, carrier_->ring);
    for (auto& s : summands_) {
      if (s.divisor == d) {
        s.multiplicity += multiplicity;
        return;
      }
    }
    summands_.push_back({std::move(d), multiplicity});
  }

  Integer rank() const {
    Integer r = 0;
    for (const auto& s : summands_) r += s.multiplicity;
    return r;
  }

  std::string describe() const {
    if (summands_.empty()) return "0";
    std::string out;
    for (const auto& s : summands_) {
      if (!out.empty()) out += " + ";
      out += "O(" + carrier_->ring.format(s.divisor) + ")";
      if (s.multiplicity != 1) out += "^" + s.multiplicity.str();
    }
    return out;
  }

 private:
  TowerPtr carrier_;
  std::vector<LineBundle> summands_;
};

/// h^0 of line bundles on the atomic factors: abelian varieties, projective
/// spaces, curves (vanishing range only) and points.
struct H0Table {
  Integer operator()(const TowerVariety& atom, const GradedClass& divisor) const {
    const auto& R = atom.ring;
    GradedClass d = normalize(divisor, R);
    return std::visit(
        [&](const auto& step) -> Integer {
          using T = std::decay_t<decltype(step)>;
          if constexpr (std::is_same_v<T, PointStep>) {
            if (!d.is_zero()) throw StructuralError("nonzero divisor on a point");
            return 1;
          } else if constexpr (std::is_same_v<T, AbelianStep>) {
            Integer m = multiple_of_generator(d, R, "abelian factor");
            if (m < 0) return 0;
            if (m == 0) return 1;
            return ipow(m, static_cast<unsigned>(step.dim)) * step.chi;
          } else if constexpr (std::is_same_v<T, ProjectiveSpaceStep>) {
            Integer m = multiple_of_generator(d, R, "projective space");
            if (m < 0) return 0;
            return binomial(m + step.r, static_cast<unsigned>(step.r));
          } else if constexpr (std::is_same_v<T, CurveStep>) {
            Integer deg = to_integer(integrate(d, R), "curve degree");
            if (deg <= 2 * step.genus - 2) {
              throw RangeError("h^0 on a genus " + std::to_string(step.genus) + " curve needs degree > 2g-2, got " +
                               deg.str());
            }
            return deg + 1 - step.genus;
          } else {
            throw StructuralError("h^0 is only tabulated on atomic factors");
          }
        },
        atom.step);
  }

 private:
  static Integer multiple_of_generator(const GradedClass& d, const IntersectionRing& R, const char* where) {
    if (d.is_zero()) return 0;
    if (R.size() != 1 || d.terms().size() != 1 || d.terms().begin()->first != Monomial{1}) {
      throw RangeError(std::string("h^0 on ") + where + " needs a multiple of the generator, got " + R.format(d));
    }
    return to_integer(d.terms().begin()->second, "divisor multiple");
  }
};

/// pi_* omega_{X/B} for a double cover X -> Y branched along 2L:
/// omega_{Y/B} + omega_{Y/B}(L). On a tower without base curve the absolute
/// canonical class is used.
inline BundleSum pushforward_double_cover(const TowerPtr& X) {
  const auto* cover = std::get_if<CoverStep>(&X->step);
  if (!cover) throw StructuralError("pushforward_double_cover: tower top is not a double cover");
  const TowerPtr& Y = cover->base;
  GradedClass k = Y->relative_canonical ? *Y->relative_canonical : Y->canonical;
  BundleSum out(Y);
  out.add(k);
  out.add(k + cover->half_branch);
  return out;
}

/// Pushforward along P(O + O(-L)) -> S: O(a*xi + M) gives
/// O(M) + O(M - L) + ... + O(M - aL) for a >= 0 and nothing for a < 0.
inline BundleSum pushforward_p1_bundle(const BundleSum& bs) {
  const TowerPtr& P = bs.carrier();
  const auto* bundle = std::get_if<BundleStep>(&P->step);
  if (!bundle) throw StructuralError("pushforward_p1_bundle: carrier is not a P^1-bundle");
  const auto& R = P->ring;
  const auto& S = bundle->base;
  const std::size_t xi = R.index_of(bundle->section);
  BundleSum out(S);
  for (const auto& s : bs.summands()) {
    if (!s.divisor.is_zero() && homogeneous_codim(s.divisor, R) != 1) {
      throw StructuralError("summand is not a divisor class: " + R.format(s.divisor));
    }
    Rational a_q = 0;
    GradedClass rest;
    for (const auto& [m, q] : s.divisor.terms()) {
      if (m[xi] == 1) {
        a_q += q;
      } else {
        rest.add_term(m, q);
      }
    }
    if (!is_integral(a_q)) throw StructuralError("fiber degree is not integral: " + R.format(s.divisor));
    Integer a = numerator_of(a_q);
    if (a < 0) continue;
    GradedClass M = transfer(rest, R, S->ring);
    for (Integer i = 0; i <= a; ++i) out.add(M - Rational(i) * bundle->twist, s.multiplicity);
  }
  return out;
}

/// Pushforward along A x B -> B: O(p_A^* M_A + p_B^* M_B) gives
/// O(M_B)^{h^0(A, M_A)}.
inline BundleSum pushforward_product(const BundleSum& bs, const H0Table& table = {}) {
  const TowerPtr& Z = bs.carrier();
  const auto* prod = std::get_if<ProductStep>(&Z->step);
  if (!prod) throw StructuralError("pushforward_product: carrier is not a product");
  const bool left_is_base = std::holds_alternative<CurveStep>(prod->left->step) && prod->left->base_point;
  const bool right_is_base = std::holds_alternative<CurveStep>(prod->right->step) && prod->right->base_point;
  if (left_is_base == right_is_base) {
    throw StructuralError("pushforward_product: need exactly one base-curve factor");
  }
  const TowerPtr& A = left_is_base ? prod->right : prod->left;
  const TowerPtr& B = left_is_base ? prod->left : prod->right;
  const auto& R = Z->ring;
  BundleSum out(B);
  for (const auto& s : bs.summands()) {
    GradedClass on_a, on_b;
    for (const auto& [m, q] : s.divisor.terms()) {
      bool in_a = false, in_b = false;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        (A->ring.find(R.generators()[i].name) ? in_a : in_b) = true;
      }
      if (in_a && in_b) throw StructuralError("summand does not split over the product: " + R.format(s.divisor));
      if (!in_a && !in_b) throw StructuralError("summand has a constant term: " + R.format(s.divisor));
      (in_a ? on_a : on_b).add_term(m, q);
    }
    Integer h0 = table(*A, transfer(on_a, R, A->ring));
    out.add(transfer(on_b, R, B->ring), s.multiplicity * h0);
  }
  return out;
}

/// Total h^0 of a sum living on an atomic factor or a point.
inline Integer global_sections(const BundleSum& bs, const H0Table& table = {}) {
  Integer total = 0;
  for (const auto& s : bs.summands()) total += s.multiplicity * table(*bs.carrier(), s.divisor);
  return total;
}

struct RankDegree {
  Integer rank = 0;
  Integer degree = 0;
};

/// Rank and degree of a sum living on the base curve.
inline RankDegree rank_and_degree(const BundleSum& bs) {
  const auto& C = bs.carrier();
  if (!std::holds_alternative<CurveStep>(C->step)) {
    throw StructuralError("rank_and_degree: carrier is not the base curve");
  }
  RankDegree rd;
  for (const auto& s : bs.summands()) {
    rd.rank += s.multiplicity;
    rd.degree += s.multiplicity * to_integer(integrate(s.divisor, C->ring), "summand degree");
  }
  return rd;
}

/// Walks X -> ... -> B: double cover, then P^1-bundles, then the product
/// with the base curve when present. Returns f_* omega_{X/B} on B.
inline BundleSum pushforward_to_base(const TowerPtr& X, const H0Table& table = {}) {
  BundleSum bs = pushforward_double_cover(X);
  while (std::holds_alternative<BundleStep>(bs.carrier()->step)) bs = pushforward_p1_bundle(bs);
  if (std::holds_alternative<ProductStep>(bs.carrier()->step)) bs = pushforward_product(bs, table);
  if (!std::holds_alternative<CurveStep>(bs.carrier()->step)) {
    throw StructuralError("pushforward did not reach the base curve");
  }
  return bs;
}

/// p_g of a fiber tower (double cover of a P^1-bundle tower over an atomic
/// factor or a point): sum of h^0 over the pushed-down canonical sheaf.
inline Integer geometric_genus(const TowerPtr& F, const H0Table& table = {}) {
  BundleSum bs = pushforward_double_cover(F);
  while (std::holds_alternative<BundleStep>(bs.carrier()->step)) bs = pushforward_p1_bundle(bs);
  if (std::holds_alternative<ProductStep>(bs.carrier()->step)) {
    throw StructuralError("geometric_genus: products of atomic factors are not tabulated");
  }
  return global_sections(bs, table);
}

/// Whether h^1(F, O_F) = 0 is known for the family, so R^1 f_* omega_X = 0.
enum class FiberIrregularity { vanishing, not_vanishing };

/// chi(X, omega_X) from the Leray spectral sequence when R^1 f_* omega_X = 0:
/// chi(B, f_* omega_X) + chi(B, omega_B) = degree + (rank + 1)(g - 1).
inline Integer chi_total(const Integer& rank, const Integer& degree, int g, FiberIrregularity q) {
  if (q != FiberIrregularity::vanishing) {
    throw UnsupportedError("chi(X, omega_X) needs q(F) = 0 so that R^1 f_* omega_X vanishes");
  }
  if (rank < 0) throw DomainError("negative rank");
  return degree + (rank + 1) * (g - 1);
}

}  // namespace slopelab
