#pragma once

// Builders for the varieties the families are assembled from: curves,
// abelian varieties, projective spaces, products, rank-2 split projective
// bundles and branched double covers. Each returns an immutable TowerVariety
// that records its construction step so that pushforwards and fiber
// restriction can walk the tower.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "ring.hpp"

namespace slopelab {

struct TowerVariety;
using TowerPtr = std::shared_ptr<const TowerVariety>;

struct PointStep {};
struct CurveStep {
  int genus = 0;
};
struct AbelianStep {
  int dim = 1;
  Integer chi = 1;  // h^0 of the polarization
};
struct ProjectiveSpaceStep {
  int r = 1;
};
struct ProductStep {
  TowerPtr left;
  TowerPtr right;
};
/// P(O + O(-L)) over `base`; `twist` is L in the base ring.
struct BundleStep {
  TowerPtr base;
  GradedClass twist;
  std::string section;
};
/// Double cover of `base` branched along a divisor in |2L|; `half_branch` is L.
struct CoverStep {
  TowerPtr base;
  GradedClass half_branch;
};

using ConstructionStep =
    std::variant<PointStep, CurveStep, AbelianStep, ProjectiveSpaceStep, ProductStep, BundleStep, CoverStep>;

struct CoverDescriptor {
  GradedClass half_branch;
};

struct TowerVariety {
  IntersectionRing ring;
  GradedClass canonical;
  /// K - (2g-2) * [point of B]; present exactly when base_genus is.
  std::optional<GradedClass> relative_canonical;
  std::optional<int> base_genus;
  /// Name of the generator pulled back from the point class of the base curve.
  std::optional<std::string> base_point;
  ConstructionStep step;
  std::vector<std::string> provenance;

  int dim() const { return ring.dim(); }

  /// Pullback of the base point class, i.e. the class of a fiber.
  GradedClass fiber_class() const {
    if (!base_point) throw StructuralError("tower has no distinguished base curve");
    return ring.gen(*base_point);
  }

  /// (2g-2) * fiber class, the pullback of K_B.
  GradedClass base_canonical_pullback() const {
    return Rational(2 * *base_genus - 2) * fiber_class();
  }
};

namespace detail {

inline TowerPtr finish(TowerVariety v) {
  if (v.base_genus) v.relative_canonical = v.canonical - v.base_canonical_pullback();
  return std::make_shared<const TowerVariety>(std::move(v));
}

inline Monomial unit_power(std::size_t arity, std::size_t i, unsigned e) {
  Monomial m(arity, 0);
  m[i] = e;
  return m;
}

inline RewriteRule lift_rule(const RewriteRule& r, const IntersectionRing& from, const IntersectionRing& to) {
  RewriteRule out;
  out.lhs = Monomial(to.size(), 0);
  for (std::size_t i = 0; i < r.lhs.size(); ++i) {
    if (r.lhs[i]) out.lhs[to.index_of(from.generators()[i].name)] = r.lhs[i];
  }
  for (const auto& [m, q] : r.rhs.terms()) {
    Monomial nm(to.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i]) nm[to.index_of(from.generators()[i].name)] = m[i];
    }
    out.rhs.add_term(nm, q);
  }
  return out;
}

/// Generator-only skeleton ring used to lift rules before the real ring exists.
inline IntersectionRing skeleton(const std::vector<Generator>& gens, int dim) {
  return IntersectionRing::build(gens, {}, dim, 1, [](const Monomial&) { return Rational(0); });
}

inline void require_divisor(const GradedClass& c, const IntersectionRing& R, const char* what) {
  auto d = homogeneous_codim(c, R);
  if (!c.is_zero() && (!d || *d != 1)) {
    throw StructuralError(std::string(what) + " must be a codim-1 class, got " + R.format(c));
  }
}

}  // namespace detail

/// A point: zero-dimensional ring with no generators.
inline TowerPtr point() {
  auto ring = IntersectionRing::with_top_values({}, {}, 0, 1, {{Monomial{}, Rational(1)}});
  TowerVariety v{std::move(ring), {}, std::nullopt, std::nullopt, std::nullopt, PointStep{}, {"point"}};
  return detail::finish(std::move(v));
}

/// Smooth curve of genus g with point class `name`: c^2 = 0, integral of c is 1,
/// K = (2g - 2) c. The curve is its own base.
inline TowerPtr curve(int genus, const std::string& name = "c") {
  if (genus < 0) throw RangeError("genus must be >= 0");
  RewriteRule sq{detail::unit_power(1, 0, 2), {}};
  auto ring = IntersectionRing::with_top_values({{name, 1}}, {sq}, 1, 1, {{Monomial{1}, Rational(1)}});
  GradedClass k = ring.gen(name, 2 * genus - 2);
  TowerVariety v{std::move(ring), std::move(k), std::nullopt, genus, name, CurveStep{genus},
                 {"curve of genus " + std::to_string(genus)}};
  return detail::finish(std::move(v));
}

/// Abelian variety of dimension d polarized by theta with h^0(theta) = chi, so
/// theta^d integrates to d! * chi. K = 0.
inline TowerPtr abelian(int d, const Integer& chi, const std::string& name = "theta") {
  if (d < 1) throw RangeError("abelian variety dimension must be >= 1");
  if (chi < 1) throw RangeError("chi = h^0(D_A) must be >= 1");
  RewriteRule trunc{detail::unit_power(1, 0, static_cast<unsigned>(d + 1)), {}};
  auto ring = IntersectionRing::with_top_values(
      {{name, 1}}, {trunc}, d, 1, {{Monomial{static_cast<unsigned>(d)}, Rational(factorial(d) * chi)}});
  GradedClass k;
  TowerVariety v{std::move(ring), std::move(k), std::nullopt, std::nullopt, std::nullopt, AbelianStep{d, chi},
                 {"abelian variety of dimension " + std::to_string(d) + ", h^0(D_A) = " + chi.str()}};
  return detail::finish(std::move(v));
}

/// P^r with hyperplane class `name`: h^{r+1} = 0, integral of h^r is 1, K = -(r+1) h.
inline TowerPtr projective_space(int r, const std::string& name = "h") {
  if (r < 1) throw RangeError("projective space dimension must be >= 1");
  RewriteRule trunc{detail::unit_power(1, 0, static_cast<unsigned>(r + 1)), {}};
  auto ring = IntersectionRing::with_top_values({{name, 1}}, {trunc}, r, 1,
                                                {{Monomial{static_cast<unsigned>(r)}, Rational(1)}});
  GradedClass k = ring.gen(name, -(r + 1));
  TowerVariety v{std::move(ring), std::move(k), std::nullopt, std::nullopt, std::nullopt,
                 ProjectiveSpaceStep{r}, {"P^" + std::to_string(r)}};
  return detail::finish(std::move(v));
}

/// V x W. Rings are tensored; top integrals multiply across factors.
inline TowerPtr product(const TowerPtr& V, const TowerPtr& W) {
  std::vector<Generator> gens = V->ring.generators();
  for (const auto& g : W->ring.generators()) {
    if (V->ring.find(g.name)) throw StructuralError("generator name clash in product: '" + g.name + "'");
    gens.push_back(g);
  }
  const int dim = V->dim() + W->dim();
  auto sk = detail::skeleton(gens, dim);
  std::vector<RewriteRule> rules;
  for (const auto& r : V->ring.rules()) rules.push_back(detail::lift_rule(r, V->ring, sk));
  for (const auto& r : W->ring.rules()) rules.push_back(detail::lift_rule(r, W->ring, sk));

  const std::size_t nv = V->ring.size();
  const IntersectionRing& rv = V->ring;
  const IntersectionRing& rw = W->ring;
  auto ring = IntersectionRing::build(
      gens, rules, dim, rv.degree_multiplier() * rw.degree_multiplier(), [&](const Monomial& m) {
        Monomial mv(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(nv));
        Monomial mw(m.begin() + static_cast<std::ptrdiff_t>(nv), m.end());
        if (rv.codim(mv) != rv.dim() || rw.codim(mw) != rw.dim()) return Rational(0);
        return rv.top_values().at(mv) * rw.top_values().at(mw);
      });

  GradedClass k = transfer(V->canonical, rv, ring) + transfer(W->canonical, rw, ring);
  std::optional<int> genus;
  std::optional<std::string> base;
  if (V->base_genus && !W->base_genus) {
    genus = V->base_genus;
    base = V->base_point;
  } else if (W->base_genus && !V->base_genus) {
    genus = W->base_genus;
    base = W->base_point;
  }
  std::vector<std::string> prov = V->provenance;
  prov.insert(prov.end(), W->provenance.begin(), W->provenance.end());
  prov.push_back("product");
  TowerVariety v{std::move(ring), std::move(k), std::nullopt, genus, base, ProductStep{V, W}, std::move(prov)};
  return detail::finish(std::move(v));
}

/// P(O + O(-L)) over S with section class `name`: xi^2 = -L * xi,
/// integral of xi * beta equals the integral of beta over S,
/// K = -2 xi - L + K_S.
inline TowerPtr proj_bundle_rank2(const TowerPtr& S, const GradedClass& L, const std::string& name = "xi") {
  detail::require_divisor(L, S->ring, "bundle twist");
  if (S->ring.find(name)) throw StructuralError("generator name clash in bundle: '" + name + "'");
  const IntersectionRing& rs = S->ring;
  std::vector<Generator> gens = rs.generators();
  gens.push_back({name, 1});
  const int dim = rs.dim() + 1;
  auto sk = detail::skeleton(gens, dim);
  std::vector<RewriteRule> rules;
  for (const auto& r : rs.rules()) rules.push_back(detail::lift_rule(r, rs, sk));
  const std::size_t xi = gens.size() - 1;
  GradedClass lifted_L = transfer(normalize(L, rs), rs, sk);
  RewriteRule grothendieck{detail::unit_power(gens.size(), xi, 2), {}};
  for (const auto& [m, q] : lifted_L.terms()) {
    Monomial nm = m;
    nm[xi] += 1;
    grothendieck.rhs.add_term(nm, -q);
  }
  rules.push_back(std::move(grothendieck));

  auto ring = IntersectionRing::build(gens, rules, dim, rs.degree_multiplier(), [&](const Monomial& m) {
    if (m[xi] != 1) return Rational(0);
    Monomial base(m.begin(), m.end() - 1);
    if (rs.codim(base) != rs.dim()) return Rational(0);
    return rs.top_values().at(base);
  });

  GradedClass k = normalize(ring.gen(name, -2) - transfer(L, rs, ring) + transfer(S->canonical, rs, ring), ring);
  std::vector<std::string> prov = S->provenance;
  prov.push_back("P(O + O(-L)) with L = " + rs.format(L) + ", section " + name);
  TowerVariety v{std::move(ring), std::move(k), std::nullopt, S->base_genus, S->base_point,
                 BundleStep{S, normalize(L, rs), name}, std::move(prov)};
  return detail::finish(std::move(v));
}

/// Double cover of Y branched along a smooth member of |2L|. Classes on the
/// cover are pullbacks from Y, so the ring is Y's with the degree multiplier
/// doubled; K_X = pi^*(K_Y + L).
inline TowerPtr double_cover(const TowerPtr& Y, const CoverDescriptor& cd) {
  const IntersectionRing& ry = Y->ring;
  detail::require_divisor(cd.half_branch, ry, "half branch class");
  for (const auto& [m, q] : cd.half_branch.terms()) {
    if (!is_integral(2 * q)) throw StructuralError("branch divisor 2L is not integral: " + ry.format(cd.half_branch));
  }
  auto ring = IntersectionRing::with_top_values(ry.generators(), ry.rules(), ry.dim(), ry.degree_multiplier() * 2,
                                                ry.top_values());
  GradedClass k = normalize(Y->canonical + cd.half_branch, ring);
  std::vector<std::string> prov = Y->provenance;
  prov.push_back("double cover branched along 2L, L = " + ry.format(cd.half_branch) +
                 " (smooth branch divisor assumed; base-point freeness not verified)");
  TowerVariety v{std::move(ring), std::move(k), std::nullopt, Y->base_genus, Y->base_point,
                 CoverStep{Y, normalize(cd.half_branch, ry)}, std::move(prov)};
  return detail::finish(std::move(v));
}

/// Restriction of a class to the general fiber: the base point class restricts
/// to zero, every other generator is kept by name.
inline GradedClass restrict_to_fiber(const GradedClass& c, const TowerVariety& total, const TowerVariety& fiber) {
  return transfer(c, total.ring, fiber.ring, /*drop_missing=*/true);
}

/// The general fiber of the map to the distinguished base curve, rebuilt from
/// the construction trace with the base curve replaced by a point.
inline TowerPtr fiber_restriction(const TowerPtr& X) {
  if (!X->base_point) throw StructuralError("tower has no distinguished base curve");
  struct Visitor {
    const TowerPtr& self;
    TowerPtr operator()(const PointStep&) const { return self; }
    TowerPtr operator()(const CurveStep&) const { return point(); }
    TowerPtr operator()(const AbelianStep&) const { return self; }
    TowerPtr operator()(const ProjectiveSpaceStep&) const { return self; }
    TowerPtr operator()(const ProductStep& s) const {
      TowerPtr l = s.left->base_point ? fiber_restriction(s.left) : s.left;
      TowerPtr r = s.right->base_point ? fiber_restriction(s.right) : s.right;
      if (std::holds_alternative<PointStep>(l->step)) return r;
      if (std::holds_alternative<PointStep>(r->step)) return l;
      return product(l, r);
    }
    TowerPtr operator()(const BundleStep& s) const {
      TowerPtr base = fiber_restriction(s.base);
      return proj_bundle_rank2(base, restrict_to_fiber(s.twist, *s.base, *base), s.section);
    }
    TowerPtr operator()(const CoverStep& s) const {
      TowerPtr base = fiber_restriction(s.base);
      return double_cover(base, {restrict_to_fiber(s.half_branch, *s.base, *base)});
    }
  };
  return std::visit(Visitor{X}, X->step);
}

}  // namespace slopelab
