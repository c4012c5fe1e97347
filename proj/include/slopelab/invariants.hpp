#pragma once

#include <stdexcept>
#include <string>

#include "bundles.hpp"
#include "families.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "ring.hpp"
#include "verdicts.hpp"

namespace slopelab {

/// Invariants of a constructed family. Intersection numbers come from the
/// ring, f_* omega_{X/B} from the bundle calculus, fiber data from the fiber
/// tower. Internal consistency failures (rank != p_g, a negative summand
/// degree, the relative/absolute identity) throw std::logic_error.
inline InvariantsReport invariants(const FamilyModel& fm) {
  const auto& p = fm.params;
  const auto& X = *fm.total;
  const auto& F = *fm.fiber;
  const unsigned n = static_cast<unsigned>(X.dim());

  InvariantsReport r;
  r.params = p;
  r.n = X.dim();
  r.g = p.g;
  r.warnings = fm.warnings;

  r.k_rel_n = to_integer(integrate(power(fm.relative_class, n, X.ring), X.ring), "K_{X/B}^n");
  r.k_abs_n = to_integer(integrate(power(fm.absolute_class, n, X.ring), X.ring), "K_X^n");

  GradedClass kf = restrict_to_fiber(fm.relative_class, X, F);
  r.kf_top = to_integer(integrate(power(kf, n - 1, F.ring), F.ring), "K_F^{n-1}");
  r.pg_f = geometric_genus(fm.fiber);

  BundleSum push = pushforward_to_base(fm.total);
  const auto& base = *push.carrier();
  for (const auto& s : push.summands()) {
    if (integrate(s.divisor, base.ring) < 0) {
      throw std::logic_error("f_* omega_{X/B} has a summand of negative degree: " + push.describe());
    }
  }
  auto rd = rank_and_degree(push);
  r.rank = rd.rank;
  r.deg_push = rd.degree;
  r.pushforward = push.describe();
  if (r.rank != r.pg_f) {
    throw std::logic_error("rank f_* omega_{X/B} = " + r.rank.str() + " differs from p_g(F) = " + r.pg_f.str());
  }
  if (r.k_abs_n != r.k_rel_n + Integer(r.n) * (2 * r.g - 2) * r.kf_top) {
    throw std::logic_error("K_X^n - K_{X/B}^n != n(2g-2) K_F^{n-1}");
  }

  if (r.n == 3 && fm.irregularity == FiberIrregularity::vanishing) {
    r.chi = chi_total(r.rank, r.deg_push, r.g, fm.irregularity);
  }
  if (r.deg_push != 0) r.slope = Rational(r.k_rel_n, r.deg_push);

  r.verdicts.push_back(verdict_slope_inequality(r));
  if (r.n == 3) {
    for (auto& v : verdict_sharp_bounds(r)) r.verdicts.push_back(std::move(v));
    r.verdicts.push_back(verdict_noether_severi(r));
  }
  return r;
}

inline InvariantsReport invariants(const FamilyParams& p) { return invariants(build_family(p)); }

}  // namespace slopelab
