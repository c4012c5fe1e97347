#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <slopelab/slopelab.hpp>

namespace testing_support {

using namespace slopelab;

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  return Rational(num(rng), den(rng));
}

/// Random class with up to `terms` monomials of codim <= dim (not normalized).
inline GradedClass random_class(const IntersectionRing& R, std::mt19937_64& rng, int terms = 5,
                                std::optional<int> codim = std::nullopt) {
  GradedClass c;
  std::uniform_int_distribution<int> pick_codim(0, R.dim());
  for (int t = 0; t < terms; ++t) {
    int d = codim ? *codim : pick_codim(rng);
    auto ms = R.monomials_of_codim(d);
    if (ms.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    c.add_term(ms[pick(rng)], random_rational(rng));
  }
  return c;
}

/// Random codim-1 class with small integer coefficients.
inline GradedClass random_divisor(const IntersectionRing& R, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  GradedClass c;
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (R.generators()[i].codim != 1) continue;
    Monomial m(R.size(), 0);
    m[i] = 1;
    c.add_term(m, coeff(rng));
  }
  return c;
}

inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

/// Split a class into single-generator factors (one per exponent unit) and
/// multiply them back in a random order.
inline GradedClass multiply_in_random_order(const Monomial& m, const Rational& q, const IntersectionRing& R,
                                            std::mt19937_64& rng) {
  std::vector<std::size_t> factors;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (unsigned k = 0; k < m[i]; ++k) factors.push_back(i);
  }
  std::shuffle(factors.begin(), factors.end(), rng);
  GradedClass acc = R.constant(q);
  for (std::size_t i : factors) acc = mul(acc, R.gen(R.generators()[i].name), R);
  return acc;
}

inline FamilyParams params(Family f) {
  FamilyParams p;
  p.family = f;
  return p;
}

}  // namespace testing_support
