#pragma once

// Independent integration route: the rewrite rules are used only as ideal
// generators. The integral of every monomial of top codimension is solved for
// from the linear system
//
//   phi(u * lhs) - phi(u * rhs) = 0      for every rule and multiplier u
//   phi(m) = top_value(m)                for every tabulated normal monomial
//
// by exact Gaussian elimination over the full monomial basis. No normal form
// is ever computed.

#include <cstddef>
#include <map>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "ring.hpp"

namespace slopelab {

inline constexpr std::size_t kDefaultOracleCap = 10'000;

/// Number of exponent vectors of weighted degree `degree`, saturating at cap + 1.
inline std::size_t count_monomials(const IntersectionRing& R, int degree, std::size_t cap) {
  std::vector<std::size_t> ways(static_cast<std::size_t>(degree) + 1, 0);
  ways[0] = 1;
  for (const auto& g : R.generators()) {
    for (int d = g.codim; d <= degree; ++d) {
      ways[d] = std::min(cap + 1, ways[d] + ways[d - g.codim]);
    }
  }
  return ways[degree];
}

class IntegrationOracle {
 public:
  explicit IntegrationOracle(const IntersectionRing& R, std::size_t cap = kDefaultOracleCap) : ring_(&R) {
    const int dim = R.dim();
    std::size_t count = count_monomials(R, dim, cap);
    if (count > cap) {
      throw CapacityError("oracle enumeration exceeds cap", count, cap);
    }
    basis_ = R.monomials_of_codim(dim);
    for (std::size_t i = 0; i < basis_.size(); ++i) column_.emplace(basis_[i], i);
    solve();
  }

  /// Integral of any class over the ring, including non-normal monomials.
  Rational operator()(const GradedClass& c) const {
    Rational total = 0;
    for (const auto& [m, q] : c.terms()) {
      if (m.size() != ring_->size()) throw StructuralError("class uses generators outside the ring");
      if (ring_->codim(m) != ring_->dim()) continue;
      total += q * value_[column_.at(m)];
    }
    return total * ring_->degree_multiplier();
  }

  std::size_t basis_size() const noexcept { return basis_.size(); }

 private:
  using Row = std::map<std::size_t, Rational>;  // column -> coefficient
  struct Equation {
    Row row;
    Rational rhs;
  };

  void solve() {
    const auto& R = *ring_;
    const int dim = R.dim();
    for (const auto& rule : R.rules()) {
      int k = R.codim(rule.lhs);
      if (k > dim) continue;
      for (const auto& u : R.monomials_of_codim(dim - k)) {
        Equation e;
        add(e.row, column_.at(monomial_product(u, rule.lhs)), Rational(1));
        for (const auto& [m, q] : rule.rhs.terms()) add(e.row, column_.at(monomial_product(u, m)), -q);
        insert(std::move(e));
      }
    }
    for (const auto& [m, v] : R.top_values()) {
      Equation e;
      e.row[column_.at(m)] = 1;
      e.rhs = v;
      insert(std::move(e));
    }
    if (pivots_.size() != basis_.size()) {
      throw StructuralError("presentation does not determine all top integrals");
    }
    value_.assign(basis_.size(), Rational(0));
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const auto& [col, eq] = *it;
      Rational acc = eq.rhs;
      for (const auto& [j, a] : eq.row) {
        if (j != col) acc -= a * value_[j];
      }
      value_[col] = acc / eq.row.at(col);
    }
  }

  static void add(Row& row, std::size_t col, const Rational& q) {
    auto& slot = row[col];
    slot += q;
    if (slot == 0) row.erase(col);
  }

  void insert(Equation e) {
    while (!e.row.empty()) {
      auto lead = e.row.begin();
      auto p = pivots_.find(lead->first);
      if (p == pivots_.end()) {
        std::size_t col = lead->first;
        pivots_.emplace(col, std::move(e));
        return;
      }
      Rational factor = lead->second / p->second.row.at(lead->first);
      for (const auto& [j, a] : p->second.row) add(e.row, j, -factor * a);
      e.rhs -= factor * p->second.rhs;
    }
    if (e.rhs != 0) throw StructuralError("inconsistent top-value table");
  }

  const IntersectionRing* ring_;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t> column_;
  std::map<std::size_t, Equation> pivots_;
  std::vector<Rational> value_;
};

/// One-shot form; builds the oracle for `R` on every call.
inline Rational oracle_integrate(const GradedClass& c, const IntersectionRing& R,
                                 std::size_t cap = kDefaultOracleCap) {
  return IntegrationOracle(R, cap)(c);
}

}  // namespace slopelab
