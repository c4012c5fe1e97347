#pragma once

// Exact graded commutative rings presented by monomial rewrite rules, with a
// top-degree integration map. All objects are immutable values once built.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace slopelab {

struct Generator {
  std::string name;
  int codim = 1;
};

/// Exponent vector indexed by generator position in the owning ring.
using Monomial = std::vector<unsigned>;

/// Degree-lexicographic order: weighted degree first, then exponents compared
/// from the last-declared generator down to the first, so generators declared
/// later (bundle sections) dominate the base generators they are rewritten to.
class DegLexOrder {
 public:
  DegLexOrder() = default;
  explicit DegLexOrder(std::vector<int> codims) : codims_(std::move(codims)) {}

  int degree(const Monomial& m) const {
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<int>(m[i]) * codims_[i];
    return d;
  }

  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = degree(a), db = degree(b);
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }

 private:
  std::vector<int> codims_;
};

/// Finite rational combination of monomials. Terms with zero coefficient are
/// never stored, so the zero class has no terms.
class GradedClass {
 public:
  using Terms = std::map<Monomial, Rational>;

  GradedClass() = default;
  explicit GradedClass(Terms terms) {
    for (auto& [m, c] : terms) {
      if (c != 0) terms_.emplace(m, c);
    }
  }

  static GradedClass monomial(Monomial m, Rational coeff = 1) {
    GradedClass c;
    if (coeff != 0) c.terms_.emplace(std::move(m), std::move(coeff));
    return c;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  GradedClass& operator+=(const GradedClass& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedClass& operator-=(const GradedClass& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  GradedClass& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend GradedClass operator+(GradedClass a, const GradedClass& b) { return a += b; }
  friend GradedClass operator-(GradedClass a, const GradedClass& b) { return a -= b; }
  friend GradedClass operator-(GradedClass a) { return a *= Rational(-1); }
  friend GradedClass operator*(const Rational& s, GradedClass a) { return a *= s; }
  friend GradedClass operator*(GradedClass a, const Rational& s) { return a *= s; }
  friend bool operator==(const GradedClass& a, const GradedClass& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// lhs -> rhs with rhs homogeneous of the same codimension and strictly
/// smaller than lhs in the degree-lex order.
struct RewriteRule {
  Monomial lhs;
  GradedClass rhs;
};

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline bool divides(const Monomial& d, const Monomial& m) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > m[i]) return false;
  }
  return true;
}

inline Monomial monomial_quotient(const Monomial& m, const Monomial& d) {
  Monomial r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = m[i] - d[i];
  return r;
}

class IntersectionRing {
 public:
  using TopValues = std::map<Monomial, Rational>;
  using TopEvaluator = std::function<Rational(const Monomial&)>;

  /// Validates the presentation and tabulates the integral of every
  /// normal-form monomial of codimension `dim` through `evaluate`.
  static IntersectionRing build(std::vector<Generator> generators, std::vector<RewriteRule> rules, int dim,
                                Rational degree_multiplier, const TopEvaluator& evaluate) {
    IntersectionRing r(std::move(generators), std::move(rules), dim, std::move(degree_multiplier));
    for (const auto& m : r.normal_monomials_of_codim(dim)) r.top_values_.emplace(m, evaluate(m));
    return r;
  }

  /// Takes an explicit table; every normal-form top monomial must be present.
  static IntersectionRing with_top_values(std::vector<Generator> generators, std::vector<RewriteRule> rules,
                                          int dim, Rational degree_multiplier, TopValues top_values) {
    IntersectionRing r(std::move(generators), std::move(rules), dim, std::move(degree_multiplier));
    for (const auto& m : r.normal_monomials_of_codim(dim)) {
      if (!top_values.count(m)) {
        throw StructuralError("missing top value for " + r.format_monomial(m));
      }
    }
    for (auto& [m, v] : top_values) {
      if (r.order_.degree(m) != dim || !r.is_normal(m)) {
        throw StructuralError("top value given for non-top or reducible monomial " + r.format_monomial(m));
      }
    }
    r.top_values_ = std::move(top_values);
    return r;
  }

  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const std::vector<RewriteRule>& rules() const noexcept { return rules_; }
  int dim() const noexcept { return dim_; }
  const Rational& degree_multiplier() const noexcept { return degree_multiplier_; }
  const TopValues& top_values() const noexcept { return top_values_; }
  const DegLexOrder& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return generators_.size(); }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw StructuralError("unknown generator '" + name + "'");
    return *i;
  }

  int codim(const Monomial& m) const { return order_.degree(m); }

  GradedClass zero() const { return {}; }
  GradedClass one() const { return GradedClass::monomial(Monomial(size(), 0)); }
  GradedClass gen(const std::string& name, Rational coeff = 1) const {
    Monomial m(size(), 0);
    m[index_of(name)] = 1;
    return GradedClass::monomial(std::move(m), std::move(coeff));
  }
  GradedClass constant(const Rational& q) const { return GradedClass::monomial(Monomial(size(), 0), q); }

  bool is_normal(const Monomial& m) const {
    if (codim(m) > dim_) return false;
    return std::none_of(rules_.begin(), rules_.end(), [&](const RewriteRule& r) { return divides(r.lhs, m); });
  }

  /// All exponent vectors of weighted degree exactly `degree`.
  std::vector<Monomial> monomials_of_codim(int degree) const {
    std::vector<Monomial> out;
    Monomial cur(size(), 0);
    enumerate(0, degree, cur, out);
    return out;
  }

  std::vector<Monomial> normal_monomials_of_codim(int degree) const {
    auto all = monomials_of_codim(degree);
    std::vector<Monomial> out;
    for (auto& m : all) {
      if (is_normal(m)) out.push_back(std::move(m));
    }
    return out;
  }

  std::string format_monomial(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += generators_[i].name;
      if (m[i] > 1) s += '^' + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
  }

  /// Human-readable rendering, terms in decreasing degree-lex order.
  std::string format(const GradedClass& c) const {
    if (c.is_zero()) return "0";
    std::vector<std::pair<Monomial, Rational>> terms(c.terms().begin(), c.terms().end());
    std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) { return order_(b.first, a.first); });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, q] : terms) {
      Rational coeff = q;
      if (first) {
        if (coeff < 0) {
          os << '-';
          coeff = -coeff;
        }
      } else {
        os << (coeff < 0 ? " - " : " + ");
        if (coeff < 0) coeff = -coeff;
      }
      first = false;
      bool unit_mon = std::all_of(m.begin(), m.end(), [](unsigned e) { return e == 0; });
      if (unit_mon) {
        os << to_string(coeff);
      } else if (coeff == 1) {
        os << format_monomial(m);
      } else {
        os << to_string(coeff) << '*' << format_monomial(m);
      }
    }
    return os.str();
  }

 private:
  IntersectionRing(std::vector<Generator> generators, std::vector<RewriteRule> rules, int dim,
                   Rational degree_multiplier)
      : generators_(std::move(generators)),
        rules_(std::move(rules)),
        dim_(dim),
        degree_multiplier_(std::move(degree_multiplier)) {
    std::vector<int> codims;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const auto& g = generators_[i];
      if (g.codim < 1) throw StructuralError("generator '" + g.name + "' must have codim >= 1");
      if (!index_.emplace(g.name, i).second) throw StructuralError("duplicate generator '" + g.name + "'");
      codims.push_back(g.codim);
    }
    order_ = DegLexOrder(std::move(codims));
    if (dim_ < 0) throw StructuralError("negative dimension");
    if (degree_multiplier_ <= 0) throw StructuralError("degree multiplier must be positive");
    for (const auto& r : rules_) check_rule(r);
  }

  void check_rule(const RewriteRule& r) const {
    if (r.lhs.size() != size()) throw StructuralError("rule lhs has wrong arity");
    int d = order_.degree(r.lhs);
    if (d == 0) throw StructuralError("rule lhs must not be the unit monomial");
    for (const auto& [m, c] : r.rhs.terms()) {
      if (m.size() != size()) throw StructuralError("rule rhs has wrong arity");
      if (order_.degree(m) != d) {
        throw StructuralError("rule " + format_monomial(r.lhs) + " -> ... is not homogeneous");
      }
      if (!order_(m, r.lhs)) {
        throw StructuralError("rule " + format_monomial(r.lhs) + " is not decreasing at " + format_monomial(m));
      }
    }
  }

  void enumerate(std::size_t i, int remaining, Monomial& cur, std::vector<Monomial>& out) const {
    if (i == size()) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    int c = generators_[i].codim;
    for (int e = 0; e * c <= remaining; ++e) {
      cur[i] = static_cast<unsigned>(e);
      enumerate(i + 1, remaining - e * c, cur, out);
    }
    cur[i] = 0;
  }

  std::vector<Generator> generators_;
  std::vector<RewriteRule> rules_;
  int dim_ = 0;
  Rational degree_multiplier_ = 1;
  TopValues top_values_;
  DegLexOrder order_;
  std::unordered_map<std::string, std::size_t> index_;
};

namespace detail {

inline void check_arity(const GradedClass& c, const IntersectionRing& R) {
  for (const auto& [m, q] : c.terms()) {
    if (m.size() != R.size()) throw StructuralError("class uses generators outside the ring");
  }
}

}  // namespace detail

/// Normal form of `c`, applying the first rule (in `rule_priority` order) whose
/// lhs divides the current leading monomial. Terms of codim > dim vanish.
inline GradedClass normalize(const GradedClass& c, const IntersectionRing& R,
                             std::span<const std::size_t> rule_priority) {
  detail::check_arity(c, R);
  const auto& rules = R.rules();
  std::map<Monomial, Rational, DegLexOrder> pending(R.order());
  for (const auto& [m, q] : c.terms()) {
    if (R.codim(m) <= R.dim()) pending[m] += q;
  }
  GradedClass out;
  while (!pending.empty()) {
    auto last = std::prev(pending.end());
    Monomial m = last->first;
    Rational q = last->second;
    pending.erase(last);
    if (q == 0) continue;
    const RewriteRule* hit = nullptr;
    for (std::size_t k : rule_priority) {
      if (divides(rules[k].lhs, m)) {
        hit = &rules[k];
        break;
      }
    }
    if (!hit) {
      out.add_term(m, q);
      continue;
    }
    Monomial rest = monomial_quotient(m, hit->lhs);
    for (const auto& [rm, rq] : hit->rhs.terms()) {
      Monomial nm = monomial_product(rest, rm);
      if (R.codim(nm) > R.dim()) continue;
      auto [it, inserted] = pending.emplace(std::move(nm), q * rq);
      if (!inserted) it->second += q * rq;
    }
  }
  return out;
}

inline GradedClass normalize(const GradedClass& c, const IntersectionRing& R) {
  std::vector<std::size_t> order(R.rules().size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return normalize(c, R, order);
}

inline GradedClass mul(const GradedClass& a, const GradedClass& b, const IntersectionRing& R) {
  detail::check_arity(a, R);
  detail::check_arity(b, R);
  GradedClass raw;
  for (const auto& [ma, qa] : a.terms()) {
    for (const auto& [mb, qb] : b.terms()) {
      Monomial m = monomial_product(ma, mb);
      if (R.codim(m) <= R.dim()) raw.add_term(m, qa * qb);
    }
  }
  return normalize(raw, R);
}

inline GradedClass power(const GradedClass& a, unsigned k, const IntersectionRing& R) {
  GradedClass result = R.one();
  GradedClass base = normalize(a, R);
  while (k > 0) {
    if (k & 1u) result = mul(result, base, R);
    k >>= 1u;
    if (k > 0) base = mul(base, base, R);
  }
  return result;
}

/// Sum over codim-dim terms of coefficient times the tabulated integral, scaled
/// by the covering-degree multiplier. Lower-codimension terms integrate to 0.
inline Rational integrate(const GradedClass& c, const IntersectionRing& R) {
  GradedClass n = normalize(c, R);
  Rational total = 0;
  for (const auto& [m, q] : n.terms()) {
    if (R.codim(m) != R.dim()) continue;
    total += q * R.top_values().at(m);
  }
  return total * R.degree_multiplier();
}

/// Codimension of a homogeneous class; nullopt for zero or mixed classes.
inline std::optional<int> homogeneous_codim(const GradedClass& c, const IntersectionRing& R) {
  std::optional<int> d;
  for (const auto& [m, q] : c.terms()) {
    int k = R.codim(m);
    if (d && *d != k) return std::nullopt;
    d = k;
  }
  return d;
}

/// Re-expresses `c` from ring `from` in ring `to`, matching generators by name.
/// Monomials that involve a generator missing from `to` are dropped, which is
/// restriction along the zero section of those generators.
inline GradedClass transfer(const GradedClass& c, const IntersectionRing& from, const IntersectionRing& to,
                            bool drop_missing = false) {
  detail::check_arity(c, from);
  std::vector<std::optional<std::size_t>> map(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) map[i] = to.find(from.generators()[i].name);
  GradedClass out;
  for (const auto& [m, q] : c.terms()) {
    Monomial nm(to.size(), 0);
    bool keep = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!map[i]) {
        if (!drop_missing) {
          throw StructuralError("generator '" + from.generators()[i].name + "' is not in the target ring");
        }
        keep = false;
        break;
      }
      nm[*map[i]] = m[i];
    }
    if (keep) out.add_term(nm, q);
  }
  return normalize(out, to);
}

}  // namespace slopelab
