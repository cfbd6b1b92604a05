#pragma once

// Sparse multivariate polynomials with exact nonnegative rational coefficients.
//
// Terms are kept in graded-lex order; zero coefficients are never stored, so
// the key set is exactly the support. The zero polynomial is the empty map.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "logcap/multi_index.hpp"
#include "logcap/rational.hpp"

namespace logcap {

class SparsePoly {
 public:
  using TermMap = std::map<MultiIndex, Rational, GrlexLess>;

  explicit SparsePoly(std::size_t num_vars = 1) : num_vars_(num_vars) {
    if (num_vars == 0) throw std::invalid_argument("a polynomial needs at least one variable");
  }

  static SparsePoly constant(std::size_t num_vars, const Rational& c) {
    SparsePoly p(num_vars);
    p.add_term(MultiIndex(num_vars), c);
    return p;
  }

  static SparsePoly monomial(const MultiIndex& exponent, const Rational& c = 1) {
    SparsePoly p(exponent.size());
    p.add_term(exponent, c);
    return p;
  }

  static SparsePoly variable(std::size_t num_vars, std::size_t i) {
    return monomial(MultiIndex::unit(num_vars, i));
  }

  /// sum_i coeffs[i] x_i
  static SparsePoly linear_form(std::span<const Rational> coeffs) {
    SparsePoly p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term(MultiIndex::unit(coeffs.size(), i), coeffs[i]);
    return p;
  }

  /// Univariate polynomial sum_i coeffs[i] t^i.
  static SparsePoly univariate(std::span<const Rational> coeffs) {
    SparsePoly p(1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term(MultiIndex{static_cast<int>(i)}, coeffs[i]);
    return p;
  }

  /// Adds c x^R. Negative coefficients are rejected; zero is a no-op.
  SparsePoly& add_term(const MultiIndex& exponent, const Rational& c) {
    if (exponent.size() != num_vars_)
      throw DimensionError("term has " + std::to_string(exponent.size()) + " exponents, polynomial has " +
                           std::to_string(num_vars_) + " variables");
    if (sgn(c) < 0) throw std::invalid_argument("coefficients must be nonnegative");
    if (sgn(c) == 0) return *this;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) it->second += c;
    return *this;
  }

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const MultiIndex& exponent) const {
    exponent.require_same_size(MultiIndex(num_vars_));
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  std::vector<MultiIndex> support() const {
    std::vector<MultiIndex> out;
    out.reserve(terms_.size());
    for (const auto& [r, c] : terms_) out.push_back(r);
    return out;
  }

  /// Max |R|_1 over the support; -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }

  /// Max exponent of x_i over the support (0 for the zero polynomial).
  int degree_in(std::size_t i) const {
    int d = 0;
    for (const auto& [r, c] : terms_) d = std::max(d, r.at(i));
    return d;
  }

  std::vector<int> degrees() const {
    std::vector<int> out(num_vars_, 0);
    for (const auto& [r, c] : terms_)
      for (std::size_t i = 0; i < num_vars_; ++i) out[i] = std::max(out[i], r[i]);
    return out;
  }

  /// Common degree when every term has the same |R|_1. The zero polynomial has none.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.begin()->first.total();
    for (const auto& [r, c] : terms_)
      if (r.total() != d) return std::nullopt;
    return d;
  }
  bool is_homogeneous() const { return homogeneous_degree().has_value(); }

  /// True iff every exponent is 0 or 1.
  bool is_multilinear() const {
    for (const auto& [r, c] : terms_)
      for (int v : r)
        if (v > 1) return false;
    return true;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  SparsePoly operator+(const SparsePoly& other) const {
    require_same_vars(other);
    SparsePoly out(*this);
    for (const auto& [r, c] : other.terms_) out.add_term(r, c);
    return out;
  }

  SparsePoly scaled(const Rational& s) const {
    if (sgn(s) < 0) throw std::invalid_argument("scaling by a negative number");
    SparsePoly out(num_vars_);
    if (sgn(s) == 0) return out;
    for (const auto& [r, c] : terms_) out.terms_.emplace(r, c * s);
    return out;
  }

  SparsePoly operator*(const SparsePoly& other) const;

  void require_same_vars(const SparsePoly& other) const {
    if (other.num_vars_ != num_vars_)
      throw DimensionError("polynomials have " + std::to_string(num_vars_) + " and " +
                           std::to_string(other.num_vars_) + " variables");
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += to_string(it->second);
      for (std::size_t i = 0; i < num_vars_; ++i) {
        int e = it->first[i];
        if (e == 0) continue;
        out += "*x" + std::to_string(i + 1);
        if (e > 1) out += "^" + std::to_string(e);
      }
    }
    return out;
  }

 private:
  std::size_t num_vars_;
  TermMap terms_;
};

inline SparsePoly multiply(const SparsePoly& p, const SparsePoly& q) {
  p.require_same_vars(q);
  SparsePoly out(p.num_vars());
  for (const auto& [rp, cp] : p.terms())
    for (const auto& [rq, cq] : q.terms()) out.add_term(rp + rq, cp * cq);
  return out;
}

inline SparsePoly SparsePoly::operator*(const SparsePoly& other) const { return multiply(*this, other); }

inline SparsePoly power(const SparsePoly& p, unsigned n) {
  SparsePoly result = SparsePoly::constant(p.num_vars(), 1);
  SparsePoly base = p;
  while (n) {
    if (n & 1u) result = multiply(result, base);
    n >>= 1u;
    if (n) base = multiply(base, base);
  }
  return result;
}

inline void require_positive_point(const SparsePoly& p, std::span<const double> x) {
  if (x.size() != p.num_vars())
    throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, polynomial has " +
                         std::to_string(p.num_vars()) + " variables");
  for (double v : x)
    if (!(v > 0.0)) throw std::domain_error("evaluation point must be strictly positive");
}

/// p(x) for x > 0, Neumaier-compensated over the terms.
inline double evaluate(const SparsePoly& p, std::span<const double> x) {
  require_positive_point(p, x);
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& [r, c] : p.terms()) {
    double term = to_double(c);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (r[i]) term *= std::pow(x[i], r[i]);
    double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

/// log p(e^{y_1}, ..., e^{y_m}) via a max-shifted log-sum-exp.
inline double log_evaluate(const SparsePoly& p, std::span<const double> y) {
  if (y.size() != p.num_vars())
    throw DimensionError("point has " + std::to_string(y.size()) + " coordinates, polynomial has " +
                         std::to_string(p.num_vars()) + " variables");
  if (p.is_zero()) throw std::domain_error("log of the zero polynomial");
  std::vector<double> exps;
  exps.reserve(p.size());
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& [r, c] : p.terms()) {
    double e = log_rational(c);
    for (std::size_t i = 0; i < y.size(); ++i) e += r[i] * y[i];
    exps.push_back(e);
    top = std::max(top, e);
  }
  double acc = 0.0;
  for (double e : exps) acc += std::exp(e - top);
  return top + std::log(acc);
}

/// (d/dx_1)^{c_1} ... (d/dx_m)^{c_m} p, exactly. May be the zero polynomial.
inline SparsePoly partial_derivative(const SparsePoly& p, const MultiIndex& c) {
  MultiIndex(p.num_vars()).require_same_size(c);
  SparsePoly out(p.num_vars());
  for (const auto& [r, coef] : p.terms()) {
    if (!c.divides(r)) continue;
    Integer falling = 1;
    for (std::size_t i = 0; i < r.size(); ++i)
      for (int k = 0; k < c[i]; ++k) falling *= (r[i] - k);
    out.add_term(r - c, coef * Rational(falling));
  }
  return out;
}

/// Der_p(R) = a_R * prod r_i!, the mixed derivative of order R at the origin.
inline Rational der_at_zero(const SparsePoly& p, const MultiIndex& exponent) {
  Rational a = p.coefficient(exponent);
  if (sgn(a) == 0) return a;
  Integer f = 1;
  for (int r : exponent) f *= factorial(static_cast<unsigned long>(r));
  return a * Rational(f);
}

/// p_(R): substitutes x_i <- (sum of its own block of r_i fresh variables), in |R|_1 variables.
inline SparsePoly split_variables(const SparsePoly& p, const MultiIndex& target) {
  MultiIndex(p.num_vars()).require_same_size(target);
  if (target.is_zero()) throw std::invalid_argument("split_variables needs a nonzero target");
  const std::size_t n = static_cast<std::size_t>(target.total());

  std::vector<SparsePoly> block_sums;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    SparsePoly s(n);
    for (int k = 0; k < target[i]; ++k) s.add_term(MultiIndex::unit(n, offset + k), 1);
    offset += static_cast<std::size_t>(target[i]);
    block_sums.push_back(std::move(s));
  }

  // Cache powers of each block sum.
  std::vector<std::vector<SparsePoly>> powers(target.size());
  auto block_power = [&](std::size_t i, int e) -> const SparsePoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(SparsePoly::constant(n, 1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(multiply(cache.back(), block_sums[i]));
    return cache[e];
  };

  SparsePoly out(n);
  for (const auto& [r, c] : p.terms()) {
    bool vanishes = false;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] > 0 && target[i] == 0) vanishes = true;
    if (vanishes) continue;
    SparsePoly term = SparsePoly::constant(n, c);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i]) term = multiply(term, block_power(i, r[i]));
    out = out + term;
  }
  return out;
}

/// y^n r(x/y) for a univariate r, as a homogeneous polynomial in (x, y).
inline SparsePoly homogenize(const SparsePoly& r, int n) {
  if (r.num_vars() != 1) throw DimensionError("homogenize expects a univariate polynomial");
  if (n < r.total_degree()) throw std::invalid_argument("homogenization degree below deg(r)");
  SparsePoly out(2);
  for (const auto& [e, c] : r.terms()) out.add_term(MultiIndex{e[0], n - e[0]}, c);
  return out;
}

/// sum_R a_R b_R for homogeneous p, q of the same degree.
inline Rational inner_product(const SparsePoly& p, const SparsePoly& q) {
  p.require_same_vars(q);
  auto dp = p.homogeneous_degree();
  auto dq = q.homogeneous_degree();
  if (!p.is_zero() && !dp) throw std::invalid_argument("inner_product: first argument is not homogeneous");
  if (!q.is_zero() && !dq) throw std::invalid_argument("inner_product: second argument is not homogeneous");
  if (dp && dq && *dp != *dq)
    throw std::invalid_argument("inner_product: degrees " + std::to_string(*dp) + " and " + std::to_string(*dq) +
                                " differ");
  Rational sum = 0;
  const auto& small = p.size() <= q.size() ? p : q;
  const auto& large = p.size() <= q.size() ? q : p;
  for (const auto& [r, c] : small.terms()) {
    auto it = large.terms().find(r);
    if (it != large.terms().end()) sum += c * it->second;
  }
  return sum;
}

/// prod x_i^shift * p(x) * q(1/x). Requires shift >= deg_q(i) for every i.
inline SparsePoly reflected_product(const SparsePoly& p, const SparsePoly& q, int shift) {
  p.require_same_vars(q);
  const std::size_t m = p.num_vars();
  for (std::size_t i = 0; i < m; ++i)
    if (q.degree_in(i) > shift) throw std::invalid_argument("reflected_product: shift below the degree of q");
  SparsePoly out(m);
  std::vector<int> e(m);
  for (const auto& [rp, cp] : p.terms())
    for (const auto& [rq, cq] : q.terms()) {
      for (std::size_t i = 0; i < m; ++i) e[i] = rp[i] - rq[i] + shift;
      out.add_term(MultiIndex(e), cp * cq);
    }
  return out;
}

/// F = prod x_i^n p(x) q(1/x) for p, q in Hom+(m, n); F is in Hom+(m, nm) and its
/// (n,...,n) coefficient is <p, q>.
inline SparsePoly correlator(const SparsePoly& p, const SparsePoly& q) {
  p.require_same_vars(q);
  auto dp = p.homogeneous_degree();
  auto dq = q.homogeneous_degree();
  if (!dp || !dq) throw std::invalid_argument("correlator needs nonzero homogeneous inputs");
  if (*dp != *dq) throw std::invalid_argument("correlator needs inputs of equal degree");
  return reflected_product(p, q, *dp);
}

/// Terms of p whose exponents satisfy keep(R).
template <class Pred>
SparsePoly filter_terms(const SparsePoly& p, Pred&& keep) {
  SparsePoly out(p.num_vars());
  for (const auto& [r, c] : p.terms())
    if (keep(r)) out.add_term(r, c);
  return out;
}

}  // namespace logcap
