#pragma once

// Dense univariate polynomials over Q (signed coefficients allowed). Used for
// Sturm sequences and exact derivative evaluation at rational points.

#include <stdexcept>
#include <utility>
#include <vector>

#include "logcap/rational.hpp"
#include "logcap/sparse_poly.hpp"

namespace logcap {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly from_sparse(const SparsePoly& p) {
    if (p.num_vars() != 1) throw DimensionError("expected a univariate polynomial");
    std::vector<Rational> c(static_cast<std::size_t>(std::max(0, p.total_degree() + 1)), Rational(0));
    for (const auto& [e, a] : p.terms()) c[static_cast<std::size_t>(e[0])] = a;
    return UniPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  UniPoly derivative(unsigned k = 1) const {
    std::vector<Rational> d = c_;
    for (unsigned step = 0; step < k; ++step) {
      if (d.empty()) break;
      std::vector<Rational> nd(d.size() - 1);
      for (std::size_t i = 1; i < d.size(); ++i) nd[i - 1] = d[i] * static_cast<long>(i);
      d = std::move(nd);
    }
    return UniPoly(std::move(d));
  }

  UniPoly operator-() const {
    UniPoly out(*this);
    for (auto& v : out.c_) v = -v;
    return out;
  }

  /// Quotient and remainder of *this by d.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = c_;
    int qdeg = degree() - d.degree();
    if (qdeg < 0) return {UniPoly(), *this};
    std::vector<Rational> q(static_cast<std::size_t>(qdeg + 1), Rational(0));
    for (int k = qdeg; k >= 0; --k) {
      Rational f = rem[static_cast<std::size_t>(k + d.degree())] / d.leading();
      q[static_cast<std::size_t>(k)] = f;
      if (sgn(f) == 0) continue;
      for (int j = 0; j <= d.degree(); ++j) rem[static_cast<std::size_t>(k + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(d.degree()));
    return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    UniPoly out(*this);
    Rational l = leading();
    for (auto& v : out.c_) v /= l;
    return out;
  }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Sturm chain p, p', -rem(p_{k-1}, p_k), ...
inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    auto r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

namespace detail {
inline int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}
inline int sign_at_pos_inf(const UniPoly& q) { return sgn(q.leading()); }
inline int sign_at_neg_inf(const UniPoly& q) { return q.degree() % 2 == 0 ? sgn(q.leading()) : -sgn(q.leading()); }
}  // namespace detail

/// Number of distinct real roots of a square-free p in (a, +inf) when a is given, else on all of R.
inline int count_real_roots(const UniPoly& squarefree, const Rational* above = nullptr) {
  if (squarefree.degree() <= 0) return 0;
  auto chain = sturm_chain(squarefree);
  std::vector<int> lo, hi;
  for (const auto& q : chain) {
    lo.push_back(above ? sgn(q(*above)) : detail::sign_at_neg_inf(q));
    hi.push_back(detail::sign_at_pos_inf(q));
  }
  return detail::sign_changes(lo) - detail::sign_changes(hi);
}

/// p / gcd(p, p').
inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p;
  UniPoly g = gcd(p, p.derivative());
  return p.divmod(g).first;
}

}  // namespace logcap
