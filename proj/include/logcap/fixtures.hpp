#pragma once

// Named polynomial constructions. Everything tagged constructive is H-stable by
// construction (products of nonnegative linear forms, or derivatives and
// zero-specializations of such products), hence strongly log-concave.

#include <string>
#include <vector>

#include "logcap/permanent.hpp"
#include "logcap/random.hpp"
#include "logcap/sparse_poly.hpp"

namespace logcap {

enum class Provenance { constructive, user };

inline const char* to_string(Provenance p) { return p == Provenance::constructive ? "constructive" : "user"; }

struct Fixture {
  std::string name;
  SparsePoly poly;
  Provenance provenance = Provenance::constructive;
  bool hstable = true;    // H-stable by construction
  std::string stability;  // how stability follows
};

/// sum_i a_i x_i in m variables.
inline SparsePoly linear_form(const std::vector<Rational>& a) { return SparsePoly::linear_form(a); }

/// (x_i + x_j) in m variables.
inline SparsePoly pair_sum(std::size_t m, std::size_t i, std::size_t j) {
  return SparsePoly::variable(m, i) + SparsePoly::variable(m, j);
}

/// (x_1 + x_2)(x_2 + x_3)...(x_{2n-1} + x_{2n})(x_{2n} + x_1) in 2n variables.
inline SparsePoly cycle_polynomial(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cycle_polynomial needs n >= 1");
  const std::size_t m = 2 * n;
  SparsePoly out = SparsePoly::constant(m, 1);
  for (std::size_t i = 0; i < m; ++i) out = multiply(out, pair_sum(m, i, (i + 1) % m));
  return out;
}

/// R0 = (1,...,1), R1 = (2,0,2,0,...), R2 = (0,2,0,2,...) in 2n coordinates.
inline std::vector<MultiIndex> cycle_targets(std::size_t n) {
  std::vector<int> r1(2 * n), r2(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    r1[i] = i % 2 == 0 ? 2 : 0;
    r2[i] = i % 2 == 0 ? 0 : 2;
  }
  return {MultiIndex::ones(2 * n), MultiIndex(r1), MultiIndex(r2)};
}

/// (a . x)^n
inline SparsePoly power_of_linear_form(const std::vector<Rational>& a, unsigned n) {
  return power(SparsePoly::linear_form(a), n);
}

/// (x_1 + ... + x_m)^n
inline SparsePoly power_of_sum(std::size_t m, unsigned n) {
  return power_of_linear_form(std::vector<Rational>(m, Rational(1)), n);
}

/// prod_k (row_k . x)
inline SparsePoly product_of_linear_forms(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) throw std::invalid_argument("product_of_linear_forms: no forms");
  SparsePoly out = SparsePoly::constant(rows.front().size(), 1);
  for (const auto& r : rows) out = multiply(out, SparsePoly::linear_form(r));
  return out;
}

/// e_k(x_1..x_m), the coefficient of y^{m-k} in prod_i (y + x_i).
inline SparsePoly elementary_symmetric(std::size_t m, int k) {
  SparsePoly out(m);
  for_each_composition(m, k, [&](const MultiIndex& r) {
    for (int v : r)
      if (v > 1) return;
    out.add_term(r, 1);
  });
  return out;
}

/// (x+y)^3 (v+w) + (v+w)^3 (x+y): log-concave, Cap = 32, but the (1,1,1,1) derivative vanishes.
inline SparsePoly lifted_t_plus_t_cubed() {
  SparsePoly s = pair_sum(4, 0, 1);
  SparsePoly u = pair_sum(4, 2, 3);
  return multiply(power(s, 3), u) + multiply(power(u, 3), s);
}

/// x1 x2 x3 x4 + (1/4)((x1 x2)^2 + (x3 x4)^2): log(Der) is D-concave but p is not log-concave.
inline SparsePoly d_concave_not_log_concave() {
  SparsePoly p(4);
  p.add_term(MultiIndex{1, 1, 1, 1}, 1);
  p.add_term(MultiIndex{2, 2, 0, 0}, Rational(1, 4));
  p.add_term(MultiIndex{0, 0, 2, 2}, Rational(1, 4));
  return p;
}

/// Random rational matrix with entries k/den, k in [lo, hi].
inline RationalMatrix random_rational_matrix(Rng& rng, std::size_t n, long lo, long hi, long den) {
  RationalMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational v(rng.integer(lo, hi), den);
      v.canonicalize();
      a(i, j) = v;
    }
  return a;
}

/// Biadjacency matrix of a k-regular bipartite graph on n + n vertices: a union of k
/// cyclic shifts, scaled by 1/k so it is doubly stochastic.
inline RationalMatrix regular_bipartite_matrix(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) throw std::invalid_argument("regular_bipartite_matrix: need 1 <= k <= n");
  RationalMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < k; ++s) a(i, (i + s) % n) = Rational(1, static_cast<long>(k));
  return a;
}

/// J_n / n
inline RationalMatrix uniform_doubly_stochastic(std::size_t n) {
  return RationalMatrix(n, Rational(1, static_cast<long>(n)));
}

/// A random product of nonnegative linear forms (m vars, `factors` forms, integer weights in [0, max_weight]).
/// Every form gets at least one positive weight.
inline SparsePoly random_linear_product(Rng& rng, std::size_t m, std::size_t factors, long max_weight) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t k = 0; k < factors; ++k) {
    std::vector<Rational> row(m);
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
      row[i] = rng.integer(0, max_weight);
      if (sgn(row[i]) > 0) any = true;
    }
    if (!any) row[static_cast<std::size_t>(rng.integer(0, static_cast<long>(m) - 1))] = 1;
    rows.push_back(std::move(row));
  }
  return product_of_linear_forms(rows);
}

/// Catalog of constructive H-stable fixtures used across the verification suites.
inline std::vector<Fixture> hstable_fixtures() {
  std::vector<Fixture> out;
  auto add = [&](std::string name, SparsePoly p, std::string why) {
    out.push_back(Fixture{std::move(name), std::move(p), Provenance::constructive, true, std::move(why)});
  };
  add("prod_identity_3", prod_poly(RationalMatrix::identity(3)), "Prod_A of a matrix without zero rows");
  add("prod_uniform_3", prod_poly(uniform_doubly_stochastic(3)), "Prod_A of a matrix without zero rows");
  add("prod_uniform_4", prod_poly(uniform_doubly_stochastic(4)), "Prod_A of a matrix without zero rows");
  add("prod_regular_6_3", prod_poly(regular_bipartite_matrix(6, 3)), "Prod_A of a matrix without zero rows");
  {
    RationalMatrix a(3, std::vector<Rational>{1, 2, 0, 0, 1, 3, 1, 0, 1});
    add("prod_sparse_3", prod_poly(a), "Prod_A of a matrix without zero rows");
  }
  add("cycle_2", cycle_polynomial(2), "product of linear forms");
  add("cycle_3", cycle_polynomial(3), "product of linear forms");
  add("power_sum_2_2", power_of_sum(2, 2), "power of a linear form");
  add("power_sum_3_3", power_of_sum(3, 3), "power of a linear form");
  add("power_x1_2x2_3", power_of_linear_form({1, 2}, 3), "power of a linear form");
  add("power_sum_4_4", power_of_sum(4, 4), "power of a linear form");
  add("pairs_x1x2_x3x4", multiply(pair_sum(4, 0, 1), pair_sum(4, 2, 3)), "product of linear forms");
  add("mixed_forms_3",
      product_of_linear_forms({{1, 1, 0}, {0, 2, 1}, {1, 0, 3}, {1, 1, 1}}), "product of linear forms");
  add("elementary_4_2", elementary_symmetric(4, 2), "derivative of a product of linear forms");
  add("elementary_5_3", elementary_symmetric(5, 3), "derivative of a product of linear forms");
  add("monomial_x1x2x3", SparsePoly::monomial(MultiIndex{1, 1, 1}), "product of linear forms");
  return out;
}

}  // namespace logcap
