#pragma once

// Permanents, Prod_A polynomials and Sinkhorn scaling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "logcap/rational.hpp"
#include "logcap/sparse_poly.hpp"

namespace logcap {

template <class T>
class NonnegMatrix {
 public:
  NonnegMatrix() = default;
  explicit NonnegMatrix(std::size_t n, T fill = T(0)) : n_(n), a_(n * n, fill) {}
  NonnegMatrix(std::size_t n, std::vector<T> row_major) : n_(n), a_(std::move(row_major)) {
    if (a_.size() != n * n) throw std::invalid_argument("matrix needs n*n entries");
    for (const auto& v : a_)
      if (v < 0) throw std::invalid_argument("matrix entries must be nonnegative");
  }

  static NonnegMatrix identity(std::size_t n) {
    NonnegMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t n() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool has_zero_row() const {
    for (std::size_t i = 0; i < n_; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < n_; ++j)
        if ((*this)(i, j) > 0) any = true;
      if (!any) return true;
    }
    return false;
  }

  T row_sum(std::size_t i) const {
    T s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j);
    return s;
  }
  T col_sum(std::size_t j) const {
    T s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, j);
    return s;
  }

  /// max over rows and columns of |sum - 1|, as a double.
  double stochastic_deviation() const {
    double dev = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      dev = std::max(dev, std::abs(as_double(row_sum(k)) - 1.0));
      dev = std::max(dev, std::abs(as_double(col_sum(k)) - 1.0));
    }
    return dev;
  }
  bool is_doubly_stochastic(double tol = 1e-9) const { return stochastic_deviation() <= tol; }

  template <class U>
  NonnegMatrix<U> cast() const {
    std::vector<U> out;
    out.reserve(a_.size());
    for (const auto& v : a_) out.push_back(convert<U>(v));
    return NonnegMatrix<U>(n_, std::move(out));
  }

  const std::vector<T>& data() const { return a_; }

 private:
  static double as_double(const T& v) {
    if constexpr (std::is_same_v<T, Rational>)
      return v.get_d();
    else
      return static_cast<double>(v);
  }
  template <class U>
  static U convert(const T& v) {
    if constexpr (std::is_same_v<U, T>)
      return v;
    else if constexpr (std::is_same_v<T, Rational>)
      return static_cast<U>(v.get_d());
    else
      return U(v);
  }

  std::size_t n_ = 0;
  std::vector<T> a_;
};

using RationalMatrix = NonnegMatrix<Rational>;
using RealMatrix = NonnegMatrix<double>;

/// per(A) by Ryser's inclusion-exclusion over column subsets in Gray-code order.
template <class T>
T ryser_permanent(const NonnegMatrix<T>& a) {
  const std::size_t n = a.n();
  constexpr bool exact = std::is_same_v<T, Rational>;
  if (n > (exact ? 14u : 20u))
    throw std::invalid_argument("ryser_permanent: n=" + std::to_string(n) + " exceeds the " +
                                (exact ? std::string("exact limit 14") : std::string("float limit 20")));
  if (n == 0) return T(1);
  std::vector<T> row_sums(n, T(0));
  T total = T(0);
  T comp = T(0);  // Neumaier compensation (stays zero for exact arithmetic)
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    // Flip the column at the lowest set bit of k.
    std::size_t j = static_cast<std::size_t>(__builtin_ctzll(k));
    const std::uint64_t bit = std::uint64_t{1} << j;
    const bool adding = !(gray & bit);
    gray ^= bit;
    for (std::size_t i = 0; i < n; ++i) {
      if (adding)
        row_sums[i] += a(i, j);
      else
        row_sums[i] -= a(i, j);
    }
    T prod = T(1);
    for (std::size_t i = 0; i < n; ++i) prod *= row_sums[i];
    const int popcount = __builtin_popcountll(gray);
    T term = ((n - static_cast<std::size_t>(popcount)) % 2 == 0) ? T(prod) : T(-prod);
    if constexpr (exact) {
      total += term;
    } else {
      T t = total + term;
      if (std::abs(total) >= std::abs(term))
        comp += (total - t) + term;
      else
        comp += (term - t) + total;
      total = t;
    }
  }
  if constexpr (exact)
    return total;
  else
    return total + comp;
}

/// Prod_A(x) = prod_i sum_j A(i,j) x_j.
inline SparsePoly prod_poly(const RationalMatrix& a) {
  if (a.n() == 0) throw std::invalid_argument("prod_poly: empty matrix");
  if (a.has_zero_row()) throw std::invalid_argument("prod_poly: matrix has a zero row");
  const std::size_t n = a.n();
  SparsePoly out = SparsePoly::constant(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = a(i, j);
    out = multiply(out, SparsePoly::linear_form(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bipartite matching on the positive pattern.

namespace detail {

inline bool augment(const std::vector<std::vector<bool>>& adj, std::size_t row, std::vector<int>& match_col,
                    std::vector<bool>& seen, std::size_t skip_row, std::size_t skip_col) {
  const std::size_t n = adj.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (!adj[row][j] || seen[j] || j == skip_col) continue;
    seen[j] = true;
    if (match_col[j] < 0 ||
        augment(adj, static_cast<std::size_t>(match_col[j]), match_col, seen, skip_row, skip_col)) {
      match_col[j] = static_cast<int>(row);
      return true;
    }
  }
  return false;
}

// Perfect matching of the pattern with one row and one column deleted (n to skip none).
inline bool has_perfect_matching(const std::vector<std::vector<bool>>& adj, std::size_t skip_row,
                                 std::size_t skip_col) {
  const std::size_t n = adj.size();
  std::vector<int> match_col(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == skip_row) continue;
    std::vector<bool> seen(n, false);
    if (!augment(adj, i, match_col, seen, skip_row, skip_col)) return false;
  }
  return true;
}

}  // namespace detail

class SinkhornError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SinkhornResult {
  RealMatrix scaled;
  std::vector<double> row_scaling;
  std::vector<double> col_scaling;
  int iterations = 0;
  double deviation = 0.0;
  // Positive entries lying on no positive diagonal; they vanish in the Sinkhorn limit
  // and are zeroed before scaling so the iteration converges geometrically.
  std::vector<std::pair<std::size_t, std::size_t>> dropped_entries;
};

inline bool has_support(const RealMatrix& a) {
  std::vector<std::vector<bool>> adj(a.n(), std::vector<bool>(a.n()));
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) adj[i][j] = a(i, j) > 0;
  return detail::has_perfect_matching(adj, a.n(), a.n());
}

/// Alternating row/column normalization to a doubly stochastic matrix.
inline SinkhornResult sinkhorn(const RealMatrix& a, double tol = 1e-12, int max_iterations = 100000) {
  const std::size_t n = a.n();
  if (n == 0) throw std::invalid_argument("sinkhorn: empty matrix");
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) adj[i][j] = a(i, j) > 0;
  if (!detail::has_perfect_matching(adj, n, n)) {
    std::ostringstream msg;
    msg << "sinkhorn: positive pattern has no perfect matching (zero permanent); pattern rows:";
    for (std::size_t i = 0; i < n; ++i) {
      msg << " ";
      for (std::size_t j = 0; j < n; ++j) msg << (adj[i][j] ? '1' : '0');
    }
    throw SinkhornError(msg.str());
  }

  SinkhornResult res;
  RealMatrix work = a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (adj[i][j] && !detail::has_perfect_matching(adj, i, j)) {
        res.dropped_entries.emplace_back(i, j);
        work(i, j) = 0.0;
      }

  std::vector<double> r(n, 1.0), c(n, 1.0);
  auto current = [&](std::size_t i, std::size_t j) { return r[i] * work(i, j) * c[j]; };
  auto deviation = [&] {
    double dev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double rs = 0.0, cs = 0.0;
      for (std::size_t l = 0; l < n; ++l) {
        rs += current(k, l);
        cs += current(l, k);
      }
      dev = std::max({dev, std::abs(rs - 1.0), std::abs(cs - 1.0)});
    }
    return dev;
  };

  res.deviation = deviation();
  while (res.deviation > tol && res.iterations < max_iterations) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += work(i, j) * c[j];
      r[i] = 1.0 / s;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += r[i] * work(i, j);
      c[j] = 1.0 / s;
    }
    ++res.iterations;
    res.deviation = deviation();
  }
  if (res.deviation > tol)
    throw SinkhornError("sinkhorn: deviation " + std::to_string(res.deviation) + " above tolerance after " +
                        std::to_string(res.iterations) + " iterations");
  res.scaled = RealMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) res.scaled(i, j) = current(i, j);
  res.row_scaling = std::move(r);
  res.col_scaling = std::move(c);
  return res;
}

/// Exact rational approximation of a double (dyadic, lossless).
inline Rational exact_rational(double v) {
  Rational r(v);
  r.canonicalize();
  return r;
}

/// Exactly doubly stochastic rational matrix from a numerically doubly stochastic one.
/// Entries are rounded to dyadic rationals, then the row and column residuals are pushed
/// along a spanning forest of the positive pattern, so zeros stay zero. Fails if a
/// corrected entry would be negative or a component has unequal row and column counts.
inline RationalMatrix rationalize_doubly_stochastic(const RealMatrix& a) {
  const std::size_t n = a.n();
  RationalMatrix out(n);
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = exact_rational(a(i, j));

  // Vertices 0..n-1 are rows, n..2n-1 columns; deficit = 1 - line sum.
  std::vector<Rational> deficit(2 * n, Rational(1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      deficit[i] -= out(i, j);
      deficit[n + j] -= out(i, j);
    }
  std::vector<int> parent(2 * n, -2);
  std::vector<std::size_t> order;
  for (std::size_t root = 0; root < 2 * n; ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    const std::size_t first = order.size();
    order.push_back(root);
    for (std::size_t k = first; k < order.size(); ++k) {
      const std::size_t v = order[k];
      for (std::size_t w = 0; w < n; ++w) {
        const std::size_t u = v < n ? n + w : w;
        const bool edge = v < n ? sgn(out(v, w)) > 0 : sgn(out(w, v - n)) > 0;
        if (edge && parent[u] == -2) {
          parent[u] = static_cast<int>(v);
          order.push_back(u);
        }
      }
    }
  }
  for (std::size_t k = order.size(); k-- > 0;) {
    const std::size_t v = order[k];
    if (parent[v] < 0) {
      if (sgn(deficit[v]) != 0)
        throw std::invalid_argument("rationalize_doubly_stochastic: pattern component is not balanced");
      continue;
    }
    const auto u = static_cast<std::size_t>(parent[v]);
    Rational& entry = v < n ? out(v, u - n) : out(u, v - n);
    entry += deficit[v];
    deficit[u] -= deficit[v];
    deficit[v] = 0;
  }
  for (const auto& v : out.data())
    if (sgn(v) < 0) throw std::invalid_argument("rationalize_doubly_stochastic: residual correction went negative");
  return out;
}

}  // namespace logcap
