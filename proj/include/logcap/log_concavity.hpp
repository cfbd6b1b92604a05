#pragma once

// Log-concave sequences, n-Newton polynomials and strong log-concavity checks.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "logcap/random.hpp"
#include "logcap/rational.hpp"
#include "logcap/sparse_poly.hpp"
#include "logcap/univariate.hpp"

namespace logcap {

namespace detail {
inline int sign_of(const Rational& v) { return sgn(v); }
inline int sign_of(double v) { return (v > 0) - (v < 0); }

inline bool lc_inequality(const Rational& left, const Rational& right) { return left >= right; }
inline bool lc_inequality(double left, double right) {
  return left >= right - 1e-12 * std::max(std::abs(left), std::abs(right));
}

template <class T>
bool has_internal_zero(const std::vector<T>& d) {
  std::size_t first = d.size(), last = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (sign_of(d[i]) > 0) {
      first = std::min(first, i);
      last = i;
    }
  for (std::size_t i = first; i < last; ++i)
    if (sign_of(d[i]) == 0) return true;
  return false;
}
}  // namespace detail

/// d in LC: all entries >= 0 and d_i^2 >= d_{i-1} d_{i+1}. With `contiguous`, an internal
/// zero between positive entries also disqualifies d.
template <class T>
bool lc_member(const std::vector<T>& d, bool contiguous = false) {
  for (const auto& v : d)
    if (detail::sign_of(v) < 0) return false;
  for (std::size_t i = 1; i + 1 < d.size(); ++i)
    if (!detail::lc_inequality(T(d[i] * d[i]), T(d[i - 1] * d[i + 1]))) return false;
  return !(contiguous && detail::has_internal_zero(d));
}

/// Index of the first failing LC inequality, if any (ignores contiguity).
template <class T>
std::optional<std::size_t> lc_first_failure(const std::vector<T>& d) {
  for (std::size_t i = 1; i + 1 < d.size(); ++i)
    if (!detail::lc_inequality(T(d[i] * d[i]), T(d[i - 1] * d[i + 1]))) return i;
  return std::nullopt;
}

inline std::vector<Rational> univariate_coefficients(const SparsePoly& r) {
  if (r.num_vars() != 1) throw DimensionError("expected a univariate polynomial");
  std::vector<Rational> a(static_cast<std::size_t>(std::max(0, r.total_degree() + 1)), Rational(0));
  for (const auto& [e, c] : r.terms()) a[static_cast<std::size_t>(e[0])] = c;
  return a;
}

/// d_i = a_i / C(n, i).
inline std::vector<Rational> newton_sequence(const SparsePoly& r, int n) {
  if (n < r.total_degree()) throw std::invalid_argument("n must be at least deg(r)");
  auto a = univariate_coefficients(r);
  a.resize(static_cast<std::size_t>(n + 1), Rational(0));
  std::vector<Rational> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    d[i] = a[i] / Rational(binomial(static_cast<unsigned long>(n), i));
  return d;
}

/// r is n-Newton: (a_i / C(n,i)) in LC.
inline bool n_newton_check(const SparsePoly& r, int n, bool contiguous = false) {
  return lc_member(newton_sequence(r, n), contiguous);
}

/// G(i) = a_i i! log-concave with no internal zeros.
inline bool slc_exact_univariate(const std::vector<Rational>& a) {
  std::vector<Rational> g(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) g[i] = a[i] * Rational(factorial(i));
  return lc_member(g, true);
}

/// All roots real (and, since coefficients are nonnegative, non-positive).
inline bool real_rooted_check(const UniPoly& r) {
  if (r.is_zero()) throw std::invalid_argument("real_rooted_check: zero polynomial");
  if (r.degree() == 0) return true;
  UniPoly sqf = squarefree_part(r);
  if (count_real_roots(sqf) != sqf.degree()) return false;
  const Rational zero = 0;
  return count_real_roots(sqf, &zero) == 0;
}
inline bool real_rooted_check(const SparsePoly& r) { return real_rooted_check(UniPoly::from_sparse(r)); }

/// (p')^2 - n/(n-1) p p'' at t; nonnegative on an interval iff p^{1/n} is concave there (p > 0).
inline Rational root_concavity_residual(const UniPoly& p, int n, const Rational& t) {
  if (n < 2) throw std::invalid_argument("root_concavity_residual needs n >= 2");
  Rational d1 = p.derivative()(t);
  return d1 * d1 - Rational(n, n - 1) * p(t) * p.derivative(2)(t);
}

// ---------------------------------------------------------------------------
// Sampled strong log-concavity.

/// Hessian of log q at x, from the softmax weights of the terms:
/// H_ij = (Cov_w(s_i, s_j) - delta_ij E_w s_i) / (x_i x_j).
inline Eigen::MatrixXd log_hessian(const SparsePoly& q, std::span<const double> x) {
  require_positive_point(q, x);
  const std::size_t m = q.num_vars();
  std::vector<double> logx(m);
  for (std::size_t i = 0; i < m; ++i) logx[i] = std::log(x[i]);
  std::vector<double> lw;
  lw.reserve(q.size());
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& [s, a] : q.terms()) {
    double v = log_rational(a);
    for (std::size_t i = 0; i < m; ++i) v += s[i] * logx[i];
    lw.push_back(v);
    top = std::max(top, v);
  }
  double total = 0;
  for (double& v : lw) total += (v = std::exp(v - top));
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  std::size_t k = 0;
  for (const auto& [s, a] : q.terms()) {
    const double w = lw[k++] / total;
    for (std::size_t i = 0; i < m; ++i) {
      if (s[i] == 0) continue;
      mean[static_cast<Eigen::Index>(i)] += w * s[i];
      for (std::size_t j = 0; j < m; ++j)
        second(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += w * s[i] * s[j];
    }
  }
  Eigen::MatrixXd h = second - mean * mean.transpose();
  h.diagonal() -= mean;
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < h.cols(); ++j) h(i, j) /= x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
  return h;
}

/// Largest eigenvalue (symmetric tridiagonalization + QL).
inline double max_eigenvalue(const Eigen::MatrixXd& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

/// Positive curvature beyond the relative float tolerance.
inline bool exceeds_concavity_tolerance(const Eigen::MatrixXd& h, double lambda) {
  return lambda > 1e-8 * (1.0 + h.cwiseAbs().maxCoeff());
}

enum class SlcStatus { certified, sampled_pass, refuted };

inline const char* to_string(SlcStatus s) {
  switch (s) {
    case SlcStatus::certified: return "certified";
    case SlcStatus::sampled_pass: return "sampled-pass";
    case SlcStatus::refuted: return "refuted";
  }
  return "?";
}

struct SlcWitness {
  MultiIndex derivative;
  std::vector<double> point;  // empty when the refutation is a failed sequence inequality
  double max_eigenvalue = 0.0;
};

struct SLCVerdict {
  SlcStatus status = SlcStatus::sampled_pass;
  std::optional<SlcWitness> witness;
  std::size_t derivatives_checked = 0;
  std::size_t points_checked = 0;
  std::string route;
};

struct SlcOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  bool use_exact_routes = true;
};

/// Sample points for the falsifier: log-uniform in e^{[-3,3]^m}, then an axis scan where one
/// coordinate is 10^{+-k} and the rest are 1 (boundary effects live there).
inline std::vector<std::vector<double>> slc_sample_points(std::size_t m, const SlcOptions& opt) {
  Rng rng(derive_seed(opt.seed, "slc-sampled"));
  std::vector<std::vector<double>> pts;
  for (std::size_t s = 0; s < opt.samples; ++s) {
    std::vector<double> x(m);
    for (auto& v : x) v = std::exp(rng.uniform(-3.0, 3.0));
    pts.push_back(std::move(x));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (int k = 1; k <= 6; ++k)
      for (double t : {std::pow(10.0, -k), std::pow(10.0, k)}) {
        std::vector<double> x(m, 1.0);
        x[i] = t;
        pts.push_back(std::move(x));
      }
  return pts;
}

namespace detail {
/// Exact verdict for univariate or bivariate homogeneous inputs, if applicable.
inline std::optional<bool> slc_exact(const SparsePoly& p, std::string& route) {
  if (p.num_vars() == 1) {
    route = "exact-univariate";
    return slc_exact_univariate(univariate_coefficients(p));
  }
  if (p.num_vars() == 2 && p.is_homogeneous()) {
    route = "exact-bivariate-newton";
    const int n = *p.homogeneous_degree();
    SparsePoly r(1);
    for (const auto& [e, c] : p.terms()) r.add_term(MultiIndex{e[0]}, c);
    return n_newton_check(r, n, true);
  }
  return std::nullopt;
}
}  // namespace detail

/// Every nonzero derivative of p is checked for a positive Hessian eigenvalue of its log.
inline SLCVerdict slc_sampled(const SparsePoly& p, const SlcOptions& opt = {}) {
  if (p.is_zero()) throw std::invalid_argument("slc_sampled: zero polynomial");
  SLCVerdict v;
  std::string exact_route;
  std::optional<bool> exact = opt.use_exact_routes ? detail::slc_exact(p, exact_route) : std::nullopt;

  const auto pts = slc_sample_points(p.num_vars(), opt);
  std::vector<int> upper = p.degrees();
  std::optional<SlcWitness> best;
  for_each_in_box(upper, [&](const MultiIndex& c) {
    SparsePoly q = partial_derivative(p, c);
    if (q.is_zero()) return;
    ++v.derivatives_checked;
    if (q.total_degree() == 0) return;
    for (const auto& x : pts) {
      ++v.points_checked;
      Eigen::MatrixXd h = log_hessian(q, x);
      double lambda = max_eigenvalue(h);
      if (exceeds_concavity_tolerance(h, lambda) && (!best || lambda > best->max_eigenvalue))
        best = SlcWitness{c, x, lambda};
    }
  });

  if (best) {
    v.status = SlcStatus::refuted;
    v.witness = best;
    v.route = "sampled";
    return v;
  }
  if (exact.has_value()) {
    v.route = exact_route;
    if (*exact) {
      v.status = SlcStatus::certified;
    } else {
      v.status = SlcStatus::refuted;
      v.witness = SlcWitness{MultiIndex(p.num_vars()), {}, 0.0};
    }
    return v;
  }
  v.status = SlcStatus::sampled_pass;
  v.route = "sampled";
  return v;
}

}  // namespace logcap
