#pragma once

// Capacities by convex optimization in log coordinates.
//
//   C_f(R) = inf_{x > 0} f(x) / prod (x_i / r_i)^{r_i}
//
// With x = e^y the objective phi(y) = log f(e^y) - <r, y> + sum r_i log r_i is a
// log-sum-exp of affine forms, hence convex. Targets on the boundary of Newt(f)
// are first restricted to the minimal face containing them, where the infimum
// is the same and is attained.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "logcap/convex_newton.hpp"
#include "logcap/exp_linear.hpp"
#include "logcap/multi_index.hpp"
#include "logcap/rational.hpp"
#include "logcap/sparse_poly.hpp"
#include "logcap/support_geometry.hpp"

namespace logcap {

enum class CapacityStatus { attained, face_restricted, zero };

inline const char* to_string(CapacityStatus s) {
  switch (s) {
    case CapacityStatus::attained: return "attained";
    case CapacityStatus::face_restricted: return "face-restricted";
    case CapacityStatus::zero: return "zero";
  }
  return "?";
}

struct CapacityOptions {
  double tolerance = 1e-10;  // relative gradient tolerance
  int max_iterations = 500;
  std::optional<std::vector<double>> initial_point;  // in log coordinates, full dimension
};

struct CapacityResult {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  std::optional<std::vector<double>> minimizer;  // x > 0; only when the infimum is attained
  CapacityStatus status = CapacityStatus::zero;
  int iterations = 0;
  double gradient_norm = 0.0;
  std::size_t face_terms = 0;
};

class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, int iterations, double gradient_norm)
      : std::runtime_error(what), iterations_(iterations), gradient_norm_(gradient_norm) {}
  int iterations() const { return iterations_; }
  double gradient_norm() const { return gradient_norm_; }

 private:
  int iterations_;
  double gradient_norm_;
};

/// phi(y) = LSE_k(c_k + <e_k, y>) - <r, y> + offset.
class LogSumExpObjective {
 public:
  LogSumExpObjective(Eigen::MatrixXd exponents, Eigen::VectorXd log_coeffs, Eigen::VectorXd target, double offset)
      : e_(std::move(exponents)), c_(std::move(log_coeffs)), r_(std::move(target)), offset_(offset) {}

  std::size_t dim() const { return static_cast<std::size_t>(e_.cols()); }

  double value(const Eigen::VectorXd& y) const {
    Eigen::VectorXd z = c_ + e_ * y;
    double top = z.maxCoeff();
    return top + std::log((z.array() - top).exp().sum()) - r_.dot(y) + offset_;
  }

  double evaluate(const Eigen::VectorXd& y, Eigen::VectorXd& g, Eigen::MatrixXd& h) const {
    Eigen::VectorXd z = c_ + e_ * y;
    double top = z.maxCoeff();
    Eigen::VectorXd w = (z.array() - top).exp();
    double total = w.sum();
    w /= total;
    Eigen::VectorXd mean = e_.transpose() * w;
    Eigen::MatrixXd centered = e_.rowwise() - mean.transpose();
    h = centered.transpose() * w.asDiagonal() * centered;
    g = mean - r_;
    return top + std::log(total) - r_.dot(y) + offset_;
  }

 private:
  Eigen::MatrixXd e_;
  Eigen::VectorXd c_;
  Eigen::VectorXd r_;
  double offset_;
};

/// phi(y) = sum a_i e^{y_i} - <r, y> + offset, the log-domain objective of exp(<a, x>).
class ExpLinearObjective {
 public:
  ExpLinearObjective(Eigen::VectorXd rates, Eigen::VectorXd target, double offset)
      : a_(std::move(rates)), r_(std::move(target)), offset_(offset) {}
  std::size_t dim() const { return static_cast<std::size_t>(a_.size()); }
  double value(const Eigen::VectorXd& y) const {
    return (a_.array() * y.array().exp()).sum() - r_.dot(y) + offset_;
  }
  double evaluate(const Eigen::VectorXd& y, Eigen::VectorXd& g, Eigen::MatrixXd& h) const {
    Eigen::VectorXd t = (a_.array() * y.array().exp()).matrix();
    g = t - r_;
    h = t.asDiagonal();
    return t.sum() - r_.dot(y) + offset_;
  }

 private:
  Eigen::VectorXd a_;
  Eigen::VectorXd r_;
  double offset_;
};

namespace detail {

inline double xlogx(const Rational& r) {
  if (sgn(r) == 0) return 0.0;
  return to_double(r) * log_rational(r);
}

inline CapacityResult run_solver(const SparsePoly& p, const std::vector<std::size_t>& face,
                                 const std::vector<MultiIndex>& pts, const RationalPoint& target, bool scaled,
                                 const CapacityOptions& opt) {
  const std::size_t m = p.num_vars();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < m; ++i)
    if (sgn(target[i]) != 0) active.push_back(i);

  double offset = 0.0;
  if (scaled)
    for (const auto& r : target) offset += xlogx(r);

  CapacityResult res;
  res.face_terms = face.size();
  res.status = face.size() == pts.size() ? CapacityStatus::attained : CapacityStatus::face_restricted;

  Eigen::MatrixXd e(face.size(), active.size());
  Eigen::VectorXd c(face.size());
  for (std::size_t k = 0; k < face.size(); ++k) {
    const MultiIndex& s = pts[face[k]];
    for (std::size_t j = 0; j < active.size(); ++j) e(k, j) = s[active[j]];
    c(k) = log_rational(p.coefficient(s));
  }
  Eigen::VectorXd r(active.size());
  for (std::size_t j = 0; j < active.size(); ++j) r(j) = to_double(target[active[j]]);

  if (face.size() == 1 || active.empty()) {
    // The face is a single point (necessarily the target) or every variable is frozen at zero.
    double phi = c.size() == 1 ? c(0) + offset : LogSumExpObjective(e, c, r, offset).value(Eigen::VectorXd::Zero(0));
    res.log_value = phi;
    res.value = std::exp(phi);
    if (res.status == CapacityStatus::attained && active.size() == m) res.minimizer = std::vector<double>(m, 1.0);
    return res;
  }

  // Invariance along 1 holds when every face point has total degree sum(r).
  bool shift_invariant = true;
  Rational rsum = 0;
  for (std::size_t j = 0; j < active.size(); ++j) rsum += target[active[j]];
  for (std::size_t k = 0; k < face.size() && shift_invariant; ++k) {
    int tot = 0;
    for (std::size_t j = 0; j < active.size(); ++j) tot += pts[face[k]][active[j]];
    if (Rational(tot) != rsum) shift_invariant = false;
  }

  LogSumExpObjective obj(std::move(e), std::move(c), std::move(r), offset);
  Eigen::VectorXd y0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(active.size()));
  if (opt.initial_point) {
    if (opt.initial_point->size() != m) throw DimensionError("initial point has wrong dimension");
    for (std::size_t j = 0; j < active.size(); ++j) y0(j) = (*opt.initial_point)[active[j]];
  }
  NewtonOptions nopt;
  nopt.max_iterations = opt.max_iterations;
  nopt.gradient_tolerance = opt.tolerance;
  nopt.recenter_along_ones = shift_invariant;
  NewtonOutcome out = minimize_convex(obj, y0, nopt);
  res.iterations = out.iterations;
  res.gradient_norm = out.gradient_norm;
  if (!out.converged) {
    std::ostringstream msg;
    msg << "capacity solver did not converge: iterations=" << out.iterations
        << " gradient_inf_norm=" << out.gradient_norm << " phi=" << out.value;
    throw CapacityError(msg.str(), out.iterations, out.gradient_norm);
  }
  res.log_value = out.value;
  res.value = std::exp(out.value);
  if (res.status == CapacityStatus::attained && active.size() == m) {
    std::vector<double> x(m);
    for (std::size_t j = 0; j < m; ++j) x[j] = std::exp(out.y(static_cast<Eigen::Index>(j)));
    res.minimizer = std::move(x);
  }
  return res;
}

}  // namespace detail

/// inf_{x > 0} p(x) / prod x_i^{l_i} (scaled = false) or / prod (x_i / l_i)^{l_i}
/// (scaled = true), for a nonnegative rational target l.
inline CapacityResult capacity_at(const SparsePoly& p, const RationalPoint& target, bool scaled,
                                  const CapacityOptions& opt = {}) {
  if (p.is_zero()) throw std::invalid_argument("capacity of the zero polynomial");
  if (target.size() != p.num_vars()) throw DimensionError("capacity target has wrong dimension");
  for (const auto& t : target)
    if (sgn(t) < 0) throw std::invalid_argument("capacity target must be nonnegative");
  const auto pts = p.support();
  const auto face = minimal_face(pts, target);
  if (face.empty()) return CapacityResult{};  // target outside Newt(p)
  return detail::run_solver(p, face, pts, target, scaled, opt);
}

/// C_f(R).
inline CapacityResult c_f_at(const SparsePoly& p, const MultiIndex& target, const CapacityOptions& opt = {}) {
  MultiIndex(p.num_vars()).require_same_size(target);
  return capacity_at(p, to_rational_point(target), true, opt);
}

/// Cap(p) = inf p(x) / prod x_i.
inline CapacityResult capacity(const SparsePoly& p, const CapacityOptions& opt = {}) {
  return c_f_at(p, MultiIndex::ones(p.num_vars()), opt);
}

/// Numerical C_f(R) for exp(<a, x>); the closed form lives on the fixture itself.
inline CapacityResult c_f_at(const ExpLinearFixture& f, const MultiIndex& target, const CapacityOptions& opt = {}) {
  MultiIndex(f.num_vars()).require_same_size(target);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < target.size(); ++i)
    if (target[i] > 0) active.push_back(i);
  Eigen::VectorXd a(active.size()), r(active.size());
  double offset = 0.0;
  for (std::size_t j = 0; j < active.size(); ++j) {
    a(j) = to_double(f.rates()[active[j]]);
    r(j) = target[active[j]];
    offset += r(j) * std::log(r(j));
  }
  CapacityResult res;
  res.status = CapacityStatus::attained;
  if (active.empty()) {
    res.log_value = 0.0;
    res.value = 1.0;
    return res;
  }
  ExpLinearObjective obj(a, r, offset);
  NewtonOptions nopt;
  nopt.max_iterations = opt.max_iterations;
  nopt.gradient_tolerance = opt.tolerance;
  NewtonOutcome out = minimize_convex(obj, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(active.size())), nopt);
  if (!out.converged)
    throw CapacityError("capacity solver did not converge on exp-linear fixture", out.iterations, out.gradient_norm);
  res.iterations = out.iterations;
  res.gradient_norm = out.gradient_norm;
  res.log_value = out.value;
  res.value = std::exp(out.value);
  if (active.size() == target.size()) {
    std::vector<double> x(active.size());
    for (std::size_t j = 0; j < active.size(); ++j) x[j] = std::exp(out.y(static_cast<Eigen::Index>(j)));
    res.minimizer = std::move(x);
  } else {
    res.status = CapacityStatus::face_restricted;
  }
  return res;
}

/// Value of the scaled log objective at y (full dimension); used by optimality probes.
inline double c_f_objective(const SparsePoly& p, const MultiIndex& target, std::span<const double> y) {
  double phi = log_evaluate(p, y);
  for (std::size_t i = 0; i < target.size(); ++i) {
    phi -= target[i] * y[i];
    if (target[i] > 0) phi += target[i] * std::log(static_cast<double>(target[i]));
  }
  return phi;
}

}  // namespace logcap
