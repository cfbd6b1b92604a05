#pragma once

// Damped Newton for smooth convex objectives given value, gradient and Hessian.
//
// The Objective type provides
//   std::size_t dim() const;
//   double value(const Eigen::VectorXd& y) const;
//   double evaluate(const Eigen::VectorXd& y, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const;

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace logcap {

struct NewtonOptions {
  int max_iterations = 500;
  double gradient_tolerance = 1e-10;  // on ||g||_inf / max(1, |phi|)
  double armijo = 1e-4;
  double ridge = 1e-12;
  int max_backtracks = 60;
  bool recenter_along_ones = false;  // objective is invariant under y -> y + t*1
};

struct NewtonOutcome {
  Eigen::VectorXd y;
  double value = 0.0;
  double gradient_norm = 0.0;  // ||g||_inf at y
  int iterations = 0;
  bool converged = false;
};

namespace detail {
inline void recenter(Eigen::VectorXd& y) {
  if (y.size() > 0) y.array() -= y.mean();
}
}  // namespace detail

template <class Objective>
NewtonOutcome minimize_convex(const Objective& obj, Eigen::VectorXd y, const NewtonOptions& opt = {}) {
  const auto n = static_cast<Eigen::Index>(obj.dim());
  NewtonOutcome out;
  if (opt.recenter_along_ones) detail::recenter(y);
  Eigen::VectorXd g(n);
  Eigen::MatrixXd h(n, n);
  double phi = obj.evaluate(y, g, h);

  for (int it = 0;; ++it) {
    out.iterations = it;
    out.gradient_norm = n ? g.lpNorm<Eigen::Infinity>() : 0.0;
    if (out.gradient_norm <= opt.gradient_tolerance * std::max(1.0, std::abs(phi))) {
      out.converged = true;
      break;
    }
    if (it >= opt.max_iterations) break;

    double scale = std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
    Eigen::MatrixXd reg = h;
    reg.diagonal().array() += opt.ridge * scale;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(reg);
    Eigen::VectorXd step;
    bool newton_ok = ldlt.info() == Eigen::Success && ldlt.isPositive();
    if (newton_ok) {
      step = ldlt.solve(-g);
      newton_ok = step.allFinite() && g.dot(step) < 0.0;
    }
    if (!newton_ok) step = -g;  // gradient descent fallback

    const double slope = g.dot(step);
    double alpha = 1.0;
    Eigen::VectorXd trial;
    double trial_phi = phi;
    bool accepted = false;
    for (int bt = 0; bt < opt.max_backtracks; ++bt) {
      trial = y + alpha * step;
      if (opt.recenter_along_ones) detail::recenter(trial);
      trial_phi = obj.value(trial);
      if (std::isfinite(trial_phi) && trial_phi <= phi + opt.armijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // No representable decrease: accept the full step only if it does not increase phi
      // beyond rounding; otherwise stop with the current diagnostics.
      trial = y + step;
      if (opt.recenter_along_ones) detail::recenter(trial);
      trial_phi = obj.value(trial);
      if (!(trial_phi <= phi + 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(phi)))) break;
    }
    y = trial;
    phi = obj.evaluate(y, g, h);
  }
  out.y = y;
  out.value = phi;
  return out;
}

}  // namespace logcap
