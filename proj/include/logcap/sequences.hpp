#pragma once

// Weighted shift flows on sequences and the propagation of LC membership along them.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logcap/log_concavity.hpp"
#include "logcap/permanent.hpp"
#include "logcap/random.hpp"
#include "logcap/rational.hpp"
#include "logcap/univariate.hpp"

namespace logcap {

/// Positive weights b_0..b_k; shift weights c_i = b_i / b_{i+1}.
class WeightSequence {
 public:
  explicit WeightSequence(std::vector<Rational> b) : b_(std::move(b)) {
    if (b_.empty()) throw std::invalid_argument("weight sequence is empty");
    for (const auto& v : b_)
      if (sgn(v) <= 0) throw std::invalid_argument("weights must be positive, got " + to_string(v));
  }

  /// b_i = (n - i)!, i = 0..n.
  static WeightSequence falling_factorials(unsigned n) {
    std::vector<Rational> b;
    for (unsigned i = 0; i <= n; ++i) b.emplace_back(factorial(n - i));
    return WeightSequence(std::move(b));
  }

  std::size_t k() const { return b_.size() - 1; }
  const std::vector<Rational>& b() const { return b_; }
  std::vector<Rational> c() const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i + 1 < b_.size(); ++i) out.push_back(b_[i] / b_[i + 1]);
    return out;
  }

 private:
  std::vector<Rational> b_;
};

/// Shift weights c_0..c_{k-1} concave, with the zero-extension tail 2c_{k-1} >= c_{k-2}.
inline bool concave_shift_weights(const std::vector<Rational>& c) {
  const std::size_t k = c.size();
  for (std::size_t i = 1; i + 1 < k; ++i)
    if (2 * c[i] < c[i + 1] + c[i - 1]) return false;
  if (k >= 2 && 2 * c[k - 1] < c[k - 2]) return false;
  return true;
}

inline bool propagatable_check(const WeightSequence& b) { return concave_shift_weights(b.c()); }

/// (x_0..x_n) -> (c_0 x_1, ..., c_{n-1} x_n, 0).
class ShiftOperator {
 public:
  explicit ShiftOperator(std::vector<Rational> c) : c_(std::move(c)) {
    for (const auto& v : c_)
      if (sgn(v) < 0) throw std::invalid_argument("shift weights must be nonnegative");
  }
  static ShiftOperator of(const WeightSequence& b) { return ShiftOperator(b.c()); }

  std::size_t dim() const { return c_.size() + 1; }
  const std::vector<Rational>& weights() const { return c_; }

  std::vector<Rational> apply(const std::vector<Rational>& x) const {
    require_dim(x);
    std::vector<Rational> out(x.size(), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * x[i + 1];
    return out;
  }

  void require_dim(const std::vector<Rational>& x) const {
    if (x.size() != dim())
      throw DimensionError("vector has length " + std::to_string(x.size()) + ", shift acts on " +
                           std::to_string(dim()));
  }

 private:
  std::vector<Rational> c_;
};

/// exp(t Shift) x = sum_{j <= n} t^j Shift^j x / j!, exact since Shift is nilpotent.
inline std::vector<Rational> shift_exp_apply(const ShiftOperator& s, const Rational& t, const std::vector<Rational>& x) {
  s.require_dim(x);
  std::vector<Rational> out = x;
  std::vector<Rational> term = x;
  for (std::size_t j = 1; j < s.dim(); ++j) {
    term = s.apply(term);
    Rational scale = pow(t, j) / Rational(factorial(j));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * term[i];
  }
  return out;
}

/// (I + t Shift) x
inline std::vector<Rational> shift_step_apply(const ShiftOperator& s, const Rational& t, const std::vector<Rational>& x) {
  auto sx = s.apply(x);
  std::vector<Rational> out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += t * sx[i];
  return out;
}

/// Mom_b(t) = (b_0 p(t), b_1 p'(t), ..., b_k p^{(k)}(t)).
inline std::vector<Rational> moment_vector(const WeightSequence& b, const UniPoly& p, const Rational& t) {
  if (p.degree() > static_cast<int>(b.k()))
    throw std::invalid_argument("polynomial degree exceeds the weight sequence length");
  std::vector<Rational> out;
  for (std::size_t i = 0; i <= b.k(); ++i) out.push_back(b.b()[i] * p.derivative(static_cast<unsigned>(i))(t));
  return out;
}

struct TrajectoryPoint {
  Rational t;
  std::vector<Rational> moments;
  bool in_lc = false;
  bool matches_flow = false;  // moments equal exp(t Shift) Mom_b(0)
};

struct TrajectoryReport {
  bool precondition = false;  // Mom_b(0) in LC
  bool propagatable = false;
  bool all_in_lc = false;
  std::optional<Rational> first_exit;
  std::vector<TrajectoryPoint> points;
};

inline TrajectoryReport lc_trajectory_check(const WeightSequence& b, const UniPoly& p, const std::vector<Rational>& grid) {
  TrajectoryReport rep;
  rep.propagatable = propagatable_check(b);
  const auto start = moment_vector(b, p, 0);
  rep.precondition = lc_member(start);
  const ShiftOperator s = ShiftOperator::of(b);
  rep.all_in_lc = rep.precondition;
  for (const auto& t : grid) {
    TrajectoryPoint pt;
    pt.t = t;
    pt.moments = moment_vector(b, p, t);
    pt.in_lc = lc_member(pt.moments);
    pt.matches_flow = pt.moments == shift_exp_apply(s, t, start);
    if (!pt.in_lc) {
      rep.all_in_lc = false;
      if (!rep.first_exit) rep.first_exit = t;
    }
    rep.points.push_back(std::move(pt));
  }
  return rep;
}

/// Random strictly log-concave positive vector of length n: d_i = exp(g_i) with g strictly concave,
/// rounded to exact rationals and kept only if exactly in LC.
inline std::vector<Rational> random_lc_vector(Rng& rng, std::size_t n) {
  while (true) {
    std::vector<Rational> d;
    double g = rng.uniform(-2.0, 2.0);
    double step = rng.uniform(-1.5, 1.5);
    for (std::size_t i = 0; i < n; ++i) {
      d.push_back(exact_rational(std::exp(g)));
      g += step;
      step -= rng.uniform(0.01, 1.0);
    }
    if (lc_member(d)) return d;
  }
}

struct DiscreteStepReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  bool concave_weights = false;
  std::optional<std::vector<Rational>> first_violation;  // the input d
};

/// Applies I + t Shift to random LC vectors and checks the image stays in LC.
inline DiscreteStepReport discrete_step_check(const ShiftOperator& s, const Rational& t, std::size_t trials,
                                              std::uint64_t seed) {
  if (sgn(t) <= 0) throw std::invalid_argument("step must be positive");
  DiscreteStepReport rep;
  rep.concave_weights = concave_shift_weights(s.weights());
  Rng rng(derive_seed(seed, "discrete-step"));
  for (std::size_t k = 0; k < trials; ++k) {
    auto d = random_lc_vector(rng, s.dim());
    ++rep.trials;
    if (!lc_member(shift_step_apply(s, t, d))) {
      ++rep.violations;
      if (!rep.first_violation) rep.first_violation = d;
    }
  }
  return rep;
}

}  // namespace logcap
