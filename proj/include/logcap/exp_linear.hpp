#pragma once

// f(x) = exp(a_1 x_1 + ... + a_m x_m), the one non-polynomial fixture. Every
// quantity the verifiers need has a closed form here.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "logcap/multi_index.hpp"
#include "logcap/rational.hpp"

namespace logcap {

class ExpLinearFixture {
 public:
  explicit ExpLinearFixture(std::vector<Rational> rates) : rates_(std::move(rates)) {
    if (rates_.empty()) throw std::invalid_argument("ExpLinearFixture needs at least one rate");
    for (const auto& a : rates_)
      if (sgn(a) <= 0) throw std::invalid_argument("ExpLinearFixture rates must be positive");
  }

  std::size_t num_vars() const { return rates_.size(); }
  const std::vector<Rational>& rates() const { return rates_; }

  /// Der_f(R) = prod a_i^{r_i}, exact.
  Rational der_at_zero(const MultiIndex& r) const {
    MultiIndex(num_vars()).require_same_size(r);
    Rational out = 1;
    for (std::size_t i = 0; i < r.size(); ++i) out *= pow(rates_[i], static_cast<unsigned long>(r[i]));
    return out;
  }

  /// log C_f(R) = sum_{r_i > 0} r_i (1 + log a_i); the infimum for each coordinate
  /// sits at x_i = r_i / a_i, and coordinates with r_i = 0 contribute e^0 = 1.
  double log_c_f(const MultiIndex& r) const {
    MultiIndex(num_vars()).require_same_size(r);
    double out = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] > 0) out += r[i] * (1.0 + log_rational(rates_[i]));
    return out;
  }
  double c_f(const MultiIndex& r) const { return std::exp(log_c_f(r)); }

  /// Cap(f) = prod (e a_i).
  double capacity() const { return c_f(MultiIndex::ones(num_vars())); }

  double log_value(std::span<const double> y) const {
    if (y.size() != num_vars()) throw DimensionError("ExpLinearFixture: point has wrong dimension");
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += to_double(rates_[i]) * std::exp(y[i]);
    return s;
  }

 private:
  std::vector<Rational> rates_;
};

}  // namespace logcap
