#pragma once

// Revised two-phase simplex over exact rationals with Bland's rule.
//
// Solves   maximize c.x   subject to   A x = b,  x >= 0.
// The systems here have few rows (dimension + 1) and possibly thousands of
// columns, so the basis inverse is kept explicitly and columns are priced one
// at a time. Bland's rule guarantees termination without perturbation.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "logcap/rational.hpp"

namespace logcap {

struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  std::vector<Rational> x;
  Rational objective = 0;

  bool feasible() const { return status != Status::infeasible; }
};

class ExactSimplex {
 public:
  ExactSimplex(const std::vector<std::vector<Rational>>& a, std::vector<Rational> b)
      : rows_(a.size()), cols_(a.empty() ? 0 : a.front().size()), b_(std::move(b)) {
    if (b_.size() != rows_) throw std::invalid_argument("simplex: rhs length mismatch");
    for (const auto& row : a)
      if (row.size() != cols_) throw std::invalid_argument("simplex: ragged constraint matrix");
    col_.assign(cols_, std::vector<Rational>(rows_));
    for (std::size_t i = 0; i < rows_; ++i) {
      const bool flip = sgn(b_[i]) < 0;
      if (flip) b_[i] = -b_[i];
      for (std::size_t j = 0; j < cols_; ++j) col_[j][i] = flip ? Rational(-a[i][j]) : a[i][j];
    }
    integral_ = true;
    for (const auto& c : col_)
      for (const auto& v : c)
        if (v.get_den() != 1 || !v.get_num().fits_slong_p()) integral_ = false;
    // Artificial columns cols_ .. cols_ + rows_ - 1 start as the basis.
    basis_.resize(rows_);
    binv_.assign(rows_, std::vector<Rational>(rows_, Rational(0)));
    for (std::size_t i = 0; i < rows_; ++i) {
      basis_[i] = cols_ + i;
      binv_[i][i] = 1;
    }
    xb_ = b_;
  }

  LpResult solve(const std::vector<Rational>* objective = nullptr) {
    LpResult result;
    std::vector<Rational> phase1(cols_ + rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) phase1[cols_ + i] = -1;
    if (!optimize(phase1, cols_)) throw std::logic_error("phase I cannot be unbounded");
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] >= cols_ && sgn(xb_[i]) != 0) return result;  // infeasible
    drive_out_artificials();

    if (objective) {
      if (objective->size() != cols_) throw std::invalid_argument("simplex: objective length mismatch");
      std::vector<Rational> obj(cols_ + rows_, Rational(0));
      for (std::size_t j = 0; j < cols_; ++j) obj[j] = (*objective)[j];
      if (!optimize(obj, cols_)) {
        result.status = LpResult::Status::unbounded;
        result.x = primal();
        return result;
      }
    }
    result.status = LpResult::Status::optimal;
    result.x = primal();
    if (objective)
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(result.x[j]) != 0) result.objective += (*objective)[j] * result.x[j];
    return result;
  }

 private:
  std::vector<Rational> primal() const {
    std::vector<Rational> x(cols_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < cols_) x[basis_[i]] = xb_[i];
    return x;
  }

  /// B^{-1} A_j
  std::vector<Rational> ftran(std::size_t j) const {
    std::vector<Rational> u(rows_, Rational(0));
    if (j >= cols_) {
      for (std::size_t i = 0; i < rows_; ++i) u[i] = binv_[i][j - cols_];
      return u;
    }
    const auto& a = col_[j];
    for (std::size_t k = 0; k < rows_; ++k) {
      if (sgn(a[k]) == 0) continue;
      for (std::size_t i = 0; i < rows_; ++i)
        if (sgn(binv_[i][k]) != 0) u[i] += binv_[i][k] * a[k];
    }
    return u;
  }

  void pivot(std::size_t r, std::size_t j, const std::vector<Rational>& u) {
    const Rational piv = u[r];
    for (auto& v : binv_[r]) v /= piv;
    xb_[r] /= piv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || sgn(u[i]) == 0) continue;
      for (std::size_t k = 0; k < rows_; ++k)
        if (sgn(binv_[r][k]) != 0) binv_[i][k] -= u[i] * binv_[r][k];
      xb_[i] -= u[i] * xb_[r];
    }
    basis_[r] = j;
    is_basic_.clear();
  }

  bool basic(std::size_t j) {
    if (is_basic_.empty()) {
      is_basic_.assign(cols_ + rows_, false);
      for (std::size_t b : basis_) is_basic_[b] = true;
    }
    return is_basic_[j];
  }

  /// First column in [0, allowed) with positive reduced cost (Bland), if any.
  std::optional<std::size_t> price(const std::vector<Rational>& obj, std::size_t allowed) {
    // y = c_B B^{-1}
    std::vector<Rational> y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = obj[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t k = 0; k < rows_; ++k) y[k] += cb * binv_[i][k];
    }
    if (integral_) {
      // Scale y to integers so each reduced cost sign is an integer dot product.
      Integer den = 1;
      for (const auto& v : y) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
      std::vector<Integer> yi(rows_);
      for (std::size_t k = 0; k < rows_; ++k) yi[k] = Integer(y[k] * Rational(den));
      Integer acc;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (basic(j)) continue;
        const Rational& c = obj[j];
        if (c.get_den() == 1) {
          acc = c.get_num() * den;
        } else {
          Rational t = c * Rational(den);
          acc = Integer(t.get_num()) / Integer(t.get_den());
          if (Rational(acc) != t) {
            if (sgn(exact_reduced(obj, y, j)) > 0) return j;
            continue;
          }
        }
        const auto& a = col_[j];
        for (std::size_t k = 0; k < rows_; ++k) {
          if (sgn(a[k]) == 0 || sgn(yi[k]) == 0) continue;
          const long v = a[k].get_num().get_si();
          if (v > 0)
            mpz_submul_ui(acc.get_mpz_t(), yi[k].get_mpz_t(), static_cast<unsigned long>(v));
          else
            mpz_addmul_ui(acc.get_mpz_t(), yi[k].get_mpz_t(), static_cast<unsigned long>(-v));
        }
        if (sgn(acc) > 0) return j;
      }
      return std::nullopt;
    }
    for (std::size_t j = 0; j < allowed; ++j) {
      if (basic(j)) continue;
      if (sgn(exact_reduced(obj, y, j)) > 0) return j;
    }
    return std::nullopt;
  }

  Rational exact_reduced(const std::vector<Rational>& obj, const std::vector<Rational>& y, std::size_t j) const {
    Rational d = obj[j];
    for (std::size_t k = 0; k < rows_; ++k)
      if (sgn(col_[j][k]) != 0) d -= y[k] * col_[j][k];
    return d;
  }

  // Maximizes obj, letting only columns [0, allowed) enter. Returns false when unbounded.
  bool optimize(const std::vector<Rational>& obj, std::size_t allowed) {
    while (true) {
      auto entering = price(obj, allowed);
      if (!entering) return true;
      const auto u = ftran(*entering);
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(u[i]) <= 0) continue;
        Rational ratio = xb_[i] / u[i];
        if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering, u);
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < cols_) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (basic(j)) continue;
        // (B^{-1} A_j)_r
        Rational ur = 0;
        for (std::size_t k = 0; k < rows_; ++k)
          if (sgn(col_[j][k]) != 0) ur += binv_[r][k] * col_[j][k];
        if (sgn(ur) != 0) {
          pivot(r, j, ftran(j));
          break;
        }
      }
      // A row whose artificial cannot leave is redundant; it stays basic at level zero.
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> b_;
  std::vector<std::vector<Rational>> col_;
  bool integral_ = true;
  std::vector<std::size_t> basis_;
  std::vector<std::vector<Rational>> binv_;
  std::vector<Rational> xb_;
  std::vector<bool> is_basic_;
};

inline LpResult solve_lp(const std::vector<std::vector<Rational>>& a, std::vector<Rational> b,
                         const std::vector<Rational>* objective = nullptr) {
  ExactSimplex lp(a, std::move(b));
  return lp.solve(objective);
}

}  // namespace logcap
