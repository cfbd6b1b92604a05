// Acceptance gate: one PASS/FAIL line per criterion, with wall time against its budget.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "logcap/logcap.hpp"
#include "oracles.hpp"

using namespace logcap;

namespace {

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << count_ << " checks";
    if (failed_) {
      s << ", " << failed_ << " failed:";
      for (const auto& f : failures_) s << " [" << f << "]";
    }
    return s.str();
  }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

const BoundReport* find(const std::vector<BoundReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.id == id) return &r;
  return nullptr;
}

// 1. Cycle polynomial derivatives and the log Der midpoint deficit.
void criterion_cycle(Check& c) {
  for (std::size_t n : {2, 3, 4}) {
    const SparsePoly p = cycle_polynomial(n);
    const auto t = cycle_targets(n);
    const std::string tag = "n=" + std::to_string(n);
    c.expect(der_at_zero(p, t[0]) == 2, tag + " Der(R0)");
    c.expect(der_at_zero(p, t[1]) == Rational(1L << n), tag + " Der(R1)");
    c.expect(der_at_zero(p, t[2]) == Rational(1L << n), tag + " Der(R2)");
    const double d = der_midpoint_deficit(p, t[0], t[1], t[2]);
    const double expect = -static_cast<double>(n - 1) * std::log(2.0);
    c.expect(std::abs(d - expect) <= 1e-12, tag + " deficit " + fmt(d));
  }
}

// 2. The lifted t + t^3 example: capacity 32, vanishing derivative, detected violation,
//    and the root-concavity residual identity.
void criterion_lifted(Check& c) {
  const SparsePoly q = lifted_t_plus_t_cubed();
  const double cap = capacity(q).value;
  c.expect(rel_close(cap, 32.0, 1e-5), "Cap(q) = " + fmt(cap));
  c.expect(der_at_zero(q, MultiIndex::ones(4)) == 0, "Der_q(1,1,1,1) = 0");
  const auto reps = verify_main_thm(q, BoundKind::homogeneous, Provenance::user);
  const auto* low = find(reps, "der-lower-homogeneous");
  c.expect(low && low->verdict == Verdict::violated, "main bound violated on q");
  c.expect(low && !low->guaranteed, "q is reported, not guaranteed");
  const UniPoly p(std::vector<Rational>{0, 1, 0, 1});
  for (int k = 0; k < 10; ++k) {
    Rational t(2 * k - 7, k + 2);
    t.canonicalize();
    const Rational s = t * t - 1;
    c.expect(root_concavity_residual(p, 4, t) == s * s, "residual at t = " + to_string(t));
  }
}

// 3. Equality cases of the main bound.
void criterion_equality(Check& c) {
  for (unsigned n = 1; n <= 5; ++n) {
    const auto reps = verify_main_thm(power_of_sum(n, n), BoundKind::homogeneous);
    const auto* low = find(reps, "der-lower-homogeneous");
    c.expect(low && std::abs(low->relative_slack()) <= 1e-6,
             "(sum x)^" + std::to_string(n) + " slack " + (low ? fmt(low->slack) : "missing"));
    const double der = to_double(der_at_zero(power_of_sum(n, n), MultiIndex::ones(n)));
    const double cap = capacity(power_of_sum(n, n)).value;
    c.expect(rel_close(der, to_double(vdw(n)) * cap, 1e-6), "Der = vdw(n) Cap for n = " + std::to_string(n));
  }
  const std::vector<std::vector<Rational>> rates{{1}, {1, 1}, {2, Rational(1, 3)}, {Rational(1, 2), 2, 3}, {1, 1, 1, 1, 1}};
  for (const auto& r : rates) {
    const ExpLinearFixture f(r);
    const auto reps = verify_main_thm(f);
    const auto* low = find(reps, "der-lower-entire");
    const double n = static_cast<double>(r.size());
    const double der = to_double(f.der_at_zero(MultiIndex::ones(r.size())));
    c.expect(rel_close(der, std::exp(-n) * std::exp(f.log_c_f(MultiIndex::ones(r.size()))), 1e-9), "exp-linear closed form, m = " + fmt(n));
    c.expect(low && std::abs(low->relative_slack()) <= 1e-9, "exp-linear report slack");
  }
}

// 4. Doubly stochastic matrices.
void criterion_doubly_stochastic(Check& c) {
  for (std::size_t n = 1; n <= 8; ++n)
    c.expect(ryser_permanent(uniform_doubly_stochastic(n)) == vdw(n), "per(J_n/n) n = " + std::to_string(n));
  Rng rng(derive_seed(2024, "acceptance-ds"));
  for (int k = 0; k < 100; ++k) {
    const auto n = static_cast<std::size_t>(2 + k % 7);  // 2..8
    const auto a = random_rational_matrix(rng, n, 1, 9, 1);
    const auto s = sinkhorn(a.cast<double>());
    const RationalMatrix ds = rationalize_doubly_stochastic(s.scaled);
    const Rational per = ryser_permanent(ds);
    const std::string tag = "matrix " + std::to_string(k) + " (n=" + std::to_string(n) + ")";
    c.expect(per >= vdw(n) && per <= 1, tag + " per in [n!/n^n, 1]");
    const double cap = capacity(prod_poly(ds)).value;
    c.expect(std::abs(cap - 1.0) <= 1e-6, tag + " Cap = " + fmt(cap));
  }
}

// 5. Constants.
void criterion_constants(Check& c) {
  c.expect(compute_L(1).value == 1.0, "L(1) = 1");
  c.expect(std::abs(compute_L(2).value - 1.0 / (1.0 + std::sqrt(2.0))) <= 1e-10, "L(2)");
  for (unsigned n = 1; n <= 50; ++n) {
    const auto l = compute_L(n);
    c.expect(l.excess_over_inv_e > 0.0 && l.value <= 1.0, "L(" + std::to_string(n) + ") > 1/e");
  }
  for (unsigned n = 1; n < 60; ++n) c.expect(vdw(n + 1) < vdw(n), "vdw decreasing at " + std::to_string(n));
  for (unsigned k = 2; k < 60; ++k) {
    c.expect(g_constant(k + 1) < g_constant(k), "g decreasing at " + std::to_string(k));
    // g(k) = ((k-1)/k)^{k-1} > 1/e  <=>  (k/(k-1))^{k-1} < e, and (1+1/m)^m < e for all m.
    c.expect(to_double(g_constant(k)) >= std::exp(-1.0), "g above 1/e at " + std::to_string(k));
  }
}

// 6. Propagatable sequences, both directions.
void criterion_propagation(Check& c) {
  const std::vector<Rational> grid{0, Rational(1, 2), 1, 2, 5};
  Rng rng(derive_seed(2024, "acceptance-real-rooted"));
  for (int k = 0; k < 20; ++k) {
    const int deg = 1 + k % 5;
    std::vector<Rational> coeffs{1};
    for (int j = 0; j < deg; ++j) {
      Rational root(rng.integer(0, 12), rng.integer(1, 4));
      root.canonicalize();
      coeffs = oracle::poly_mul(coeffs, {root, 1});  // (t + root)
    }
    const UniPoly p(coeffs);
    const std::string tag = "fixture " + std::to_string(k);
    c.expect(real_rooted_check(p), tag + " real-rooted");
    const auto b = WeightSequence::falling_factorials(static_cast<unsigned>(deg));
    c.expect(propagatable_check(b), tag + " weights propagatable");
    const auto rep = lc_trajectory_check(b, p, grid);
    c.expect(rep.precondition && rep.all_in_lc, tag + " stays in LC");
    for (const auto& pt : rep.points) c.expect(pt.matches_flow, tag + " moments follow exp(tS)");
  }
  const WeightSequence bad({1, 1, 3, 3});
  const UniPoly q(std::vector<Rational>{1, 1, Rational(1, 6), Rational(1, 18)});
  const auto rep = lc_trajectory_check(bad, q, grid);
  c.expect(!rep.propagatable, "frozen weights are not propagatable");
  c.expect(rep.precondition, "frozen fixture starts in LC");
  c.expect(!rep.all_in_lc && rep.first_exit && *rep.first_exit == Rational(1, 2), "frozen fixture exits LC at 1/2");
}

// 7. Inner products.
void criterion_inner(Check& c) {
  const SparsePoly sq = power_of_sum(2, 2);
  const auto r = verify_inner_product(sq, sq, {1, 1});
  c.expect(r.inner == 6, "<p,p> = 6");
  c.expect(std::abs(r.a - 4.0) <= 1e-6 && std::abs(r.b - 4.0) <= 1e-6, "A = B = 4");
  const auto* low = find(r.bounds, "inner-product-lower");
  c.expect(low && std::abs(low->right - 6.0) <= 1e-6 && low->verdict == Verdict::holds, "AB vdw(4)/vdw(2)^2 = 6");
  c.expect(to_double(Rational(16) * vdw(4) / pow(vdw(2), 2)) == 6.0, "constant 16 vdw(4)/vdw(2)^2 = 6");

  Rng rng(derive_seed(2024, "acceptance-inner"));
  int checked = 0;
  for (int k = 0; k < 20; ++k) {
    const std::size_t m = static_cast<std::size_t>(2 + k % 2);
    const unsigned n = static_cast<unsigned>(2 + k % 3);
    auto forms = [&] {
      std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(m));
      for (auto& row : rows)
        for (auto& v : row) v = rng.integer(1, 4);
      return product_of_linear_forms(rows);
    };
    const SparsePoly p = forms(), q = forms();
    RationalPoint l(m, Rational(static_cast<long>(n), static_cast<long>(m)));
    for (auto& v : l) v.canonicalize();
    const auto rep = verify_inner_product(p, q, l);
    const auto* b = find(rep.bounds, "inner-product-lower");
    c.expect(b && b->verdict == Verdict::holds && b->guaranteed, "random product " + std::to_string(k));
    ++checked;
  }
  c.expect(checked == 20, "20 random fixtures");
}

// 8. Lattice convexity of supports.
void criterion_dconvex(Check& c) {
  SlcOptions opt;
  opt.seed = 2024;
  opt.samples = 40;
  std::vector<std::pair<std::string, SparsePoly>> corpus;
  for (const auto& f : hstable_fixtures()) corpus.emplace_back(f.name, f.poly);
  Rng rng(derive_seed(2024, "acceptance-dconvex"));
  for (int k = 0; k < 10; ++k)
    corpus.emplace_back("random_product_" + std::to_string(k), random_linear_product(rng, 3, 3, 2));
  for (const auto& [name, p] : corpus) {
    c.expect(d_convex_check(SupportSet::of(p)).d_convex, name + " D-convex");
    // SLC implies D-convex: no fixture may be refuted as SLC either.
    if (p.num_vars() <= 4) c.expect(slc_sampled(p, opt).status != SlcStatus::refuted, name + " not refuted");
  }
  const SparsePoly gap = SparsePoly::univariate(std::vector<Rational>{1, 0, 1});
  const auto r = d_convex_check(SupportSet::of(gap));
  c.expect(!r.d_convex && r.counterexample && *r.counterexample == MultiIndex{1}, "supp(1+t^2) fails at 1");
  c.expect(slc_sampled(gap, opt).status == SlcStatus::refuted, "1+t^2 is not SLC");
}

// 9. Property suites.
void criterion_properties(Check& c) {
  Rng rng(derive_seed(2024, "acceptance-grid"));
  for (int k = 0; k < 30; ++k) {
    const std::size_t m = static_cast<std::size_t>(1 + k % 3);
    const int top = static_cast<int>(2 * m);
    SparsePoly p = SparsePoly::constant(m, Rational(rng.integer(1, 4)));
    for (std::size_t i = 0; i < m; ++i) p.add_term(MultiIndex::unit(m, i, top), Rational(rng.integer(1, 4)));
    for (int t = 0; t < 3; ++t) {
      std::vector<int> e(m);
      for (auto& v : e) v = static_cast<int>(rng.integer(0, 2));
      Rational coef(rng.integer(1, 8), 2);
      coef.canonicalize();
      p.add_term(MultiIndex(e), coef);
    }
    std::vector<int> r(m, 1);
    r[static_cast<std::size_t>(rng.integer(0, static_cast<long>(m) - 1))] += static_cast<int>(rng.integer(0, m - 1 > 0 ? 1 : 0));
    const MultiIndex target(r);
    const double solver = c_f_at(p, target).value;
    const std::vector<double> rd(r.begin(), r.end());
    const double grid = std::exp(oracle::grid_log_capacity(p, rd));
    c.expect(rel_close(solver, grid, 1e-4), "grid oracle case " + std::to_string(k) + ": " + fmt(solver) + " vs " + fmt(grid));
  }

  Rng rng2(derive_seed(2024, "acceptance-upper"));
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = static_cast<std::size_t>(rng2.integer(1, 3));
    SparsePoly p(m);
    const int terms = static_cast<int>(rng2.integer(1, 5));
    for (int t = 0; t < terms; ++t) {
      std::vector<int> e(m);
      for (auto& v : e) v = static_cast<int>(rng2.integer(0, 3));
      Rational coef(rng2.integer(1, 9), rng2.integer(1, 3));
      coef.canonicalize();
      p.add_term(MultiIndex(e), coef);
    }
    std::vector<int> r(m);
    for (auto& v : r) v = static_cast<int>(rng2.integer(0, 3));
    const auto rep = verify_capacity_upper(p, MultiIndex(r));
    c.expect(rep.verdict == Verdict::holds, "upper bound case " + std::to_string(k));
  }

  Rng rng3(derive_seed(2024, "acceptance-split"));
  for (int k = 0; k < 50; ++k) {
    const std::size_t m = static_cast<std::size_t>(rng3.integer(1, 3));
    SparsePoly p(m);
    for (int t = 0; t < 4; ++t) {
      std::vector<int> e(m);
      for (auto& v : e) v = static_cast<int>(rng3.integer(0, 3));
      p.add_term(MultiIndex(e), Rational(rng3.integer(1, 9)));
    }
    std::vector<int> r(m);
    for (auto& v : r) v = static_cast<int>(rng3.integer(0, 3));
    r[0] = std::max(r[0], 1);
    const MultiIndex target(r);
    const SparsePoly s = split_variables(p, target);
    c.expect(der_at_zero(s, MultiIndex::ones(static_cast<std::size_t>(target.total()))) == der_at_zero(p, target),
             "split identity case " + std::to_string(k));
  }
}

// 10. Multivariate Newton inequalities.
void criterion_newton(Check& c) {
  for (unsigned n = 1; n <= 5; ++n) {
    std::vector<MultiIndex> ys;
    for (unsigned i = 0; i < n; ++i) ys.push_back(MultiIndex::unit(n, i, static_cast<int>(n)));
    const NewtonDecomposition d{MultiIndex::ones(n), std::vector<Rational>(n, Rational(1, static_cast<long>(n))), ys};
    const auto r = verify_newton_multivariate(power_of_sum(n, n), d, NewtonClass::homogeneous);
    c.expect(r.exact_equality && *r.exact_equality, "power of sum equality n = " + std::to_string(n));
  }
  for (std::size_t n : {2, 3}) {
    const auto t = cycle_targets(n);
    const NewtonDecomposition d{t[0], {Rational(1, 2), Rational(1, 2)}, {t[1], t[2]}};
    const auto r = verify_newton_multivariate(cycle_polynomial(n), d, NewtonClass::degree_bounded, 2);
    c.expect(r.exact_equality && *r.exact_equality, "cycle equality n = " + std::to_string(n));
    c.expect(der_at_zero(cycle_polynomial(n), t[0]) == 2, "cycle Der(Y0) = 2");
  }
  const NewtonDecomposition af{MultiIndex{2, 1}, {Rational(1, 2), Rational(1, 2)}, {MultiIndex{3, 0}, MultiIndex{1, 2}}};
  const auto r = verify_newton_multivariate(power_of_sum(2, 3), af, NewtonClass::pairwise);
  c.expect(r.exact_holds && *r.exact_holds, "(x1+x2)^3 pairwise bound exact");
  c.expect(r.exact_equality && *r.exact_equality, "(x1+x2)^3 pairwise bound is tight");
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "cycle polynomial derivatives and deficit", 1, criterion_cycle},
      {2, "lifted t+t^3 example", 5, criterion_lifted},
      {3, "equality cases of the main bound", 5, criterion_equality},
      {4, "doubly stochastic suite", 60, criterion_doubly_stochastic},
      {5, "constants L, vdw, g", 1, criterion_constants},
      {6, "propagatable sequences both directions", 5, criterion_propagation},
      {7, "inner product bounds", 30, criterion_inner},
      {8, "D-convexity of supports", 30, criterion_dconvex},
      {9, "property suites", 120, criterion_properties},
      {10, "multivariate Newton inequalities", 10, criterion_newton},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs < cr.budget_seconds;
    const bool pass = error.empty() && check.ok() && in_budget;
    if (!pass) ++failed;
    std::printf("[%s] criterion %2d: %s (%.3f s, budget %.0f s; %s%s%s)\n", pass ? "PASS" : "FAIL", cr.id,
                cr.name.c_str(), secs, cr.budget_seconds, check.summary().c_str(),
                error.empty() ? "" : "; exception: ", error.c_str());
    if (!in_budget) std::printf("           over budget\n");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
