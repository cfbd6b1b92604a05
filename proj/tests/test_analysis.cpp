// Capacity solver, log-concavity, propagatable sequences, inequality verifiers and suites.

#include <gtest/gtest.h>

#include <cmath>

#include "logcap/logcap.hpp"
#include "oracles.hpp"

using namespace logcap;

namespace {

SparsePoly sum2() { return SparsePoly::variable(2, 0) + SparsePoly::variable(2, 1); }
SparsePoly sq2() { return power(sum2(), 2); }
SparsePoly uni(std::vector<Rational> c) { return SparsePoly::univariate(c); }
Rational h() { return Rational(1, 2); }

const BoundReport& by_id(const std::vector<BoundReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.id == id) return r;
  throw std::out_of_range("no report " + id);
}

}  // namespace

// ---------------------------------------------------------------------------
// capacity

TEST(Capacity, ClosedFormExamples) {
  EXPECT_NEAR(capacity(sq2()).value, 4.0, 1e-9);
  EXPECT_NEAR(capacity(prod_poly(uniform_doubly_stochastic(4))).value, 1.0, 1e-9);
  EXPECT_NEAR(capacity(lifted_t_plus_t_cubed()).value, 32.0, 32e-9);
  const auto mono = c_f_at(SparsePoly::monomial(MultiIndex{1, 1}), MultiIndex{1, 1});
  EXPECT_NEAR(mono.value, 1.0, 1e-12);
  EXPECT_NEAR(c_f_at(ExpLinearFixture({1}), MultiIndex{1}).value, std::exp(1.0), 1e-12);
}

TEST(Capacity, FaceRestrictedTarget) {
  // inf (x1+x2)^2 / (x1/2)^2 is approached as x2 -> 0 and equals 4.
  const auto r = c_f_at(sq2(), MultiIndex{2, 0});
  EXPECT_EQ(r.status, CapacityStatus::face_restricted);
  EXPECT_NEAR(r.value, 4.0, 1e-12);
  EXPECT_EQ(r.face_terms, 1u);
  const double grid = oracle::grid_log_capacity(sq2(), {2.0, 0.0}, 20.0, 0.5);
  EXPECT_NEAR(std::exp(grid), 4.0, 1e-6);
}

TEST(Capacity, ZeroOutsideNewtonPolytope) {
  const auto r = c_f_at(sq2(), MultiIndex{3, 0});
  EXPECT_EQ(r.status, CapacityStatus::zero);
  EXPECT_EQ(r.value, 0.0);
}

TEST(Capacity, MinimizerSurvivesRandomProbes) {
  const SparsePoly p = cycle_polynomial(2);
  const MultiIndex r = MultiIndex::ones(4);
  const auto c = c_f_at(p, r);
  ASSERT_EQ(c.status, CapacityStatus::attained);
  ASSERT_TRUE(c.minimizer);
  std::vector<double> y(4);
  for (int i = 0; i < 4; ++i) y[i] = std::log((*c.minimizer)[i]);
  const double best = c_f_objective(p, r, y);
  Rng rng(derive_seed(1, "probe"));
  for (int k = 0; k < 100; ++k) {
    std::vector<double> z(4);
    for (int i = 0; i < 4; ++i) z[i] = y[i] + rng.uniform(-2.0, 2.0);
    EXPECT_GE(c_f_objective(p, r, z), best - 1e-7);
  }
}

TEST(Capacity, UnscaledVariantDropsTheScaling) {
  // inf (x1+x2)^2 / (x1 x2) = 4 with l = (1,1); the scaled form has the same value as 1^1 = 1.
  const RationalPoint l{1, 1};
  EXPECT_NEAR(capacity_at(sq2(), l, false).value, 4.0, 1e-9);
  const RationalPoint hp{Rational(1, 2), Rational(3, 2)};
  // inf (x1+x2)^2 / (x1^{1/2} x2^{3/2}) is attained at x = (1/4, 3/4).
  const double expect = 1.0 / (std::pow(0.25, 0.5) * std::pow(0.75, 1.5));
  EXPECT_NEAR(capacity_at(sq2(), hp, false).value, expect, 1e-8);
}

// ---------------------------------------------------------------------------
// log-concavity

TEST(LogConcavity, LcMemberExamples) {
  EXPECT_TRUE(lc_member(std::vector<Rational>{1, 1, 1}));
  EXPECT_TRUE(lc_member(std::vector<Rational>{1, 2, 1}));
  EXPECT_FALSE(lc_member(std::vector<Rational>{1, 1, 2}));
}

TEST(LogConcavity, NewtonChecks) {
  EXPECT_TRUE(n_newton_check(uni({2, 3, 1}), 2));
  EXPECT_FALSE(n_newton_check(uni({1, 1, 1}), 2));
  EXPECT_FALSE(n_newton_check(uni({0, 1, 0, 1}), 4));
  const auto d = newton_sequence(uni({0, 1, 0, 1}), 4);
  EXPECT_EQ(d, (std::vector<Rational>{0, Rational(1, 4), 0, Rational(1, 4), 0}));
}

TEST(LogConcavity, ExactUnivariateSlc) {
  std::vector<Rational> expo;
  for (unsigned i = 0; i <= 6; ++i) expo.push_back(Rational(1) / Rational(factorial(i)));
  EXPECT_TRUE(slc_exact_univariate(expo));
  EXPECT_FALSE(slc_exact_univariate({1, 1, 1}));
  EXPECT_FALSE(slc_exact_univariate({0, 1, 0, 1}));
}

TEST(LogConcavity, RealRootedness) {
  EXPECT_TRUE(real_rooted_check(uni({2, 3, 1})));
  EXPECT_FALSE(real_rooted_check(uni({1, 1, 1})));
  EXPECT_TRUE(real_rooted_check(uni({1, 2, 1})));
  EXPECT_FALSE(real_rooted_check(UniPoly(std::vector<Rational>{-2, 0, 1})));  // root at sqrt(2) > 0
}

TEST(LogConcavity, SampledVerdicts) {
  SlcOptions opt;
  opt.seed = 7;
  const auto sq = slc_sampled(sq2(), opt);
  EXPECT_EQ(sq.status, SlcStatus::certified);
  EXPECT_EQ(sq.route, "exact-bivariate-newton");

  const auto q = slc_sampled(lifted_t_plus_t_cubed(), opt);
  EXPECT_EQ(q.status, SlcStatus::refuted);
  ASSERT_TRUE(q.witness);
  EXPECT_GT(q.witness->max_eigenvalue, 0.0);

  const auto dc = slc_sampled(d_concave_not_log_concave(), opt);
  EXPECT_EQ(dc.status, SlcStatus::refuted);

  SparsePoly cubes(2);
  cubes.add_term(MultiIndex{3, 0}, 1).add_term(MultiIndex{0, 3}, 1);
  EXPECT_EQ(slc_sampled(cubes, opt).status, SlcStatus::refuted);
}

TEST(LogConcavity, HStableCorpusIsNeverRefuted) {
  SlcOptions opt;
  opt.samples = 40;
  opt.seed = 3;
  for (const auto& f : hstable_fixtures()) {
    if (f.poly.num_vars() > 4) continue;  // sampling cost grows with the derivative box
    EXPECT_NE(slc_sampled(f.poly, opt).status, SlcStatus::refuted) << f.name;
  }
}

TEST(LogConcavity, SampledVerdictIsDeterministic) {
  SlcOptions opt;
  opt.seed = 99;
  opt.samples = 30;
  const auto a = slc_sampled(d_concave_not_log_concave(), opt);
  const auto b = slc_sampled(d_concave_not_log_concave(), opt);
  ASSERT_TRUE(a.witness && b.witness);
  EXPECT_EQ(a.witness->point, b.witness->point);
  EXPECT_EQ(a.witness->derivative, b.witness->derivative);
}

TEST(LogConcavity, RootConcavityResidualOfLiftedExample) {
  const UniPoly p(std::vector<Rational>{0, 1, 0, 1});
  for (int k = -5; k <= 5; ++k) {
    Rational t(k, 3);
    t.canonicalize();
    const Rational s = t * t - 1;
    EXPECT_EQ(root_concavity_residual(p, 4, t), s * s);
  }
}

// ---------------------------------------------------------------------------
// sequences

TEST(Sequences, PropagatableExamples) {
  const auto b = WeightSequence::falling_factorials(4);
  EXPECT_EQ(b.c(), (std::vector<Rational>{4, 3, 2, 1}));
  EXPECT_TRUE(propagatable_check(b));
  EXPECT_TRUE(propagatable_check(WeightSequence({1, 1, 1})));
  const WeightSequence bad({1, 1, 3, 3});
  EXPECT_EQ(bad.c(), (std::vector<Rational>{1, Rational(1, 3), 1}));
  EXPECT_FALSE(propagatable_check(bad));
}

TEST(Sequences, ShiftExponential) {
  const ShiftOperator s(std::vector<Rational>(4, Rational(1)));
  const std::vector<Rational> x{1, 2, 3, 4, 5};
  EXPECT_EQ(shift_exp_apply(s, 0, x), x);
  const Rational t(3, 2);
  const auto e = shift_exp_apply(s, t, {0, 0, 0, 0, 1});
  for (std::size_t j = 0; j < 5; ++j)
    EXPECT_EQ(e[j], pow(t, 4 - j) / Rational(factorial(4 - j)));
}

TEST(Sequences, MomentsFollowTheShiftFlow) {
  const auto b = WeightSequence::falling_factorials(3);
  const UniPoly p(std::vector<Rational>{6, 11, 6, 1});
  const ShiftOperator s = ShiftOperator::of(b);
  for (const Rational t : {Rational(0), Rational(1, 2), Rational(2), Rational(-3, 4)})
    EXPECT_EQ(moment_vector(b, p, t), shift_exp_apply(s, t, moment_vector(b, p, 0)));
}

TEST(Sequences, TrajectoryExamples) {
  const std::vector<Rational> grid{0, Rational(1, 2), 1, 2, 5};
  const auto rep = lc_trajectory_check(WeightSequence::falling_factorials(2), UniPoly(std::vector<Rational>{2, 3, 1}), grid);
  EXPECT_TRUE(rep.precondition);
  EXPECT_TRUE(rep.all_in_lc);
  for (const auto& pt : rep.points) EXPECT_TRUE(pt.matches_flow);
  const auto flat = lc_trajectory_check(WeightSequence({3, 1, 2}), UniPoly(std::vector<Rational>{5}), grid);
  EXPECT_TRUE(flat.all_in_lc);
}

TEST(Sequences, FrozenNonPropagatableExit) {
  const WeightSequence b({1, 1, 3, 3});
  const UniPoly p(std::vector<Rational>{1, 1, Rational(1, 6), Rational(1, 18)});
  const auto rep = lc_trajectory_check(b, p, {0, Rational(1, 2), 1, 2, 5});
  EXPECT_FALSE(rep.propagatable);
  EXPECT_TRUE(rep.precondition);
  EXPECT_FALSE(rep.all_in_lc);
  ASSERT_TRUE(rep.first_exit);
  EXPECT_EQ(*rep.first_exit, Rational(1, 2));
}

TEST(Sequences, DiscreteStep) {
  const ShiftOperator ones(std::vector<Rational>(4, Rational(1)));
  const auto img = shift_step_apply(ones, 1, std::vector<Rational>(5, Rational(1)));
  EXPECT_EQ(img, (std::vector<Rational>{2, 2, 2, 2, 1}));
  EXPECT_TRUE(lc_member(img));
  const auto good = discrete_step_check(ShiftOperator::of(WeightSequence::falling_factorials(5)), 1, 1000, 17);
  EXPECT_TRUE(good.concave_weights);
  EXPECT_EQ(good.violations, 0u);
}

TEST(Sequences, DiscreteStepFrozenViolation) {
  // c = (1, 1/3, 1) is not concave; d = (1,1,1,1) is in LC but (I + S) d = (2, 4/3, 2, 1) is not.
  const ShiftOperator s(std::vector<Rational>{1, Rational(1, 3), 1});
  const auto img = shift_step_apply(s, 1, {1, 1, 1, 1});
  EXPECT_EQ(img, (std::vector<Rational>{2, Rational(4, 3), 2, 1}));
  EXPECT_FALSE(lc_member(img));
  const auto rep = discrete_step_check(s, 1, 1000, 17);
  EXPECT_FALSE(rep.concave_weights);
  EXPECT_GT(rep.violations, 0u);
  ASSERT_TRUE(rep.first_violation);
  EXPECT_TRUE(lc_member(*rep.first_violation));
}

// ---------------------------------------------------------------------------
// constants

TEST(Constants, LValues) {
  EXPECT_EQ(compute_L(1).value, 1.0);
  EXPECT_NEAR(compute_L(2).value, 1.0 / (1.0 + std::sqrt(2.0)), 1e-10);
  for (unsigned n = 1; n <= 50; ++n) {
    const auto l = compute_L(n);
    EXPECT_GT(l.excess_over_inv_e, 0.0) << n;
    EXPECT_NEAR(l.value, std::exp(-1.0) + l.excess_over_inv_e, 1e-12) << n;
    EXPECT_LE(l.value, 1.0) << n;
    EXPECT_LE(l.lower, l.upper) << n;
  }
}

TEST(Constants, ExactMonotonicity) {
  EXPECT_EQ(vdw(3), Rational(2, 9));
  EXPECT_EQ(vdw(4), Rational(3, 32));
  for (unsigned n = 1; n < 30; ++n) EXPECT_LT(vdw(n + 1), vdw(n));
  for (unsigned k = 2; k < 30; ++k) {
    EXPECT_LT(g_constant(k + 1), g_constant(k));
    EXPECT_GT(to_double(g_constant(k)), std::exp(-1.0));
  }
  EXPECT_EQ(VDW(MultiIndex{2, 0}), Rational(1, 2));
  EXPECT_EQ(VDW(MultiIndex{1, 1}), 1);
}

// ---------------------------------------------------------------------------
// verifiers

TEST(Verifiers, MainTheoremEqualityAndViolation) {
  const auto r3 = verify_main_thm(power_of_sum(3, 3), BoundKind::homogeneous);
  const auto& low = by_id(r3, "der-lower-homogeneous");
  EXPECT_NEAR(low.left, 6.0, 1e-12);
  EXPECT_NEAR(low.right, 6.0, 1e-6);
  EXPECT_EQ(low.verdict, Verdict::holds);

  const auto e2 = verify_main_thm(ExpLinearFixture({1, 1}));
  const auto& el = by_id(e2, "der-lower-entire");
  EXPECT_NEAR(el.left, 1.0, 1e-12);
  EXPECT_NEAR(el.right, 1.0, 1e-12);

  const auto q = verify_main_thm(lifted_t_plus_t_cubed(), BoundKind::homogeneous, Provenance::user);
  const auto& ql = by_id(q, "der-lower-homogeneous");
  EXPECT_EQ(ql.verdict, Verdict::violated);
  EXPECT_FALSE(ql.guaranteed);
  EXPECT_NEAR(ql.right, 3.0, 1e-6);  // vdw(4) * 32
}

TEST(Verifiers, MonomialBounds) {
  const auto sq = verify_monomial_bounds(sq2(), MultiIndex{2, 0}, BoundKind::entire);
  for (const auto& r : sq) EXPECT_EQ(r.verdict, Verdict::holds) << r.id;
  const auto mono = verify_monomial_bounds(SparsePoly::monomial(MultiIndex{1, 1}), MultiIndex{1, 1}, BoundKind::homogeneous);
  for (const auto& r : mono) {
    EXPECT_EQ(r.verdict, Verdict::holds);
    EXPECT_NEAR(r.left, 1.0, 1e-9);
  }
  const auto cyc = verify_monomial_bounds(cycle_polynomial(2), MultiIndex::ones(4), BoundKind::homogeneous);
  for (const auto& r : cyc) EXPECT_EQ(r.verdict, Verdict::holds) << r.id;
}

TEST(Verifiers, Schrijver) {
  for (const auto& r : verify_schrijver(cycle_polynomial(2), 2)) EXPECT_EQ(r.verdict, Verdict::holds) << r.id;
  const auto reg = verify_schrijver(prod_poly(regular_bipartite_matrix(6, 3)), 3);
  for (const auto& r : reg) {
    EXPECT_EQ(r.verdict, Verdict::holds) << r.id;
    EXPECT_GT(r.slack, 0.0) << r.id;
  }
  // k = n reduces to the plain homogeneous bound.
  const auto u = verify_schrijver(prod_poly(uniform_doubly_stochastic(3)), 3);
  const auto m = verify_main_thm(prod_poly(uniform_doubly_stochastic(3)), BoundKind::homogeneous);
  EXPECT_NEAR(by_id(u, "schrijver-lower").right, by_id(m, "der-lower-homogeneous").right, 1e-9);
}

TEST(Verifiers, InnerProduct) {
  const auto r = verify_inner_product(sq2(), sq2(), {1, 1});
  EXPECT_EQ(r.inner, 6);
  EXPECT_NEAR(r.a, 4.0, 1e-6);
  EXPECT_NEAR(r.b, 4.0, 1e-6);
  EXPECT_NEAR(by_id(r.bounds, "inner-product-lower").right, 6.0, 1e-6);
  const SparsePoly m = SparsePoly::monomial(MultiIndex{1, 1});
  const auto rm = verify_inner_product(m, m, {1, 1});
  EXPECT_NEAR(by_id(rm.bounds, "inner-product-lower").right, 3.0 / 8.0, 1e-9);
  const Rational h(1, 2);
  const auto e = verify_inner_product(elementary_symmetric(4, 2), elementary_symmetric(4, 2), {h, h, h, h});
  EXPECT_EQ(by_id(e.bounds, "inner-product-multilinear").verdict, Verdict::holds);
  EXPECT_TRUE(*by_id(e.bounds, "inner-product-multilinear").exact_holds);
}

TEST(Verifiers, NewtonMultivariate) {
  for (unsigned n = 2; n <= 5; ++n) {
    std::vector<MultiIndex> ys;
    for (unsigned i = 0; i < n; ++i) ys.push_back(MultiIndex::unit(n, i, static_cast<int>(n)));
    NewtonDecomposition d{MultiIndex::ones(n), std::vector<Rational>(n, Rational(1, static_cast<long>(n))), ys};
    const auto r = verify_newton_multivariate(power_of_sum(n, n), d, NewtonClass::homogeneous);
    EXPECT_EQ(r.verdict, Verdict::holds);
    ASSERT_TRUE(r.exact_holds);
    EXPECT_TRUE(*r.exact_holds);
    EXPECT_NEAR(r.slack, 0.0, 1e-9 * r.left);
  }
  NewtonDecomposition af{MultiIndex{2, 1}, {h(), h()}, {MultiIndex{3, 0}, MultiIndex{1, 2}}};
  const auto a = verify_newton_multivariate(power_of_sum(2, 3), af, NewtonClass::pairwise);
  EXPECT_TRUE(*a.exact_holds);
  EXPECT_THROW(verify_newton_multivariate(power_of_sum(2, 3),
                                          NewtonDecomposition{MultiIndex{2, 1}, {h(), h()}, {MultiIndex{3, 0}, MultiIndex{0, 3}}},
                                          NewtonClass::pairwise),
               std::invalid_argument);
}

TEST(Verifiers, CfMidpoint) {
  const auto m = cf_midpoint_check(SparsePoly::monomial(MultiIndex{2, 2}), MultiIndex{2, 2}, MultiIndex{2, 2});
  EXPECT_NEAR(m.report.slack, 0.0, 1e-9);
  const auto f4 = cf_midpoint_check(power_of_sum(2, 4), MultiIndex{4, 0}, MultiIndex{0, 4});
  EXPECT_EQ(f4.report.verdict, Verdict::holds);
  const auto t = cycle_targets(2);
  EXPECT_EQ(cf_midpoint_check(cycle_polynomial(2), t[1], t[2]).report.verdict, Verdict::holds);
  for (std::size_t n : {2, 3, 4}) {
    const auto c = cycle_targets(n);
    EXPECT_NEAR(der_midpoint_deficit(cycle_polynomial(n), c[0], c[1], c[2]), -(double(n) - 1) * std::log(2.0), 1e-12);
  }
}

TEST(Verifiers, VanDerWaerdenOnMatrices) {
  const auto u = vdw_bounds_check(uniform_doubly_stochastic(4));
  EXPECT_NEAR(by_id(u, "permanent-lower").slack, 0.0, 1e-15);
  EXPECT_TRUE(*by_id(u, "permanent-lower").exact_holds);
  RationalMatrix perm(3);
  perm(0, 1) = perm(1, 2) = perm(2, 0) = 1;
  const auto p = vdw_bounds_check(perm);
  EXPECT_EQ(by_id(p, "permanent-upper").slack, 0.0);
  for (const auto& r : p) EXPECT_EQ(r.verdict, Verdict::holds) << r.id;
}

// ---------------------------------------------------------------------------
// suites

TEST(Suites, EveryGuaranteedReportHolds) {
  const auto all = run_suite("all", 7, 1e-10);
  EXPECT_FALSE(all.guaranteed_violation);
  std::size_t bounds = 0, flagged = 0;
  for (const auto& r : all.records) {
    if (r["kind"] != "bound") continue;
    ++bounds;
    if (r["guaranteed"].get<bool>())
      EXPECT_EQ(r["verdict"], "holds") << r.dump();
    else if (r["verdict"] == "violated")
      ++flagged;
  }
  EXPECT_GT(bounds, 50u);
  EXPECT_EQ(flagged, 1u);  // the lifted t + t^3 example, tagged as a user input
}

TEST(Suites, DeterministicForAFixedSeed) {
  EXPECT_EQ(run_suite("cf", 5, 1e-10).records.dump(), run_suite("cf", 5, 1e-10).records.dump());
  EXPECT_THROW(run_suite("nope", 0, 1e-10), std::invalid_argument);
}
