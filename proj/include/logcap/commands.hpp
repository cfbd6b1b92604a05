#pragma once

// Command implementations behind the CLI. Each returns JSON records plus a flag
// telling whether any guaranteed-class check was violated.

#include <string>
#include <vector>

#include "logcap/capacity.hpp"
#include "logcap/fixtures.hpp"
#include "logcap/inequalities.hpp"
#include "logcap/json_io.hpp"
#include "logcap/log_concavity.hpp"
#include "logcap/permanent.hpp"
#include "logcap/sequences.hpp"
#include "logcap/support_geometry.hpp"

namespace logcap {

struct CommandResult {
  Json records = Json::array();
  bool guaranteed_violation = false;

  void add(Json record) { records.push_back(std::move(record)); }
  void add(const BoundReport& r, const std::string& subject = {}) {
    Json j = to_json(r);
    if (!subject.empty()) j["subject"] = subject;
    if (r.guaranteed && r.verdict == Verdict::violated) guaranteed_violation = true;
    if (r.guaranteed && r.exact_holds && !*r.exact_holds) guaranteed_violation = true;
    records.push_back(std::move(j));
  }
  void add(const std::vector<BoundReport>& rs, const std::string& subject = {}) {
    for (const auto& r : rs) add(r, subject);
  }
  void merge(CommandResult&& other) {
    for (auto& r : other.records) records.push_back(std::move(r));
    guaranteed_violation = guaranteed_violation || other.guaranteed_violation;
  }
};

inline CapacityOptions capacity_options(double tol) {
  CapacityOptions opt;
  opt.tolerance = tol;
  return opt;
}

inline CommandResult cmd_cap(const PolyInput& in, const std::optional<RationalPoint>& target, bool unscaled, double tol) {
  CommandResult out;
  RationalPoint t = target ? *target : RationalPoint(in.poly.num_vars(), Rational(1));
  Json j = to_json(capacity_at(in.poly, t, !unscaled, capacity_options(tol)));
  std::string ts;
  for (const auto& v : t) ts += (ts.empty() ? "" : ",") + to_string(v);
  j["target"] = "(" + ts + ")";
  j["scaled"] = !unscaled;
  out.add(j);
  return out;
}

/// C_f(R) together with the upper bound (all inputs) and the e^{-|R|} lower bound.
inline CommandResult cmd_cfr(const PolyInput& in, const MultiIndex& r, double tol) {
  CommandResult out;
  Json j = to_json(c_f_at(in.poly, r, capacity_options(tol)));
  j["target"] = r.str();
  j["der"] = to_string(der_at_zero(in.poly, r));
  out.add(j);
  out.add(verify_monomial_bounds(in.poly, r, BoundKind::entire, in.provenance, capacity_options(tol)), in.name);
  return out;
}

inline CommandResult cmd_der(const PolyInput& in, const MultiIndex& r) {
  CommandResult out;
  Rational d = der_at_zero(in.poly, r);
  out.add(Json{{"kind", "der"}, {"target", r.str()}, {"exact", to_string(d)}, {"value", to_double(d)}});
  return out;
}

inline CommandResult cmd_slc(const PolyInput& in, std::size_t samples, std::uint64_t seed) {
  CommandResult out;
  SlcOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  Json j = to_json(slc_sampled(in.poly, opt));
  j["samples"] = samples;
  j["seed"] = seed;
  out.add(j);
  return out;
}

inline CommandResult cmd_dconvex(const PolyInput& in) {
  CommandResult out;
  out.add(to_json(d_convex_check(SupportSet::of(in.poly))));
  return out;
}

inline CommandResult cmd_rado(const PolyInput& in) {
  CommandResult out;
  out.add(to_json(rado_check(in.poly)));
  out.add(to_json(submodularity_check(DegFunction::of(in.poly))));
  return out;
}

inline CommandResult cmd_propagate(const WeightSequence& b, const PolyInput& in, const std::vector<Rational>& grid) {
  CommandResult out;
  out.add(to_json(lc_trajectory_check(b, UniPoly::from_sparse(in.poly), grid)));
  return out;
}

inline CommandResult cmd_perm(const RationalMatrix& a, bool check_vdw, bool scale, double tol) {
  CommandResult out;
  RationalMatrix m = a;
  if (scale) {
    SinkhornResult s = sinkhorn(a.cast<double>());
    m = rationalize_doubly_stochastic(s.scaled);
    out.add(Json{{"kind", "sinkhorn"}, {"iterations", s.iterations}, {"deviation", s.deviation},
                 {"dropped_entries", s.dropped_entries}});
  }
  Rational per = ryser_permanent(m);
  out.add(Json{{"kind", "permanent"}, {"n", m.n()}, {"exact", to_string(per)}, {"value", to_double(per)}});
  if (check_vdw) out.add(vdw_bounds_check(m, capacity_options(tol)), "matrix");
  return out;
}

inline CommandResult cmd_inner(const PolyInput& p, const PolyInput& q, const RationalPoint& l, double tol) {
  CommandResult out;
  const Provenance prov =
      p.provenance == Provenance::constructive && q.provenance == Provenance::constructive ? Provenance::constructive
                                                                                           : Provenance::user;
  auto rep = verify_inner_product(p.poly, q.poly, l, prov, capacity_options(tol));
  out.add(Json{{"kind", "inner"}, {"exact", to_string(rep.inner)}, {"A", rep.a}, {"B", rep.b}});
  out.add(rep.bounds);
  return out;
}

inline CommandResult cmd_verify_poly(const PolyInput& in, BoundKind kind, double tol) {
  CommandResult out;
  out.add(verify_main_thm(in.poly, kind, in.provenance, capacity_options(tol)), in.name);
  return out;
}

// ---------------------------------------------------------------------------
// Built-in verification suites over the fixture corpus.

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"main", "monomial", "schrijver", "inner", "newton",
                                              "cf",   "vdw",      "deficit",   "support"};
  return names;
}

inline CommandResult run_suite(const std::string& name, std::uint64_t seed, double tol) {
  const CapacityOptions opt = capacity_options(tol);
  CommandResult out;
  if (name == "all") {
    for (const auto& s : suite_names()) out.merge(run_suite(s, seed, tol));
    return out;
  }
  if (name == "main") {
    for (unsigned n = 1; n <= 5; ++n)
      out.add(verify_main_thm(power_of_sum(n, n), BoundKind::homogeneous, Provenance::constructive, opt),
              "power_sum_" + std::to_string(n));
    for (std::size_t n : {2, 3})
      out.add(verify_main_thm(cycle_polynomial(n), BoundKind::homogeneous, Provenance::constructive, opt),
              "cycle_" + std::to_string(n));
    out.add(verify_main_thm(prod_poly(uniform_doubly_stochastic(4)), BoundKind::homogeneous, Provenance::constructive,
                            opt),
            "prod_uniform_4");
    out.add(verify_main_thm(ExpLinearFixture({1, 1})), "exp_linear_1_1");
    out.add(verify_main_thm(ExpLinearFixture({Rational(1, 2), 2, 3})), "exp_linear_half_2_3");
    for (std::size_t n : {2, 3, 4}) {
      SparsePoly p = SparsePoly::constant(n, 1);
      for (std::size_t i = 0; i < n; ++i) p = multiply(p, SparsePoly::constant(n, 1) + SparsePoly::variable(n, i));
      out.add(verify_main_thm(p, BoundKind::polynomial, Provenance::constructive, opt),
              "prod_one_plus_x_" + std::to_string(n));
      out.add(verify_main_thm(p, BoundKind::entire, Provenance::constructive, opt),
              "prod_one_plus_x_" + std::to_string(n));
    }
    out.add(verify_main_thm(lifted_t_plus_t_cubed(), BoundKind::homogeneous, Provenance::user, opt), "lifted_t_plus_t3");
    return out;
  }
  if (name == "monomial") {
    out.add(verify_monomial_bounds(power_of_sum(2, 2), MultiIndex{2, 0}, BoundKind::homogeneous,
                                   Provenance::constructive, opt),
            "power_sum_2_2");
    out.add(verify_monomial_bounds(power_of_linear_form({1, 2}, 3), MultiIndex{1, 2}, BoundKind::homogeneous,
                                   Provenance::constructive, opt),
            "power_x1_2x2_3");
    out.add(verify_monomial_bounds(cycle_polynomial(2), MultiIndex::ones(4), BoundKind::homogeneous,
                                   Provenance::constructive, opt),
            "cycle_2");
    out.add(verify_monomial_bounds(SparsePoly::monomial(MultiIndex{1, 1}), MultiIndex{1, 1}, BoundKind::entire,
                                   Provenance::constructive, opt),
            "monomial_x1x2");
    for (const auto& r : cycle_targets(2))
      out.add(verify_monomial_bounds(cycle_polynomial(2), r, BoundKind::entire, Provenance::constructive, opt),
              "cycle_2");
    return out;
  }
  if (name == "schrijver") {
    for (std::size_t n : {2, 3}) out.add(verify_schrijver(cycle_polynomial(n), 2, Provenance::constructive, opt),
                                         "cycle_" + std::to_string(n));
    out.add(verify_schrijver(prod_poly(regular_bipartite_matrix(6, 3)), 3, Provenance::constructive, opt),
            "prod_regular_6_3");
    out.add(verify_schrijver(prod_poly(uniform_doubly_stochastic(4)), 4, Provenance::constructive, opt),
            "prod_uniform_4");
    return out;
  }
  if (name == "inner") {
    auto add = [&](const SparsePoly& p, const SparsePoly& q, const RationalPoint& l, const std::string& subject) {
      auto rep = verify_inner_product(p, q, l, Provenance::constructive, opt);
      out.add(rep.bounds, subject);
    };
    add(power_of_sum(2, 2), power_of_sum(2, 2), {1, 1}, "power_sum_2_2");
    add(SparsePoly::monomial(MultiIndex{1, 1}), SparsePoly::monomial(MultiIndex{1, 1}), {1, 1}, "monomial_x1x2");
    const Rational h(1, 2);
    add(elementary_symmetric(4, 2), elementary_symmetric(4, 2), {h, h, h, h}, "elementary_4_2");
    add(multiply(pair_sum(4, 0, 1), pair_sum(4, 2, 3)), multiply(pair_sum(4, 0, 2), pair_sum(4, 1, 3)), {h, h, h, h},
        "pairs_crossed");
    add(cycle_polynomial(2), cycle_polynomial(2), {1, 1, 1, 1}, "cycle_2");
    return out;
  }
  if (name == "newton") {
    for (unsigned n = 2; n <= 5; ++n) {
      std::vector<MultiIndex> ys;
      for (unsigned i = 0; i < n; ++i) ys.push_back(MultiIndex::unit(n, i, static_cast<int>(n)));
      NewtonDecomposition d{MultiIndex::ones(n), std::vector<Rational>(n, Rational(1, static_cast<long>(n))), ys};
      out.add(verify_newton_multivariate(power_of_sum(n, n), d, NewtonClass::homogeneous),
              "power_sum_" + std::to_string(n));
      out.add(verify_newton_multivariate(power_of_sum(n, n), d, NewtonClass::entire), "power_sum_" + std::to_string(n));
    }
    for (std::size_t n : {2, 3}) {
      auto t = cycle_targets(n);
      NewtonDecomposition d{t[0], {Rational(1, 2), Rational(1, 2)}, {t[1], t[2]}};
      out.add(verify_newton_multivariate(cycle_polynomial(n), d, NewtonClass::degree_bounded, 2),
              "cycle_" + std::to_string(n));
      out.add(verify_newton_multivariate(cycle_polynomial(n), d, NewtonClass::homogeneous), "cycle_" + std::to_string(n));
    }
    NewtonDecomposition af{MultiIndex{2, 1}, {Rational(1, 2), Rational(1, 2)}, {MultiIndex{3, 0}, MultiIndex{1, 2}}};
    out.add(verify_newton_multivariate(power_of_sum(2, 3), af, NewtonClass::pairwise), "power_sum_2_3");
    NewtonDecomposition af2{MultiIndex{1, 1, 1}, {Rational(1, 2), Rational(1, 2)},
                            {MultiIndex{2, 0, 1}, MultiIndex{0, 2, 1}}};
    out.add(verify_newton_multivariate(product_of_linear_forms({{1, 1, 0}, {0, 2, 1}, {1, 0, 3}}), af2,
                                       NewtonClass::pairwise),
            "mixed_forms_3");
    return out;
  }
  if (name == "cf") {
    for (const auto& t : verify_cf_logconcavity(power_of_sum(2, 4), 6, seed, Provenance::constructive, opt))
      out.add(t.report, "power_sum_2_4");
    for (const auto& t : verify_cf_logconcavity(cycle_polynomial(2), 6, seed, Provenance::constructive, opt))
      out.add(t.report, "cycle_2");
    for (const auto& t : verify_cf_logconcavity(SparsePoly::monomial(MultiIndex{1, 1}), 3, seed,
                                                Provenance::constructive, opt))
      out.add(t.report, "monomial_x1x2");
    auto t = cycle_targets(2);
    out.add(cf_midpoint_check(cycle_polynomial(2), t[1], t[2], Provenance::constructive, opt).report, "cycle_2");
    return out;
  }
  if (name == "vdw") {
    for (std::size_t n = 2; n <= 5; ++n)
      out.add(vdw_bounds_check(uniform_doubly_stochastic(n), opt), "uniform_" + std::to_string(n));
    out.add(vdw_bounds_check(RationalMatrix::identity(4), opt), "identity_4");
    out.add(vdw_bounds_check(regular_bipartite_matrix(6, 3), opt), "regular_6_3");
    Rng rng(derive_seed(seed, "suite-vdw"));
    for (std::size_t k = 0; k < 3; ++k) {
      auto a = random_rational_matrix(rng, 5, 1, 9, 1);
      out.add(vdw_bounds_check(rationalize_doubly_stochastic(sinkhorn(a.cast<double>()).scaled), opt),
              "sinkhorn_random_5_" + std::to_string(k));
    }
    return out;
  }
  if (name == "deficit") {
    for (std::size_t n : {2, 3, 4}) {
      auto t = cycle_targets(n);
      const double d = der_midpoint_deficit(cycle_polynomial(n), t[0], t[1], t[2]);
      out.add(Json{{"kind", "deficit"},
                   {"subject", "cycle_" + std::to_string(n)},
                   {"value", d},
                   {"expected", -static_cast<double>(n - 1) * std::log(2.0)}});
    }
    return out;
  }
  if (name == "support") {
    for (const auto& f : hstable_fixtures()) {
      Json d = to_json(d_convex_check(SupportSet::of(f.poly)));
      d["subject"] = f.name;
      out.add(d);
      if (f.poly.is_homogeneous()) {
        Json r = to_json(rado_check(f.poly));
        r["subject"] = f.name;
        if (!r["holds"].get<bool>()) out.guaranteed_violation = true;
        out.add(r);
      }
      if (!d["d_convex"].get<bool>()) out.guaranteed_violation = true;
    }
    return out;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace logcap
