#pragma once

// Named constants and verifiers for the Van der Waerden and Newton type bounds.
// Every verifier returns BoundReport records of the form  left >= right.

#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "logcap/capacity.hpp"
#include "logcap/exp_linear.hpp"
#include "logcap/fixtures.hpp"
#include "logcap/permanent.hpp"
#include "logcap/random.hpp"
#include "logcap/rational.hpp"
#include "logcap/report.hpp"
#include "logcap/sparse_poly.hpp"

namespace logcap {

// ---------------------------------------------------------------------------
// Constants.

/// n! / n^n, with vdw(0) = 1.
inline Rational vdw(unsigned long n) {
  if (n == 0) return 1;
  return Rational(factorial(n)) / pow(Rational(static_cast<long>(n)), n);
}

/// prod_i vdw(r_i)
inline Rational VDW(const MultiIndex& r) {
  Rational out = 1;
  for (int v : r) out *= vdw(static_cast<unsigned long>(v));
  return out;
}

/// ((k-1)/k)^{k-1}
inline Rational g_constant(unsigned long k) {
  if (k == 0) throw std::invalid_argument("g(k) needs k >= 1");
  return pow(Rational(static_cast<long>(k - 1), static_cast<long>(k)), k - 1);
}

/// ((k-1)/k)^{(k-1)(n-k)} vdw(k)
inline Rational schrijver_constant(unsigned long k, unsigned long n) {
  if (k == 0 || k > n) throw std::invalid_argument("schrijver constant needs 1 <= k <= n");
  return pow(Rational(static_cast<long>(k - 1), static_cast<long>(k)), (k - 1) * (n - k)) * vdw(k);
}

/// 1 + t + ... + t^n / n!
inline double exp_n(unsigned n, double t) {
  double term = 1.0, sum = 1.0;
  for (unsigned i = 1; i <= n; ++i) {
    term *= t / i;
    sum += term;
  }
  return sum;
}

struct LValue {
  double value = 1.0;
  double lower = 1.0;  // certified bracket for the value
  double upper = 1.0;
  double t_lo = 0.0;  // bracket for the minimizer of exp_n(t)/t
  double t_hi = 0.0;
  // L(n) - 1/e in 512-bit arithmetic. Past n ~ 18 the gap is below double resolution of
  // L(n) itself, so comparisons against 1/e must use this field.
  double excess_over_inv_e = 0.0;
};

namespace detail {

inline mpf_class inv_e_mpf(mp_bitcnt_t bits) {
  mpf_class sum(0, bits), term(1, bits);
  for (unsigned k = 0; k < 200; ++k) {
    if (k > 0) term /= k;
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

// max_t t / exp_n(t) by bisection on the stationarity condition, in `bits` precision.
inline mpf_class L_mpf(unsigned n, mp_bitcnt_t bits) {
  auto exp_n_mpf = [&](const mpf_class& t) {
    mpf_class sum(1, bits), term(1, bits);
    for (unsigned i = 1; i <= n; ++i) {
      term = term * t / i;
      sum += term;
    }
    return sum;
  };
  auto h = [&](const mpf_class& t) {
    mpf_class sum(-1, bits), term(1, bits);
    for (unsigned i = 1; i <= n; ++i) {
      term = term * t / i;
      if (i >= 2) sum += (i - 1) * term;
    }
    return sum;
  };
  mpf_class lo(1, bits), hi(n + 1, bits);
  for (int it = 0; it < 300; ++it) {
    mpf_class mid(0, bits);
    mid = (lo + hi) / 2;
    (sgn(h(mid)) < 0 ? lo : hi) = mid;
  }
  mpf_class t(0, bits);
  t = (lo + hi) / 2;
  mpf_class out(0, bits);
  out = t / exp_n_mpf(t);
  return out;
}

}  // namespace detail

/// L(n) = (inf_{t>0} exp_n(t)/t)^{-1}. The minimizer solves t exp_{n-1}(t) = exp_n(t), i.e.
/// h(t) = -1 + sum_{i=2}^n (i-1) t^i / i! = 0, which has exactly one positive root, in (1, n+1].
inline LValue compute_L(unsigned n) {
  if (n == 0) throw std::invalid_argument("L(n) needs n >= 1");
  LValue out;
  constexpr mp_bitcnt_t bits = 512;
  if (n == 1) {
    // exp_1(t)/t = 1 + 1/t decreases to 1 as t -> infinity.
    out.t_lo = out.t_hi = std::numeric_limits<double>::infinity();
    out.excess_over_inv_e = mpf_class(1 - detail::inv_e_mpf(bits)).get_d();
    return out;
  }
  out.excess_over_inv_e = mpf_class(detail::L_mpf(n, bits) - detail::inv_e_mpf(bits)).get_d();
  auto h = [n](double t) {
    double term = 1.0, sum = -1.0;
    for (unsigned i = 1; i <= n; ++i) {
      term *= t / i;
      if (i >= 2) sum += (i - 1) * term;
    }
    return sum;
  };
  double lo = 1.0, hi = n + 1.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (h(mid) < 0 ? lo : hi) = mid;
  }
  out.t_lo = lo;
  out.t_hi = hi;
  const double tm = 0.5 * (lo + hi);
  out.value = tm / exp_n(n, tm);
  // exp_n(t)/t over [lo, hi] is at least exp_n(lo)/hi, and the minimum is at most its value at tm.
  out.upper = hi / exp_n(n, lo);
  out.lower = out.value;
  return out;
}

/// prod_{i=1}^n L(i)
inline double L_product(unsigned n) {
  double out = 1.0;
  for (unsigned i = 1; i <= n; ++i) out *= compute_L(i).value;
  return out;
}

// ---------------------------------------------------------------------------
// Shared helpers.

inline std::string digest_of(const std::string& text) { return hex_digest(fnv1a(text)); }

inline std::string poly_digest(const SparsePoly& p, const std::string& extra = {}) {
  return digest_of(std::to_string(p.num_vars()) + ":" + p.str() + "|" + extra);
}

inline BoundReport make_report(std::string id, double left, double right, bool guaranteed, std::string digest) {
  BoundReport rep;
  rep.id = std::move(id);
  rep.left = left;
  rep.right = right;
  rep.guaranteed = guaranteed;
  rep.inputs_digest = std::move(digest);
  judge(rep);
  return rep;
}

inline BoundReport not_applicable(std::string id, std::string note, std::string digest) {
  BoundReport rep;
  rep.id = std::move(id);
  rep.verdict = Verdict::not_applicable;
  rep.note = std::move(note);
  rep.inputs_digest = std::move(digest);
  return rep;
}

/// Inputs built by the library are H-stable by construction; anything else is a user claim.
inline bool guaranteed_for(Provenance p) { return p == Provenance::constructive; }

// ---------------------------------------------------------------------------
// Capacity sandwiches.

enum class BoundKind { entire, homogeneous, polynomial };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::entire: return "entire";
    case BoundKind::homogeneous: return "homogeneous";
    case BoundKind::polynomial: return "polynomial";
  }
  return "?";
}

/// Cap(p) >= Der_p(1..1) >= c Cap(p), with c = e^{-n}, vdw(n) or prod_{i<=n} L(i) by kind.
inline std::vector<BoundReport> verify_main_thm(const SparsePoly& p, BoundKind kind,
                                                Provenance prov = Provenance::constructive,
                                                const CapacityOptions& opt = {}) {
  const std::size_t n = p.num_vars();
  const std::string digest = poly_digest(p, to_string(kind));
  const MultiIndex ones = MultiIndex::ones(n);
  const Rational der = der_at_zero(p, ones);
  const bool guaranteed = guaranteed_for(prov);
  std::vector<BoundReport> out;

  if (kind == BoundKind::homogeneous && p.homogeneous_degree() != static_cast<int>(n))
    return {not_applicable("der-lower-homogeneous", "polynomial is not homogeneous of degree n", digest)};
  if (kind == BoundKind::polynomial && p.total_degree() > static_cast<int>(n))
    return {not_applicable("der-lower-polynomial", "total degree exceeds the number of variables", digest)};

  const CapacityResult cap = capacity(p, opt);
  auto upper = make_report("capacity-upper", cap.value, to_double(der), guaranteed, digest);
  upper.constants["cap"] = cap.value;
  upper.constants["der"] = to_double(der);
  out.push_back(upper);

  double constant = 0.0;
  std::string id;
  switch (kind) {
    case BoundKind::entire:
      constant = std::exp(-static_cast<double>(n));
      id = "der-lower-entire";
      break;
    case BoundKind::homogeneous:
      constant = to_double(vdw(n));
      id = "der-lower-homogeneous";
      break;
    case BoundKind::polynomial:
      constant = L_product(static_cast<unsigned>(n));
      id = "der-lower-polynomial";
      break;
  }
  auto lower = make_report(id, to_double(der), constant * cap.value, guaranteed, digest);
  lower.constants["constant"] = constant;
  lower.constants["cap"] = cap.value;
  lower.constants["der"] = to_double(der);
  if (!guaranteed) lower.note = "hypotheses unverified for user input; reported, not guaranteed";
  out.push_back(lower);
  return out;
}

/// Same sandwich for exp(<a, x>), whose capacity and derivatives are closed forms.
inline std::vector<BoundReport> verify_main_thm(const ExpLinearFixture& f) {
  const std::size_t n = f.num_vars();
  std::string rates;
  for (const auto& a : f.rates()) rates += to_string(a) + ",";
  const std::string digest = digest_of("exp-linear:" + rates);
  const double cap = f.capacity();
  const double der = to_double(f.der_at_zero(MultiIndex::ones(n)));
  const double constant = std::exp(-static_cast<double>(n));
  auto upper = make_report("capacity-upper", cap, der, true, digest);
  auto lower = make_report("der-lower-entire", der, constant * cap, true, digest);
  lower.constants["constant"] = constant;
  lower.constants["cap"] = cap;
  lower.constants["der"] = der;
  return {upper, lower};
}

/// VDW(R) C_f(R) >= Der_f(R); holds for every polynomial with nonnegative coefficients.
inline BoundReport verify_capacity_upper(const SparsePoly& p, const MultiIndex& r, const CapacityOptions& opt = {}) {
  const std::string digest = poly_digest(p, r.str());
  const CapacityResult c = c_f_at(p, r, opt);
  const double vdw_r = to_double(VDW(r));
  auto rep = make_report("capacity-upper", vdw_r * c.value, to_double(der_at_zero(p, r)), true, digest);
  rep.constants["VDW"] = vdw_r;
  rep.constants["c_f"] = c.value;
  return rep;
}

/// VDW(R) C_f(R) >= Der_f(R) >= c C_f(R), c = e^{-|R|} (entire) or vdw(n) (homogeneous, |R| = n).
inline std::vector<BoundReport> verify_monomial_bounds(const SparsePoly& p, const MultiIndex& r, BoundKind kind,
                                                       Provenance prov = Provenance::constructive,
                                                       const CapacityOptions& opt = {}) {
  const std::string digest = poly_digest(p, r.str() + to_string(kind));
  const bool guaranteed = guaranteed_for(prov);
  const CapacityResult c = c_f_at(p, r, opt);
  const Rational der = der_at_zero(p, r);
  const double vdw_r = to_double(VDW(r));
  auto upper = make_report("capacity-upper", vdw_r * c.value, to_double(der), true, digest);
  upper.constants["VDW"] = vdw_r;
  upper.constants["c_f"] = c.value;

  double constant;
  std::string id;
  if (kind == BoundKind::homogeneous) {
    const auto deg = p.homogeneous_degree();
    if (!deg || *deg != r.total())
      return {upper, not_applicable("der-lower-homogeneous", "needs homogeneous p with |R| = deg p", digest)};
    constant = to_double(vdw(static_cast<unsigned long>(*deg)));
    id = "der-lower-homogeneous";
  } else if (kind == BoundKind::entire) {
    constant = std::exp(-static_cast<double>(r.total()));
    id = "der-lower-entire";
  } else {
    return {upper, not_applicable("der-lower-polynomial", "monomial bounds are stated for entire or homogeneous", digest)};
  }
  auto lower = make_report(id, to_double(der), constant * c.value, guaranteed, digest);
  lower.constants["constant"] = constant;
  lower.constants["c_f"] = c.value;
  return {upper, lower};
}

/// Cap(p) >= Der_p(1..1) >= ((k-1)/k)^{(k-1)(n-k)} vdw(k) Cap(p) for H-stable p in Hom(n, n)
/// with every variable of degree at most k.
inline std::vector<BoundReport> verify_schrijver(const SparsePoly& p, unsigned k,
                                                 Provenance prov = Provenance::constructive,
                                                 const CapacityOptions& opt = {}) {
  const std::size_t n = p.num_vars();
  const std::string digest = poly_digest(p, "k=" + std::to_string(k));
  if (p.homogeneous_degree() != static_cast<int>(n))
    return {not_applicable("schrijver-lower", "polynomial is not in Hom(n, n)", digest)};
  if (k == 0 || k > n) return {not_applicable("schrijver-lower", "k must lie in [1, n]", digest)};
  for (int d : p.degrees())
    if (d > static_cast<int>(k))
      return {not_applicable("schrijver-lower", "a variable has degree above k", digest)};
  const bool guaranteed = guaranteed_for(prov);
  const CapacityResult cap = capacity(p, opt);
  const double der = to_double(der_at_zero(p, MultiIndex::ones(n)));
  const double constant = to_double(schrijver_constant(k, n));
  auto upper = make_report("capacity-upper", cap.value, der, true, digest);
  auto lower = make_report("schrijver-lower", der, constant * cap.value, guaranteed, digest);
  lower.constants["constant"] = constant;
  lower.constants["cap"] = cap.value;
  lower.constants["k"] = k;
  return {upper, lower};
}

// ---------------------------------------------------------------------------
// Inner products.

struct InnerProductReport {
  Rational inner;
  double a = 0.0;  // inf p / x^l
  double b = 0.0;  // inf q / x^l
  std::vector<BoundReport> bounds;
};

/// <p, q> >= AB vdw(nm) / vdw(n)^m, plus the multilinear route <p, q> >= AB 2^{1-m} when it
/// applies, and the conjectured sharp form (reported as an experiment, never guaranteed).
inline InnerProductReport verify_inner_product(const SparsePoly& p, const SparsePoly& q, const RationalPoint& l,
                                               Provenance prov = Provenance::constructive,
                                               const CapacityOptions& opt = {}) {
  InnerProductReport out;
  std::string lstr;
  for (const auto& v : l) lstr += to_string(v) + ",";
  const std::string digest = digest_of(p.str() + "|" + q.str() + "|" + lstr);
  out.inner = inner_product(p, q);
  const std::size_t m = p.num_vars();
  const int n = *p.homogeneous_degree();
  Rational lsum = std::accumulate(l.begin(), l.end(), Rational(0));
  if (l.size() != m || lsum != n) {
    out.bounds.push_back(not_applicable("inner-product-lower", "l must have m entries summing to n", digest));
    return out;
  }
  const CapacityResult ca = capacity_at(p, l, false, opt);
  const CapacityResult cb = capacity_at(q, l, false, opt);
  out.a = ca.value;
  out.b = cb.value;
  if (ca.status == CapacityStatus::zero || cb.status == CapacityStatus::zero) {
    out.bounds.push_back(not_applicable("inner-product-lower", "A or B vanishes: l is outside a Newton polytope", digest));
    return out;
  }
  const bool guaranteed = guaranteed_for(prov);
  const double ab = out.a * out.b;
  const double inner = to_double(out.inner);

  const unsigned long un = static_cast<unsigned long>(n);
  const double c = to_double(vdw(un * m) / pow(vdw(un), m));
  auto main = make_report("inner-product-lower", inner, c * ab, guaranteed, digest);
  main.constants["A"] = out.a;
  main.constants["B"] = out.b;
  main.constants["constant"] = c;
  out.bounds.push_back(main);

  if (p.is_multilinear() && q.is_multilinear()) {
    const SparsePoly g = reflected_product(p, q, 1);
    const double der_g = to_double(der_at_zero(g, MultiIndex::ones(m)));
    const double c2 = std::ldexp(1.0, 1 - static_cast<int>(m));
    auto ml = make_report("inner-product-multilinear", der_g, c2 * ab, guaranteed, digest);
    ml.constants["A"] = out.a;
    ml.constants["B"] = out.b;
    ml.constants["constant"] = c2;
    ml.exact_holds = der_at_zero(g, MultiIndex::ones(m)) == out.inner;
    ml.note = "left side is Der_G(1..1) for G = x^1 p(x) q(1/x)";
    out.bounds.push_back(ml);
    const CapacityResult cg = capacity(g, opt);
    auto capg = make_report("inner-product-cap-g", cg.value, ab, guaranteed, digest);
    out.bounds.push_back(capg);
  }

  Rational weighted = 0;
  for (const auto& [r, a] : p.terms()) {
    Rational bcoef = q.coefficient(r);
    if (sgn(bcoef) == 0) continue;
    Integer f = 1;
    for (int v : r) f *= factorial(static_cast<unsigned long>(v));
    weighted += a * bcoef * Rational(f);
  }
  const double c3 = to_double(Rational(factorial(un)) / pow(Rational(static_cast<long>(m)), un));
  auto conj = make_report("inner-product-conjecture", to_double(weighted), c3 * ab, false, digest);
  conj.constants["constant"] = c3;
  conj.note = "conjectured sharp form; experimental";
  out.bounds.push_back(conj);
  return out;
}

// ---------------------------------------------------------------------------
// Multivariate Newton inequalities.

struct NewtonDecomposition {
  MultiIndex y0;
  std::vector<Rational> weights;  // a_i >= 0, sum 1
  std::vector<MultiIndex> ys;     // sum a_i Y_i = Y_0

  void validate() const {
    if (weights.size() != ys.size() || ys.empty()) throw std::invalid_argument("decomposition needs matching weights");
    Rational total = 0;
    for (const auto& a : weights) {
      if (sgn(a) < 0) throw std::invalid_argument("decomposition weights must be nonnegative");
      total += a;
    }
    if (total != 1) throw std::invalid_argument("decomposition weights must sum to 1");
    for (std::size_t j = 0; j < y0.size(); ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < ys.size(); ++i) {
        y0.require_same_size(ys[i]);
        s += weights[i] * ys[i][j];
      }
      if (s != y0[j]) throw std::invalid_argument("sum a_i Y_i differs from Y_0 in coordinate " + std::to_string(j));
    }
  }
};

enum class NewtonClass { entire, homogeneous, degree_bounded, pairwise };

inline const char* to_string(NewtonClass c) {
  switch (c) {
    case NewtonClass::entire: return "entire";
    case NewtonClass::homogeneous: return "homogeneous";
    case NewtonClass::degree_bounded: return "degree-bounded";
    case NewtonClass::pairwise: return "pairwise";
  }
  return "?";
}

/// Der_f(Y_0) >= base prod VDW(Y_i)^{-a_i} prod Der_f(Y_i)^{a_i}, base = e^{-|Y_0|}, vdw(n),
/// ((k-1)/k)^{(k-1)(n-k)} vdw(k), or 1 with no VDW factors for the pairwise (Alexandrov-Fenchel)
/// form. Except for the entire class the comparison is also made exactly, after raising both
/// sides to the common denominator of the a_i.
inline BoundReport verify_newton_multivariate(const SparsePoly& p, const NewtonDecomposition& dec, NewtonClass cls,
                                              unsigned k = 0, Provenance prov = Provenance::constructive) {
  dec.validate();
  MultiIndex(p.num_vars()).require_same_size(dec.y0);
  std::string ystr = dec.y0.str();
  for (std::size_t i = 0; i < dec.ys.size(); ++i) ystr += ";" + to_string(dec.weights[i]) + "*" + dec.ys[i].str();
  const std::string id = std::string("newton-") + to_string(cls);
  const std::string digest = poly_digest(p, ystr);

  std::optional<Rational> base;  // exact base constant when rational
  double log_base = 0.0;
  bool use_vdw = true;
  switch (cls) {
    case NewtonClass::entire:
      log_base = -static_cast<double>(dec.y0.total());
      break;
    case NewtonClass::homogeneous: {
      auto deg = p.homogeneous_degree();
      if (!deg) return not_applicable(id, "polynomial is not homogeneous", digest);
      base = vdw(static_cast<unsigned long>(*deg));
      break;
    }
    case NewtonClass::degree_bounded: {
      auto deg = p.homogeneous_degree();
      if (!deg) return not_applicable(id, "polynomial is not homogeneous", digest);
      for (int d : p.degrees())
        if (d > static_cast<int>(k)) return not_applicable(id, "a variable has degree above k", digest);
      if (k == 0 || static_cast<int>(k) > *deg) return not_applicable(id, "k must lie in [1, n]", digest);
      base = schrijver_constant(k, static_cast<unsigned long>(*deg));
      break;
    }
    case NewtonClass::pairwise:
      base = Rational(1);
      use_vdw = false;
      break;
  }
  if (base) log_base = log_rational(*base);

  const Rational left = der_at_zero(p, dec.y0);
  double log_right = log_base;
  bool right_zero = false;
  for (std::size_t i = 0; i < dec.ys.size(); ++i) {
    if (sgn(dec.weights[i]) == 0) continue;
    const Rational d = der_at_zero(p, dec.ys[i]);
    if (sgn(d) == 0) right_zero = true;
    const double a = to_double(dec.weights[i]);
    log_right += a * log_rational(d);
    if (use_vdw) log_right -= a * log_rational(VDW(dec.ys[i]));
  }
  const double right = right_zero ? 0.0 : std::exp(log_right);
  auto rep = make_report(id, to_double(left), right, guaranteed_for(prov), digest);
  rep.constants["base"] = std::exp(log_base);
  if (cls == NewtonClass::degree_bounded) rep.constants["k"] = k;

  if (base) {
    // left^D >= base^D prod (VDW(Y_i)^{-1} Der(Y_i))^{a_i D}, all exponents integral.
    Integer den = 1;
    for (const auto& a : dec.weights) {
      Integer g;
      mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
      den = g;
    }
    const unsigned long dd = den.get_ui();
    Rational rhs = pow(*base, dd);
    for (std::size_t i = 0; i < dec.ys.size(); ++i) {
      Rational e = dec.weights[i] * Rational(den);
      const unsigned long ei = Integer(e.get_num()).get_ui();
      if (ei == 0) continue;
      Rational term = der_at_zero(p, dec.ys[i]);
      if (use_vdw) term /= VDW(dec.ys[i]);
      rhs *= pow(term, ei);
    }
    const Rational lhs = pow(left, dd);
    rep.exact_holds = lhs >= rhs;
    rep.exact_equality = lhs == rhs;
    rep.constants["exact_power"] = static_cast<double>(dd);
  }
  return rep;
}

/// log Der(R_0) - (log Der(R_1) + log Der(R_2)) / 2.
inline double der_midpoint_deficit(const SparsePoly& p, const MultiIndex& r0, const MultiIndex& r1,
                                   const MultiIndex& r2) {
  return log_rational(der_at_zero(p, r0)) -
         0.5 * (log_rational(der_at_zero(p, r1)) + log_rational(der_at_zero(p, r2)));
}

// ---------------------------------------------------------------------------
// Log-concavity of the capacity map at lattice midpoints.

struct CfTriple {
  MultiIndex y0, y1, y2;
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  BoundReport report;
};

/// C_f(Y_0)^2 >= C_f(Y_1) C_f(Y_2) for the given triple (Y_0 = (Y_1 + Y_2) / 2), with 1e-6 relative slack.
inline CfTriple cf_midpoint_check(const SparsePoly& p, const MultiIndex& y1, const MultiIndex& y2,
                                  Provenance prov = Provenance::constructive, const CapacityOptions& opt = {}) {
  y1.require_same_size(y2);
  std::vector<int> mid(y1.size());
  for (std::size_t i = 0; i < y1.size(); ++i) {
    if ((y1[i] + y2[i]) % 2 != 0) throw std::invalid_argument("midpoint of the triple is not a lattice point");
    mid[i] = (y1[i] + y2[i]) / 2;
  }
  CfTriple t{MultiIndex(mid), y1, y2};
  t.c0 = c_f_at(p, t.y0, opt).value;
  t.c1 = c_f_at(p, y1, opt).value;
  t.c2 = c_f_at(p, y2, opt).value;
  const std::string digest = poly_digest(p, t.y0.str() + y1.str() + y2.str());
  const double left = t.c0 * t.c0, right = t.c1 * t.c2;
  t.report = make_report("cf-midpoint", left, right, guaranteed_for(prov), digest);
  if (left < right && left >= right * (1.0 - 1e-6)) t.report.verdict = Verdict::holds;
  t.report.constants["c_f_y0"] = t.c0;
  t.report.constants["c_f_y1"] = t.c1;
  t.report.constants["c_f_y2"] = t.c2;
  return t;
}

/// Random lattice triples inside the degree box of p (on the degree hyperplane for homogeneous p).
inline std::vector<CfTriple> verify_cf_logconcavity(const SparsePoly& p, std::size_t triples, std::uint64_t seed,
                                                    Provenance prov = Provenance::constructive,
                                                    const CapacityOptions& opt = {}) {
  std::vector<MultiIndex> candidates;
  const auto deg = p.homogeneous_degree();
  for_each_in_box(p.degrees(), [&](const MultiIndex& r) {
    if (!deg || r.total() == *deg) candidates.push_back(r);
  });
  std::vector<CfTriple> out;
  if (candidates.empty()) return out;
  Rng rng(derive_seed(seed, "cf-logconcavity"));
  const long top = static_cast<long>(candidates.size()) - 1;
  for (std::size_t attempt = 0; out.size() < triples && attempt < 200 * triples; ++attempt) {
    const auto& a = candidates[static_cast<std::size_t>(rng.integer(0, top))];
    const auto& b = candidates[static_cast<std::size_t>(rng.integer(0, top))];
    bool parity = true;
    for (std::size_t i = 0; i < a.size(); ++i) parity = parity && (a[i] + b[i]) % 2 == 0;
    if (!parity) continue;
    out.push_back(cf_midpoint_check(p, a, b, prov, opt));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Doubly stochastic matrices.

/// vdw(n) <= per(A) <= 1 exactly and |Cap(Prod_A) - 1| <= 1e-6.
inline std::vector<BoundReport> vdw_bounds_check(const RationalMatrix& a, const CapacityOptions& opt = {}) {
  const std::size_t n = a.n();
  std::string text;
  for (const auto& v : a.data()) text += to_string(v) + ",";
  const std::string digest = digest_of("matrix:" + text);
  for (std::size_t i = 0; i < n; ++i)
    if (a.row_sum(i) != 1 || a.col_sum(i) != 1)
      return {not_applicable("permanent-lower", "matrix is not doubly stochastic", digest)};
  const Rational per = ryser_permanent(a);
  const Rational lo = vdw(n);
  auto lower = make_report("permanent-lower", to_double(per), to_double(lo), true, digest);
  lower.exact_holds = per >= lo;
  lower.exact_equality = per == lo;
  auto upper = make_report("permanent-upper", 1.0, to_double(per), true, digest);
  upper.exact_holds = per <= 1;
  upper.exact_equality = per == 1;
  const double cap = capacity(prod_poly(a), opt).value;
  auto unit = make_report("capacity-unit", 1e-6, std::abs(cap - 1.0), true, digest);
  unit.constants["cap"] = cap;
  unit.note = "left is the tolerance, right is |Cap(Prod_A) - 1|";
  return {lower, upper, unit};
}

}  // namespace logcap
