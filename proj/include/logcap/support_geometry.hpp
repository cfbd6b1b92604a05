#pragma once

// Exact lattice geometry of supports: Newton polytope membership, minimal
// faces, D-convexity, the subset-degree map Deg_p and the Hall-Rado style
// support characterization for H-stable polynomials.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "logcap/multi_index.hpp"
#include "logcap/rational.hpp"
#include "logcap/simplex.hpp"
#include "logcap/sparse_poly.hpp"

namespace logcap {

using RationalPoint = std::vector<Rational>;

inline RationalPoint to_rational_point(const MultiIndex& r) {
  RationalPoint out;
  out.reserve(r.size());
  for (int v : r) out.emplace_back(v);
  return out;
}

/// A finite set of distinct lattice points (kept in graded-lex order).
class SupportSet {
 public:
  explicit SupportSet(std::size_t dim) : dim_(dim) {}
  SupportSet(std::size_t dim, const std::vector<MultiIndex>& points) : dim_(dim) {
    for (const auto& p : points) insert(p);
  }
  static SupportSet of(const SparsePoly& p) { return SupportSet(p.num_vars(), p.support()); }

  void insert(const MultiIndex& point) {
    if (point.size() != dim_) throw DimensionError("support point has wrong dimension");
    points_.insert(point);
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(const MultiIndex& point) const { return points_.count(point) > 0; }
  std::vector<MultiIndex> points() const { return {points_.begin(), points_.end()}; }
  const std::set<MultiIndex, GrlexLess>& raw() const { return points_; }

 private:
  std::size_t dim_;
  std::set<MultiIndex, GrlexLess> points_;
};

namespace detail {

// Constraint system  sum_k lambda_k s_k = z,  sum_k lambda_k = 1.
inline std::pair<std::vector<std::vector<Rational>>, std::vector<Rational>> hull_system(
    const std::vector<MultiIndex>& pts, const RationalPoint& z) {
  const std::size_t m = z.size();
  std::vector<std::vector<Rational>> a(m + 1, std::vector<Rational>(pts.size(), Rational(0)));
  std::vector<Rational> b(m + 1);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (std::size_t i = 0; i < m; ++i) a[i][k] = pts[k][i];
    a[m][k] = 1;
  }
  for (std::size_t i = 0; i < m; ++i) b[i] = z[i];
  b[m] = 1;
  return {std::move(a), std::move(b)};
}

}  // namespace detail

/// Convex weights expressing z over pts, or nullopt when z is outside Conv(pts).
inline std::optional<std::vector<Rational>> convex_combination(const std::vector<MultiIndex>& pts,
                                                               const RationalPoint& z) {
  if (pts.empty()) return std::nullopt;
  if (pts.front().size() != z.size()) throw DimensionError("membership query has wrong dimension");
  auto [a, b] = detail::hull_system(pts, z);
  LpResult res = solve_lp(a, std::move(b));
  if (!res.feasible()) return std::nullopt;
  return res.x;
}

inline bool in_convex_hull(const SupportSet& s, const RationalPoint& z) {
  if (z.size() != s.dim()) throw DimensionError("membership query has wrong dimension");
  if (s.empty()) return false;
  return convex_combination(s.points(), z).has_value();
}

/// Exact test of z in Newt = Conv(S).
inline bool newton_polytope_membership(const SupportSet& s, const MultiIndex& z) {
  if (z.size() != s.dim()) throw DimensionError("membership query has wrong dimension");
  if (s.contains(z)) return true;
  return in_convex_hull(s, to_rational_point(z));
}

/// Indices (into pts) of the points spanning the minimal face of Conv(pts) that
/// contains z. A point lies on that face iff some convex representation of z
/// puts positive weight on it. Empty when z is outside the hull.
inline std::vector<std::size_t> minimal_face(const std::vector<MultiIndex>& pts, const RationalPoint& z) {
  if (pts.empty()) return {};
  const std::size_t m = z.size();
  auto [a, b] = detail::hull_system(pts, z);
  LpResult first = solve_lp(a, b);
  if (!first.feasible()) return {};
  std::vector<std::size_t> all(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) all[k] = k;
  if (pts.size() == 1) return all;

  // Interior fast path: if w = z + eps (z - c) is in the hull for the barycenter c, then z is a
  // positive combination of w and c, and c puts positive weight on every point.
  RationalPoint c(m, Rational(0));
  for (const auto& s : pts)
    for (std::size_t i = 0; i < m; ++i) c[i] += s[i];
  for (auto& v : c) v /= static_cast<long>(pts.size());
  for (long den : {8L, 4096L, 1L << 30}) {
    RationalPoint w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = z[i] + (z[i] - c[i]) / den;
    auto [aw, bw] = detail::hull_system(pts, w);
    if (solve_lp(aw, std::move(bw)).feasible()) return all;
  }

  // General case: repeatedly maximize the total weight on points not yet known to be on the
  // face; each round either adds points or proves the rest are off the face.
  std::vector<bool> on_face(pts.size(), false);
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (sgn(first.x[k]) > 0) on_face[k] = true;
  while (true) {
    std::vector<Rational> obj(pts.size(), Rational(0));
    bool any = false;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (!on_face[k]) obj[k] = 1, any = true;
    if (!any) break;
    LpResult res = solve_lp(a, b, &obj);
    if (res.status != LpResult::Status::optimal || sgn(res.objective) <= 0) break;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (sgn(res.x[k]) > 0) on_face[k] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (on_face[k]) out.push_back(k);
  return out;
}

struct DConvexResult {
  bool d_convex = true;
  std::optional<MultiIndex> counterexample;  // first lattice point of Conv(S) \ S in graded-lex order
  std::size_t lattice_points_checked = 0;
};

/// D-convexity: Conv(S) intersected with Z^m equals S. Enumerates the integer
/// bounding box and decides hull membership exactly.
inline DConvexResult d_convex_check(const SupportSet& s) {
  if (s.empty()) throw std::invalid_argument("d_convex_check: empty support");
  if (s.size() > 10000) throw std::invalid_argument("d_convex_check: support larger than 10^4 points");
  const std::size_t m = s.dim();
  std::vector<int> lo(m, std::numeric_limits<int>::max());
  std::vector<int> hi(m, 0);
  for (const auto& p : s.raw())
    for (std::size_t i = 0; i < m; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  for (int h : hi)
    if (h > 1000) throw std::invalid_argument("d_convex_check: coordinates above 10^3");

  // Every support point sharing one total degree confines the hull to that hyperplane.
  std::optional<int> common_total = s.raw().begin()->total();
  for (const auto& p : s.raw())
    if (p.total() != *common_total) {
      common_total.reset();
      break;
    }

  std::vector<int> extent(m);
  for (std::size_t i = 0; i < m; ++i) extent[i] = hi[i] - lo[i];
  const auto pts = s.points();
  DConvexResult result;
  bool done = false;
  for_each_in_box(extent, [&](const MultiIndex& offset) {
    if (done) return;
    std::vector<int> zv(m);
    for (std::size_t i = 0; i < m; ++i) zv[i] = lo[i] + offset[i];
    MultiIndex z(zv);
    if (s.contains(z)) return;
    if (common_total && z.total() != *common_total) return;
    ++result.lattice_points_checked;
    if (convex_combination(pts, to_rational_point(z))) {
      result.d_convex = false;
      result.counterexample = z;
      done = true;
    }
  });
  return result;
}

// ---------------------------------------------------------------------------
// Deg_p(S) and friends. Subsets of {1..m} are bitmasks over variable indices.

using VariableSubset = std::uint32_t;

/// Max over supp(p) of sum_{j in S} r_j (0 for the empty set or zero polynomial).
inline int deg_subset(const SparsePoly& p, VariableSubset subset) {
  if (p.num_vars() < 32 && (subset >> p.num_vars()) != 0)
    throw std::invalid_argument("deg_subset: subset mentions variables beyond num_vars");
  int best = 0;
  for (const auto& [r, c] : p.terms()) {
    int s = 0;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (subset & (VariableSubset{1} << j)) s += r[j];
    best = std::max(best, s);
  }
  return best;
}

/// Deg_p tabulated over all 2^m subsets.
class DegFunction {
 public:
  DegFunction(std::size_t m, std::vector<int> values) : m_(m), values_(std::move(values)) {
    if (values_.size() != (std::size_t{1} << m)) throw std::invalid_argument("DegFunction needs 2^m values");
  }
  static DegFunction of(const SparsePoly& p) {
    if (p.num_vars() > 12) throw std::invalid_argument("DegFunction: more than 12 variables");
    const std::size_t m = p.num_vars();
    std::vector<int> values(std::size_t{1} << m);
    for (VariableSubset s = 0; s < values.size(); ++s) values[s] = deg_subset(p, s);
    return DegFunction(m, std::move(values));
  }
  std::size_t num_vars() const { return m_; }
  int operator()(VariableSubset s) const { return values_.at(s); }
  std::size_t size() const { return values_.size(); }

 private:
  std::size_t m_;
  std::vector<int> values_;
};

struct SubmodularityViolation {
  VariableSubset s;
  VariableSubset t;
  int lhs;  // Deg(S u T) + Deg(S n T)
  int rhs;  // Deg(S) + Deg(T)
};

struct SubmodularityReport {
  bool submodular = true;
  bool modular = true;  // equality on every pair
  std::vector<SubmodularityViolation> violations;
  std::size_t pairs_checked = 0;
};

inline SubmodularityReport submodularity_check(const DegFunction& d) {
  if (d.num_vars() > 12) throw std::invalid_argument("submodularity_check: more than 12 variables");
  SubmodularityReport rep;
  const VariableSubset n = static_cast<VariableSubset>(d.size());
  for (VariableSubset s = 0; s < n; ++s)
    for (VariableSubset t = s; t < n; ++t) {
      ++rep.pairs_checked;
      int lhs = d(s | t) + d(s & t);
      int rhs = d(s) + d(t);
      if (lhs != rhs) rep.modular = false;
      if (lhs > rhs) {
        rep.submodular = false;
        rep.violations.push_back({s, t, lhs, rhs});
      }
    }
  return rep;
}

struct RadoViolation {
  MultiIndex exponent;
  bool in_support = false;
  std::optional<VariableSubset> violated_subset;  // set when a subset inequality fails
};

struct RadoReport {
  bool holds = true;
  int degree = 0;
  std::size_t vectors_checked = 0;
  std::vector<RadoViolation> violations;
};

/// a_R > 0  <=>  sum_{j in S} r_j <= Deg_p(S) for every S, checked over all |R|_1 = n.
inline RadoReport rado_check(const SparsePoly& p) {
  if (p.num_vars() > 12) throw std::invalid_argument("rado_check: more than 12 variables");
  auto deg = p.homogeneous_degree();
  if (!deg) throw std::invalid_argument("rado_check: polynomial must be nonzero and homogeneous");
  const DegFunction d = DegFunction::of(p);
  RadoReport rep;
  rep.degree = *deg;
  for_each_composition(p.num_vars(), *deg, [&](const MultiIndex& r) {
    ++rep.vectors_checked;
    std::optional<VariableSubset> bad;
    for (VariableSubset s = 0; s < d.size() && !bad; ++s) {
      int sum = 0;
      for (std::size_t j = 0; j < r.size(); ++j)
        if (s & (VariableSubset{1} << j)) sum += r[j];
      if (sum > d(s)) bad = s;
    }
    bool in_supp = sgn(p.coefficient(r)) > 0;
    bool predicted = !bad.has_value();
    if (in_supp != predicted) {
      rep.holds = false;
      rep.violations.push_back({r, in_supp, bad});
    }
  });
  return rep;
}

}  // namespace logcap
