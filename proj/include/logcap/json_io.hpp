#pragma once

// JSON formats for polynomials, matrices, weights and reports (nlohmann/json).
//
//   polynomial  {"vars": m, "terms": [{"exp": [..], "coef": "p/q"}], "provenance": "user"}
//   matrix      {"n": k, "rows": [["p/q", ...], ...]}
//   weights     {"b": ["p/q", ...]}

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "logcap/capacity.hpp"
#include "logcap/fixtures.hpp"
#include "logcap/log_concavity.hpp"
#include "logcap/permanent.hpp"
#include "logcap/report.hpp"
#include "logcap/sequences.hpp"
#include "logcap/sparse_poly.hpp"
#include "logcap/support_geometry.hpp"

namespace logcap {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

/// A rational from a JSON string ("3/4", "0.25") or number (integers only, to stay exact).
inline Rational rational_from_json(const Json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) return parse_rational(v.dump());
  } catch (const ParseError& e) {
    throw FormatError(where + ": " + e.what());
  }
  throw FormatError(where + ": expected a rational as string or number");
}

inline Json rational_to_json(const Rational& r) { return to_string(r); }

struct PolyInput {
  SparsePoly poly;
  Provenance provenance = Provenance::user;
  std::string name;
};

inline PolyInput poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
    throw FormatError("polynomial needs \"vars\" and \"terms\"");
  const long m = j.at("vars").get<long>();
  if (m <= 0) throw FormatError("\"vars\" must be positive");
  PolyInput out{SparsePoly(static_cast<std::size_t>(m))};
  std::size_t k = 0;
  for (const auto& t : j.at("terms")) {
    const std::string where = "term " + std::to_string(k++);
    if (!t.contains("exp") || !t.contains("coef")) throw FormatError(where + ": needs \"exp\" and \"coef\"");
    std::vector<int> e;
    for (const auto& v : t.at("exp")) {
      if (!v.is_number_integer()) throw FormatError(where + ": exponents must be integers");
      if (v.get<long>() < 0) throw FormatError(where + ": negative exponent");
      e.push_back(v.get<int>());
    }
    if (e.size() != static_cast<std::size_t>(m)) throw FormatError(where + ": exponent length differs from vars");
    Rational c = rational_from_json(t.at("coef"), where);
    if (sgn(c) < 0) throw FormatError(where + ": negative coefficient");
    // Repeated exponents accumulate.
    out.poly.add_term(MultiIndex(e), c);
  }
  if (j.contains("provenance")) {
    const auto p = j.at("provenance").get<std::string>();
    if (p == "constructive")
      out.provenance = Provenance::constructive;
    else if (p != "user")
      throw FormatError("provenance must be \"constructive\" or \"user\"");
  }
  if (j.contains("name")) out.name = j.at("name").get<std::string>();
  return out;
}

inline Json poly_to_json(const SparsePoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json exp = Json::array();
    for (int v : e) exp.push_back(v);
    terms.push_back(Json{{"exp", exp}, {"coef", to_string(c)}});
  }
  return Json{{"vars", p.num_vars()}, {"terms", terms}};
}

inline RationalMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows")) throw FormatError("matrix needs \"rows\"");
  const auto& rows = j.at("rows");
  const std::size_t n = rows.size();
  if (j.contains("n") && j.at("n").get<std::size_t>() != n) throw FormatError("\"n\" differs from the row count");
  if (n == 0) throw FormatError("matrix is empty");
  RationalMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw FormatError("row " + std::to_string(i) + " has wrong length");
    for (std::size_t k = 0; k < n; ++k) {
      Rational v = rational_from_json(rows[i][k], "entry (" + std::to_string(i) + "," + std::to_string(k) + ")");
      if (sgn(v) < 0) throw FormatError("matrix entries must be nonnegative");
      a(i, k) = v;
    }
  }
  return a;
}

inline Json matrix_to_json(const RationalMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.n(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.n(); ++k) row.push_back(to_string(a(i, k)));
    rows.push_back(row);
  }
  return Json{{"n", a.n()}, {"rows", rows}};
}

inline WeightSequence weights_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("b")) throw FormatError("weights need \"b\"");
  std::vector<Rational> b;
  std::size_t k = 0;
  for (const auto& v : j.at("b")) b.push_back(rational_from_json(v, "b[" + std::to_string(k++) + "]"));
  try {
    return WeightSequence(std::move(b));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

/// "1,1/2,3" -> rationals
inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

inline MultiIndex parse_multi_index(const std::string& text) {
  std::vector<int> out;
  for (const auto& r : parse_rational_list(text)) {
    if (r.get_den() != 1 || sgn(r) < 0 || !r.get_num().fits_sint_p())
      throw ParseError("target entries must be nonnegative integers: " + text);
    out.push_back(static_cast<int>(r.get_num().get_si()));
  }
  return MultiIndex(out);
}

// ---------------------------------------------------------------------------
// Reports.

inline Json doubles_to_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double d : v) out.push_back(d);
  return out;
}

inline Json to_json(const BoundReport& r) {
  Json j{{"kind", "bound"}, {"id", r.id}, {"left", r.left}, {"right", r.right}, {"slack", r.slack}};
  Json c = Json::object();
  for (const auto& [k, v] : r.constants) c[k] = v;
  j["constants"] = c;
  j["inputs_digest"] = r.inputs_digest;
  j["verdict"] = to_string(r.verdict);
  j["guaranteed"] = r.guaranteed;
  if (r.exact_holds) j["exact_holds"] = *r.exact_holds;
  if (r.exact_equality) j["exact_equality"] = *r.exact_equality;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json to_json(const CapacityResult& r) {
  Json j{{"kind", "capacity"}, {"value", r.value}, {"log_value", r.log_value}};
  j["minimizer"] = r.minimizer ? doubles_to_json(*r.minimizer) : Json(nullptr);
  j["status"] = to_string(r.status);
  j["iterations"] = r.iterations;
  j["gradient_norm"] = r.gradient_norm;
  j["face_terms"] = r.face_terms;
  return j;
}

inline Json to_json(const SLCVerdict& v) {
  Json j{{"kind", "slc"}, {"status", to_string(v.status)}, {"route", v.route}};
  if (v.witness) {
    Json w{{"derivative", v.witness->derivative.str()}};
    w["point"] = v.witness->point.empty() ? Json(nullptr) : doubles_to_json(v.witness->point);
    w["max_eigenvalue"] = v.witness->max_eigenvalue;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["derivatives_checked"] = v.derivatives_checked;
  j["points_checked"] = v.points_checked;
  return j;
}

inline Json to_json(const DConvexResult& r) {
  Json j{{"kind", "dconvex"}, {"d_convex", r.d_convex}};
  j["counterexample"] = r.counterexample ? Json(r.counterexample->str()) : Json(nullptr);
  j["lattice_points_checked"] = r.lattice_points_checked;
  return j;
}

inline Json to_json(const RadoReport& r) {
  Json j{{"kind", "rado"}, {"holds", r.holds}, {"degree", r.degree}, {"vectors_checked", r.vectors_checked}};
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back(Json{{"exponent", x.exponent.str()}, {"in_support", x.in_support}, {"subset", x.violated_subset ? Json(*x.violated_subset) : Json(nullptr)}});
  j["violations"] = v;
  return j;
}

inline Json to_json(const SubmodularityReport& r) {
  Json j{{"kind", "submodularity"}, {"submodular", r.submodular}, {"modular", r.modular},
         {"pairs_checked", r.pairs_checked}};
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back(Json{{"s", x.s}, {"t", x.t}});
  j["violations"] = v;
  return j;
}

inline Json to_json(const TrajectoryReport& r) {
  Json j{{"kind", "trajectory"}, {"precondition", r.precondition}, {"propagatable", r.propagatable},
         {"all_in_lc", r.all_in_lc}};
  j["first_exit"] = r.first_exit ? Json(to_string(*r.first_exit)) : Json(nullptr);
  Json pts = Json::array();
  for (const auto& p : r.points) {
    Json mom = Json::array();
    for (const auto& v : p.moments) mom.push_back(to_string(v));
    pts.push_back(Json{{"t", to_string(p.t)}, {"moments", mom}, {"in_lc", p.in_lc}, {"matches_flow", p.matches_flow}});
  }
  j["points"] = pts;
  return j;
}

}  // namespace logcap
