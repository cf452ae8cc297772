#pragma once

// JSON documents ("schema": "homsense/v1") and CSV tables. Rationals are
// written as "p/q" strings, or "p" when q = 1; integers are accepted on input.

#include <homsense/certify.hpp>
#include <homsense/matrix.hpp>
#include <homsense/permcodim.hpp>
#include <homsense/rational.hpp>
#include <homsense/sensing.hpp>
#include <homsense/structure.hpp>

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace homsense {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "homsense/v1";

/// Input document error; `where` names the offending field or cell.
class InputError : public std::invalid_argument {
 public:
  InputError(const std::string& where, const std::string& what) : std::invalid_argument(where + ": " + what) {}
};

inline Json parse_json_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("document", "malformed JSON at byte " + std::to_string(e.byte) + " (" + e.what() + ")");
  }
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (!j.is_string()) throw InputError(where, "expected an integer or a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(where, e.what());
  }
}

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline std::size_t count_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw InputError(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where, "missing field \"" + key + "\"");
  return *it;
}

/// {"rows": r, "cols": c, "entries": [[...], ...]}
inline Matrix matrix_from_json(const Json& j, const std::string& where = "matrix") {
  const std::size_t rows = count_from_json(field(j, "rows", where), where + ".rows");
  const std::size_t cols = count_from_json(field(j, "cols", where), where + ".cols");
  const Json& e = field(j, "entries", where);
  if (!e.is_array() || e.size() != rows)
    throw InputError(where + ".entries", "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_at = where + ".entries[" + std::to_string(i) + "]";
    if (!e[i].is_array() || e[i].size() != cols)
      throw InputError(row_at, "ragged row: expected " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(e[i][k], row_at + "[" + std::to_string(k) + "]");
  }
  return m;
}

inline Matrix parse_matrix_json(const std::string& text) { return matrix_from_json(parse_json_document(text)); }

inline Json to_json(const Polynomial& p) {
  Json c = Json::array();
  for (const auto& x : p.coefficients()) c.push_back(to_json(x));
  return Json{{"text", p.to_string()}, {"coefficients", c}};
}

/// {"perm": [...], "signs": [...]} with optional signs; a bare array is a
/// plain permutation.
inline SignedPermutation permutation_from_json(const Json& j, const std::string& where) {
  const Json& perm = j.is_array() ? j : field(j, "perm", where);
  if (!perm.is_array()) throw InputError(where + ".perm", "expected an array");
  std::vector<std::size_t> p;
  for (std::size_t i = 0; i < perm.size(); ++i) p.push_back(count_from_json(perm[i], where + ".perm[" + std::to_string(i) + "]"));
  std::vector<int> s(p.size(), 1);
  if (j.is_object() && j.contains("signs")) {
    const Json& sj = j["signs"];
    if (!sj.is_array() || sj.size() != p.size()) throw InputError(where + ".signs", "expected " + std::to_string(p.size()) + " signs");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!sj[i].is_number_integer()) throw InputError(where + ".signs[" + std::to_string(i) + "]", "expected 1 or -1");
      s[i] = sj[i].get<int>();
    }
  }
  try {
    return SignedPermutation(std::move(p), std::move(s));
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

inline Json to_json(const SignedPermutation& p) { return Json{{"perm", p.images()}, {"signs", p.signs()}}; }

/// {"kept": [...]} on [m]; a missing projection is the identity.
inline CoordinateProjection projection_from_json(const Json* j, std::size_t m, const std::string& where) {
  if (!j) return CoordinateProjection::identity(m);
  const Json& kept = j->is_array() ? *j : field(*j, "kept", where);
  if (!kept.is_array()) throw InputError(where + ".kept", "expected an array");
  std::vector<std::size_t> k;
  for (std::size_t i = 0; i < kept.size(); ++i) k.push_back(count_from_json(kept[i], where + ".kept[" + std::to_string(i) + "]"));
  try {
    return CoordinateProjection(m, std::move(k));
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

inline Json to_json(const CoordinateProjection& p) { return Json{{"m", p.size()}, {"kept", p.kept()}}; }

inline Json to_json(const CodimAccount& a) {
  return Json{{"m", a.m},
              {"kept2", a.kept2},
              {"domino", a.domino},
              {"fixed", a.fixed},
              {"cycles", a.cycles},
              {"incomplete", a.incomplete},
              {"complete_cycle_sizes", a.complete_cycle_sizes},
              {"codim_bound", a.codim_bound}};
}

inline Json to_json(const EigenMultiplicityReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x;
    if (const auto* q = std::get_if<Rational>(&e.descriptor))
      x["eigenvalue"] = to_json(*q);
    else
      x["orbit"] = std::get<Polynomial>(e.descriptor).to_string();
    x["degree"] = e.degree();
    x["geometric_multiplicity"] = e.multiplicity;
    entries.push_back(std::move(x));
  }
  return Json{{"matrix_dim", r.matrix_dim}, {"entries", entries}};
}

inline Json to_json(const InvariantFactorData& d) {
  Json f = Json::array();
  for (const auto& p : d.invariant_factors) f.push_back(p.to_string());
  return Json{{"matrix_dim", d.matrix_dim},
              {"invariant_factors", f},
              {"charpoly", d.charpoly.to_string()},
              {"minimal_polynomial", d.minimal_polynomial.to_string()}};
}

inline Json to_json(const std::vector<CyclicSummand>& summands) {
  Json out = Json::array();
  for (const auto& s : summands) {
    Json chain = Json::array();
    for (const auto& w : s.chain) chain.push_back(to_json(w));
    out.push_back(Json{{"eigenvalue", to_json(s.eigenvalue)}, {"dimension", s.dimension()}, {"chain", chain}});
  }
  return out;
}

inline Json to_json(const WitnessSubspace& w) { return Json{{"basis", to_json(w.basis)}, {"certificate_rank", w.certificate_rank}}; }

inline Json to_json(const UniquenessCertificate& c) {
  const auto& ev = c.evidence;
  Json checks = Json::array();
  for (const auto& k : ev.checks) checks.push_back(Json{{"label", k.label}, {"statement", k.statement}, {"holds", k.holds}});
  Json e{{"checks", checks}};
  if (!ev.branch.empty()) e["branch"] = ev.branch;
  if (ev.branch_eigenvalue) e["branch_eigenvalue"] = to_json(*ev.branch_eigenvalue);
  if (ev.multiplicities) e["multiplicities"] = to_json(*ev.multiplicities);
  if (ev.account) e["codim_account"] = to_json(*ev.account);
  if (ev.composite) e["composite_permutation"] = to_json(*ev.composite);
  if (ev.witness) e["witness"] = to_json(*ev.witness);
  if (ev.fixed_functionals) e["fixed_functionals"] = to_json(*ev.fixed_functionals);
  if (ev.general_point) e["general_point"] = to_json(*ev.general_point);
  if (!ev.tau_h.empty()) {
    Json samples = Json::array();
    for (const auto& s : ev.tau_h)
      samples.push_back(Json{{"seed", s.seed},
                             {"h_basis", to_json(s.h_basis)},
                             {"t_h", to_json(s.t_h)},
                             {"multiplicities", to_json(s.report)},
                             {"excluded_max", s.excluded_max},
                             {"bound", s.bound},
                             {"holds", s.holds}});
    e["tau_h_samples"] = samples;
  }
  if (ev.counterexample) e["counterexample"] = Json{{"v1", to_json(ev.counterexample->first)}, {"v2", to_json(ev.counterexample->second)}};
  if (!ev.notes.empty()) e["notes"] = ev.notes;
  return Json{{"verdict", to_string(c.verdict)},
              {"route", to_string(c.route)},
              {"parameters", Json{{"m", c.m}, {"n", c.n}, {"sign_mode", to_string(c.sign_mode)}}},
              {"evidence", e}};
}

inline Json to_json(const Violation& v) {
  return Json{{"tau1", v.tau1}, {"tau2", v.tau2}, {"v1", to_json(v.v1)}, {"v2", to_json(v.v2)}};
}

inline Json to_json(const CollisionReport& r) {
  Json vs = Json::array();
  for (const auto& v : r.violations) vs.push_back(to_json(v));
  return Json{{"pairs_checked", r.pairs_checked}, {"sign_patterns", r.sign_patterns}, {"signs_sampled", r.signs_sampled}, {"violations", vs}};
}

namespace io_detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string vector_text(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s;
}

}  // namespace io_detail

/// One row per violation, then a summary row carrying pairs_checked.
inline void write_violations_csv(std::ostream& os, const std::vector<Violation>& violations, std::uint64_t pairs_checked) {
  using io_detail::csv_field;
  os << "kind,tau1,tau2,v1,v2\n";
  for (const auto& v : violations)
    os << "violation," << csv_field(v.tau1) << ',' << csv_field(v.tau2) << ',' << io_detail::vector_text(v.v1) << ','
       << io_detail::vector_text(v.v2) << '\n';
  os << "summary,pairs_checked=" << pairs_checked << ",violations=" << violations.size() << ",,\n";
}

inline void write_multiplicities_csv(std::ostream& os, const EigenMultiplicityReport& r) {
  os << "eigenvalue,degree,geometric_multiplicity\n";
  for (const auto& e : r.entries) {
    const std::string d = std::holds_alternative<Rational>(e.descriptor) ? to_string(std::get<Rational>(e.descriptor))
                                                                         : "orbit(" + std::get<Polynomial>(e.descriptor).to_string() + ")";
    os << io_detail::csv_field(d) << ',' << e.degree() << ',' << e.multiplicity << '\n';
  }
}

}  // namespace homsense
