#pragma once

// Command dispatch behind the `homsense` executable. All configuration comes
// from the JobSpec; the same spec and input always produce the same bytes.

#include <homsense/certify.hpp>
#include <homsense/construct.hpp>
#include <homsense/errors.hpp>
#include <homsense/io.hpp>
#include <homsense/permcodim.hpp>
#include <homsense/sensing.hpp>
#include <homsense/structure.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace homsense::cli {

enum ExitCode : int { kSuccess = 0, kError = 1, kUndecided = 2, kRefuted = 3 };

struct JobSpec {
  std::string command;   // certify | decompose | construct | oracle | bound
  std::string mode;      // certify: prop5|thm1|thm2|prop4; construct: boundary|half|general; oracle endo-pair: subspace|point
  std::string input_path;
  std::string out_path;  // empty: the output stream passed to run()
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::string klass = "perm";  // perm | signed-perm | proj-perm | signed-proj-perm | endo-pair
  std::optional<std::size_t> r1, r2;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 0;
  std::int64_t bound = 100;
  std::uint64_t budget = 50'000'000;
  std::size_t jobs = 0;
  std::size_t sign_samples = 10;
  std::string format = "json";
};

namespace detail {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Json load_input(const JobSpec& spec) {
  if (spec.input_path.empty()) throw UsageError(spec.command + " needs --input");
  std::ifstream in(spec.input_path);
  if (!in) throw UsageError("cannot read input file " + spec.input_path);
  std::stringstream ss;
  ss << in.rdbuf();
  Json doc = parse_json_document(ss.str());
  if (!doc.is_object()) throw InputError("document", "expected a JSON object");
  if (doc.contains("schema") && doc["schema"] != kSchema)
    throw InputError("schema", "unsupported schema " + doc["schema"].dump() + ", expected \"" + kSchema + "\"");
  return doc;
}

inline Json header(const JobSpec& spec) { return Json{{"schema", kSchema}, {"command", spec.command}}; }

inline std::size_t n_of(const JobSpec& spec, const Json& doc) {
  if (spec.n) return *spec.n;
  if (doc.contains("n")) return count_from_json(doc["n"], "n");
  return 1;
}

inline std::string mode_of(const JobSpec& spec, const Json& doc, const std::string& fallback) {
  if (!spec.mode.empty()) return spec.mode;
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw InputError("mode", "expected a string");
    return doc["mode"].get<std::string>();
  }
  return fallback;
}

inline SignMode sign_mode_of(const Json& doc) {
  if (!doc.contains("sign_mode")) return SignMode::plain;
  const Json& s = doc["sign_mode"];
  if (s == "plain") return SignMode::plain;
  if (s == "plus_minus") return SignMode::plus_minus;
  throw InputError("sign_mode", "expected \"plain\" or \"plus_minus\"");
}

inline const Json* optional_field(const Json& doc, const char* key) {
  auto it = doc.find(key);
  return it == doc.end() ? nullptr : &*it;
}

inline int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::certified: return kSuccess;
    case Verdict::undecided: return kUndecided;
    case Verdict::refuted: return kRefuted;
  }
  return kError;
}

inline void require_json(const JobSpec& spec) {
  if (spec.format != "json") throw UsageError("--format " + spec.format + " is not available for " + spec.command);
}

inline int certify(const JobSpec& spec, std::ostream& out) {
  require_json(spec);
  const Json doc = load_input(spec);
  const std::string mode = mode_of(spec, doc, "");
  const std::size_t n = n_of(spec, doc);
  UniquenessCertificate cert;
  if (mode == "prop5") {
    cert = certify_prop5(matrix_from_json(field(doc, "T", "document"), "T"), n, sign_mode_of(doc));
  } else if (mode == "thm1") {
    cert = certify_thm1(matrix_from_json(field(doc, "T1", "document"), "T1"), matrix_from_json(field(doc, "T2", "document"), "T2"), n,
                        spec.seed, spec.trials.value_or(5));
  } else if (mode == "thm2") {
    const auto pi1 = permutation_from_json(field(doc, "pi1", "document"), "pi1");
    const auto pi2 = permutation_from_json(field(doc, "pi2", "document"), "pi2");
    cert = certify_thm2(pi1, pi2, projection_from_json(optional_field(doc, "rho1"), pi1.size(), "rho1"),
                        projection_from_json(optional_field(doc, "rho2"), pi1.size(), "rho2"), n);
  } else if (mode == "prop4") {
    cert = certify_prop4(matrix_from_json(field(doc, "T1", "document"), "T1"), matrix_from_json(field(doc, "T2", "document"), "T2"), n,
                         spec.seed);
  } else {
    throw UsageError("certify needs --mode prop5|thm1|thm2|prop4");
  }
  Json res = header(spec);
  res["mode"] = mode;
  res["seed"] = spec.seed;
  res["certificate"] = to_json(cert);
  out << res.dump(2) << '\n';
  return verdict_code(cert.verdict);
}

inline int decompose(const JobSpec& spec, std::ostream& out) {
  const Json doc = load_input(spec);
  const Matrix t = matrix_from_json(field(doc, "T", "document"), "T");
  if (!t.is_square()) throw InputError("T", "expected a square matrix, got " + t.shape());
  const InvariantFactorData data = invariant_factors(t);
  const EigenMultiplicityReport report = geometric_multiplicities(data);
  if (spec.format == "csv") {
    write_multiplicities_csv(out, report);
    return kSuccess;
  }
  require_json(spec);
  Json res = header(spec);
  res["structure"] = to_json(data);
  res["multiplicities"] = to_json(report);
  try {
    res["jordan"] = to_json(jordan_decomposition(t));
  } catch (const RationalSpectrumError& e) {
    res["jordan"] = nullptr;
    res["jordan_note"] = e.what();
  }
  out << res.dump(2) << '\n';
  return kSuccess;
}

inline int construct(const JobSpec& spec, std::ostream& out) {
  require_json(spec);
  const Json doc = load_input(spec);
  const Matrix t = matrix_from_json(field(doc, "T", "document"), "T");
  const std::size_t n = n_of(spec, doc);
  const std::string mode = mode_of(spec, doc, "general");
  Json res = header(spec);
  res["mode"] = mode;
  res["n"] = n;
  try {
    WitnessSubspace w;
    if (mode == "boundary") w = construct_boundary(t, n);
    else if (mode == "half") w = construct_half(t, n);
    else if (mode == "general") w = construct_general(t, n);
    else throw UsageError("construct needs --mode boundary|half|general");
    res["status"] = "constructed";
    res["witness"] = to_json(w);
    out << res.dump(2) << '\n';
    return kSuccess;
  } catch (const HypothesisError& e) {
    res["status"] = "hypotheses_unmet";
    res["reason"] = e.what();
    out << res.dump(2) << '\n';
    return kUndecided;
  }
}

inline int bound(const JobSpec& spec, std::ostream& out) {
  require_json(spec);
  const Json doc = load_input(spec);
  SignedPermutation pi;
  if (doc.contains("pi")) {
    pi = permutation_from_json(doc["pi"], "pi");
  } else {
    pi = composite_permutation(permutation_from_json(field(doc, "pi1", "document"), "pi1"),
                               permutation_from_json(field(doc, "pi2", "document"), "pi2"));
  }
  const auto rho1 = projection_from_json(optional_field(doc, "rho1"), pi.size(), "rho1");
  const auto rho2 = projection_from_json(optional_field(doc, "rho2"), pi.size(), "rho2");
  const CodimAccount acc = codim_account(pi, rho1, rho2);
  Json res = header(spec);
  res["permutation"] = to_json(pi);
  res["account"] = to_json(acc);
  res["theorem2_bound"] = theorem2_bound(pi, rho1, rho2);
  res["rank_rho2"] = rho2.rank();
  out << res.dump(2) << '\n';
  return kSuccess;
}

inline ClassKind class_of(const std::string& s) {
  if (s == "perm") return ClassKind::perm;
  if (s == "signed-perm") return ClassKind::signed_perm;
  if (s == "proj-perm") return ClassKind::proj_perm;
  if (s == "signed-proj-perm") return ClassKind::signed_proj_perm;
  if (s == "endo-pair") return ClassKind::endo_pair;
  throw UsageError("unknown --class " + s);
}

inline int oracle(const JobSpec& spec, std::ostream& out) {
  SensingInstance inst;
  inst.kind = class_of(spec.klass);
  Json doc = Json::object();
  if (inst.kind == ClassKind::endo_pair) {
    doc = load_input(spec);
    inst.t1 = matrix_from_json(field(doc, "T1", "document"), "T1");
    inst.t2 = matrix_from_json(field(doc, "T2", "document"), "T2");
    inst.m = inst.t1.rows();
    inst.sign_mode = sign_mode_of(doc);
    const std::string mode = spec.mode.empty() ? "subspace" : spec.mode;
    if (mode != "subspace" && mode != "point") throw UsageError("endo-pair oracle needs --mode subspace|point");
    inst.point_mode = mode == "point";
  } else {
    if (!spec.input_path.empty()) doc = load_input(spec);
    if (doc.contains("V")) inst.m = matrix_from_json(doc["V"], "V").rows();
    else if (spec.m) inst.m = *spec.m;
    else throw UsageError("oracle needs --m");
    inst.sign_mode = is_signed(inst.kind) ? SignMode::plus_minus : SignMode::plain;
  }
  if (spec.m && *spec.m != inst.m) throw UsageError("--m disagrees with the input matrices");
  // A given V is used for every trial.
  std::optional<Matrix> fixed_v;
  if (doc.contains("V")) {
    fixed_v = matrix_from_json(doc["V"], "V");
    if (fixed_v->rows() != inst.m) throw InputError("V", "expected " + std::to_string(inst.m) + " rows");
    if (rank(*fixed_v) != fixed_v->cols()) throw InputError("V", "columns must be independent");
    if (!spec.n && !doc.contains("n")) doc["n"] = fixed_v->cols();
  }
  inst.n = n_of(spec, doc);
  if (fixed_v && fixed_v->cols() != inst.n) throw InputError("V", "expected " + std::to_string(inst.n) + " columns");
  if (inst.n == 0 || inst.n > inst.m) throw UsageError("oracle needs 1 <= n <= m");
  inst.r1 = spec.r1.value_or(inst.n);
  inst.r2 = spec.r2.value_or(2 * inst.n);
  if (has_projections(inst.kind) && (inst.r1 > inst.m || inst.r2 > inst.m)) throw UsageError("--r1 and --r2 must not exceed m");

  OracleOptions opts;
  opts.budget = spec.budget;
  opts.sign_samples = spec.sign_samples;
  opts.seed = spec.seed;
  opts.jobs = spec.jobs;
  const std::size_t trials = spec.trials.value_or(1);

  std::uint64_t total = 0;
  std::vector<std::pair<std::size_t, Violation>> all;
  Json detail = Json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    inst.v_basis = fixed_v ? *fixed_v : random_subspace(inst.m, inst.n, spec.bound, mix_seed(spec.seed, t));
    opts.seed = mix_seed(spec.seed, 1000 + t);
    CollisionReport rep = exhaustive_oracle(inst, opts);
    total += rep.pairs_checked;
    detail.push_back(Json{{"trial", t},
                          {"v_basis", to_json(inst.v_basis)},
                          {"pairs_checked", rep.pairs_checked},
                          {"sign_patterns", rep.sign_patterns},
                          {"signs_sampled", rep.signs_sampled},
                          {"violations", rep.violations.size()}});
    for (auto& v : rep.violations) all.emplace_back(t, std::move(v));
  }
  if (spec.format == "csv") {
    std::vector<Violation> flat;
    for (auto& [t, v] : all) flat.push_back(v);
    write_violations_csv(out, flat, total);
  } else {
    require_json(spec);
    Json res = header(spec);
    res["class"] = to_string(inst.kind);
    res["m"] = inst.m;
    res["n"] = inst.n;
    if (has_projections(inst.kind)) {
      res["r1"] = inst.r1;
      res["r2"] = inst.r2;
    }
    if (inst.kind == ClassKind::endo_pair) res["mode"] = inst.point_mode ? "point" : "subspace";
    res["sign_mode"] = to_string(inst.sign_mode);
    res["trials"] = trials;
    res["seed"] = spec.seed;
    res["pairs_checked"] = total;
    res["violation_count"] = all.size();
    res["trials_detail"] = detail;
    Json vs = Json::array();
    for (const auto& [t, v] : all) {
      Json x = to_json(v);
      x["trial"] = t;
      vs.push_back(std::move(x));
    }
    res["violations"] = vs;
    out << res.dump(2) << '\n';
  }
  return all.empty() ? kSuccess : kRefuted;
}

}  // namespace detail

/// Runs one job; the document goes to `spec.out_path` or `out`, diagnostics
/// to `err`.
inline int run(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  std::ostringstream doc;
  int code = kError;
  try {
    if (spec.command == "certify") code = detail::certify(spec, doc);
    else if (spec.command == "decompose") code = detail::decompose(spec, doc);
    else if (spec.command == "construct") code = detail::construct(spec, doc);
    else if (spec.command == "oracle") code = detail::oracle(spec, doc);
    else if (spec.command == "bound") code = detail::bound(spec, doc);
    else throw detail::UsageError("unknown command \"" + spec.command + "\"");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  if (spec.out_path.empty()) {
    out << doc.str();
  } else {
    std::ofstream f(spec.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << spec.out_path << '\n';
      return kError;
    }
    f << doc.str();
  }
  return code;
}

}  // namespace homsense::cli
