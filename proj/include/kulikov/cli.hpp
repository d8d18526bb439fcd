#pragma once

// Command-line front end. Reports go to `out` as JSON; a short human summary
// goes to `err` unless --quiet is given.
//
// Exit codes: 0 success, 1 semantic failure (a named check failed),
// 2 unreadable input or malformed document.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kulikov/io.hpp"

namespace kulikov::cli {

using io::Json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitSemantic = 1;
inline constexpr int kExitInput = 2;

/// I/O failures share the schema exit code.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct Options {
  bool quiet = false;
  std::optional<long long> window;
  bool unsafe = false;

  WindowOptions window_options() const {
    WindowOptions w;
    if (window) w.radius = Integer(*window);
    w.allow_unsafe = unsafe;
    return w;
  }
};

struct Outcome {
  Json report;
  int code = kExitOk;
  std::string summary;
};

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline Json validation_json(const ValidationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"checks", checks}, {"h_invariant", r.h_invariant}, {"valid", r.ok()}};
}

inline std::string failed_checks(const ValidationReport& r) {
  std::string names;
  for (const auto& c : r.checks)
    if (!c.passed) names += (names.empty() ? "" : ", ") + c.name;
  return names;
}

inline Outcome cmd_validate(const Json& doc) {
  const DegenerationData d = io::degeneration_data_from_json(doc);
  const ValidationReport r = validate(d);
  Outcome o{{{"command", "validate"}, {"input", doc}, {"validation", validation_json(r)}}, kExitOk, ""};
  if (!r.ok()) {
    o.code = kExitSemantic;
    o.report["failed"] = failed_checks(r);
    o.summary = "validation failed: " + failed_checks(r);
  } else {
    o.summary = std::string("valid") + (r.h_invariant ? ", a is H-invariant" : ", a is not H-invariant");
  }
  return o;
}

inline Json complex_summary(const DeltaComplex& c) {
  return {{"vertices", c.count(0)},
          {"edges", c.count(1)},
          {"triangles", c.count(2)},
          {"euler_characteristic", euler_characteristic(c)}};
}

/// Everything attached to one set of data: fan, complexes, counts, type, monodromy.
inline Outcome classify_report(const Json& doc, const Options& opts) {
  const DegenerationData d = io::degeneration_data_from_json(doc);
  const ValidationReport validation = validate(d);
  Outcome o;
  o.report = {{"command", "classify"}, {"input", doc}, {"validation", validation_json(validation)}};
  if (!validation.ok()) {
    o.code = kExitSemantic;
    o.report["failed"] = failed_checks(validation);
    o.summary = "validation failed: " + failed_checks(validation);
    return o;
  }

  const ScaledFan scaled = auto_scale(d);
  const CertifiedFan fan = certify(scaled.fan.triangulation, opts.window_options());
  const DegenerationData model = base_change(d, scaled.nu);
  const std::size_t t = toric_rank(d);

  const ComponentCounts counts = component_counts(model);
  const ComponentGroup phi = t == 0 ? ComponentGroup{} : component_group(model.b);
  const DualComplex dual = dual_complex(fan);
  const DeltaComplex quotient = h_quotient(dual.complex, dual.action);
  const KulikovType type = classify_kummer_type(model, quotient);

  const RationalOperator n = standard_N(t);
  const KummerMonodromy nx = kummer_monodromy(n);
  const unsigned index = nilpotency_index(nx);
  const KulikovType monodromy_type = type_from_index(index);

  Json divisors = Json::array();
  for (const auto& x : phi.divisors) divisors.push_back(io::to_json(x));

  const Integer det_b = abs_value(determinant(model.b));
  Json consistency = {
      {"phi_order_vs_det_b", phi.order() == det_b},
      {"N_A_vs_dual_vertices", counts.n_a == Integer(dual.complex.count(0))},
      {"N_X_vs_quotient_vertices", counts.n_x == Integer(quotient.count(0))},
      {"type_rank_vs_monodromy", type == monodromy_type},
      {"N_rank_vs_toric_rank", toric_rank_from_N(n) == t},
      {"involution_valid", is_valid_involution(dual.complex, dual.action)},
  };
  if (t >= 1) {
    // 1/2 #Phi + 2^{t-1}
    const Integer closed = phi.order() / 2 + pow_int(Integer(2), static_cast<unsigned>(t - 1));
    consistency["N_X_vs_closed_formula"] = counts.n_x == closed;
  }

  bool consistent = true;
  for (const auto& [key, value] : consistency.items()) consistent = consistent && value.get<bool>();

  o.report["toric_rank"] = t;
  o.report["nu"] = io::to_json(scaled.nu);
  o.report["component_group"] = {
      {"divisors", divisors}, {"order", io::to_json(phi.order())}, {"two_torsion", io::to_json(two_torsion_order(phi))}};
  o.report["N_A"] = io::to_json(counts.n_a);
  o.report["N_X"] = io::to_json(counts.n_x);
  o.report["kulikov_type"] = std::string(to_string(type));
  o.report["fan"] = {{"certificates", io::to_json(fan.certificates)},
                     {"simplex_classes", fan.triangulation.simplices().size()},
                     {"window_property_d", io::to_json(safe_window_property_d(fan.triangulation))},
                     {"window_h_freeness", io::to_json(safe_window_h_freeness(fan.triangulation))}};
  Json dual_a = complex_summary(dual.complex);
  dual_a["shape"] = t == 0 ? "point" : t == 1 ? (is_cycle(dual.complex) ? "cycle" : "other")
                                              : (is_closed_surface_with_chi(dual.complex, 0) ? "closed_surface_chi_0" : "other");
  Json dual_x = complex_summary(quotient);
  dual_x["shape"] = t == 0 ? "point" : t == 1 ? "chain" : "sphere";
  o.report["dual_complex"] = {{"A", dual_a}, {"X", dual_x}};
  o.report["monodromy"] = {{"N_rank", toric_rank_from_N(n)},
                           {"nilpotency_index_N", nilpotency_index(n)},
                           {"nilpotency_index_N_X", index},
                           {"kulikov_type", std::string(to_string(monodromy_type))}};
  o.report["consistency"] = consistency;
  o.report["consistent"] = consistent;
  if (!fan.certificates.all()) {
    consistent = false;
    o.report["consistent"] = false;
  }

  o.code = consistent ? kExitOk : kExitSemantic;
  std::ostringstream s;
  s << "type " << to_string(type) << ", t = " << t << ", nu = " << scaled.nu << ", N_A = " << counts.n_a
    << ", N_X = " << counts.n_x << ", chi(Delta_X) = " << euler_characteristic(quotient)
    << (consistent ? "" : " [INCONSISTENT]");
  o.summary = s.str();
  return o;
}

inline Json base_change_json(const DegenerationData& d, const Integer& e) {
  const BaseChangeCounts bc = base_change_counts(d, e);
  // Independent route: certify a fan for the extended data and count Delta_X.
  const ScaledFan rebuilt = auto_scale(base_change(d, e));
  Json row = {{"e", io::to_json(e)},
              {"N", io::to_json(bc.n)},
              {"N_L", io::to_json(bc.n_l)},
              {"formula_N_L", io::to_json(bc.formula_n_l)},
              {"phi_order", io::to_json(bc.phi_order)},
              {"phi_L_order", io::to_json(bc.phi_l_order)},
              {"rebuild_nu", io::to_json(rebuilt.nu)}};
  bool consistent = bc.consistent(d.rank);
  if (rebuilt.nu == 1) {
    const DualComplex dual = dual_complex(rebuilt.fan);
    const DeltaComplex quotient = h_quotient(dual.complex, dual.action);
    row["N_L_rebuilt"] = quotient.count(0);
    consistent = consistent && Integer(quotient.count(0)) == bc.n_l;
  } else {
    consistent = false;
  }
  row["consistent"] = consistent;
  return row;
}

inline Outcome cmd_base_change(const Json& doc, const std::vector<long long>& es, const char* command) {
  const DegenerationData d = io::degeneration_data_from_json(doc);
  const ValidationReport validation = validate(d);
  Outcome o;
  o.report = {{"command", command}, {"input", doc}};
  if (!validation.ok()) {
    o.code = kExitSemantic;
    o.report["failed"] = failed_checks(validation);
    o.summary = "validation failed: " + failed_checks(validation);
    return o;
  }
  Json table = Json::array();
  bool consistent = true;
  std::ostringstream s;
  for (long long e : es) {
    Json row = base_change_json(d, Integer(e));
    consistent = consistent && row["consistent"].get<bool>();
    s << "e = " << e << ": N = " << row["N"] << ", N_L = " << row["N_L"] << "; ";
    table.push_back(std::move(row));
  }
  o.report["base_change"] = table;
  o.report["consistent"] = consistent;
  o.code = consistent ? kExitOk : kExitSemantic;
  o.summary = s.str() + (consistent ? "consistent" : "INCONSISTENT");
  return o;
}

inline Outcome cmd_monodromy(std::optional<long long> toric_rank, const std::optional<Json>& matrix,
                             const std::optional<Json>& perm) {
  Outcome o;
  o.report = {{"command", "monodromy"}};
  RationalOperator n;
  if (matrix) {
    n = io::operator_from_json(*matrix);
    if (n.rows() != 4) throw io::SchemaError("monodromy matrix must have dim 4");
    o.report["input"] = *matrix;
  } else {
    if (!toric_rank || *toric_rank < 0) throw io::SchemaError("--toric-rank must be 0, 1 or 2");
    n = standard_N(static_cast<std::size_t>(*toric_rank));
    o.report["input"] = {{"toric_rank", *toric_rank}};
  }
  const std::size_t t = toric_rank_from_N(n);
  const KummerMonodromy nx = kummer_monodromy(n);
  const unsigned index = nilpotency_index(nx);
  const KulikovType type = type_from_index(index);
  o.report["toric_rank"] = t;
  o.report["nilpotency_index"] = index;
  o.report["kulikov_type"] = std::string(to_string(type));
  o.report["N_X_wedge_block"] = io::to_json(nx.wedge_block);
  o.report["consistent"] = type == type_from_toric_rank(t);
  if (perm) {
    const TwoTorsionPermutation p = io::permutation_from_json(*perm);
    o.report["two_torsion_trivial"] = two_torsion_trivial(p);
  }
  o.code = o.report["consistent"].get<bool>() ? kExitOk : kExitSemantic;
  o.summary = "rank " + std::to_string(t) + ", nilpotency index " + std::to_string(index) + ", type " +
              std::string(to_string(type));
  return o;
}

inline Outcome cmd_fan_build(const Json& doc, const Options& opts) {
  const DegenerationData d = io::degeneration_data_from_json(doc);
  const ScaledFan scaled = auto_scale(d);
  const ScaledFan rechecked{scaled.nu, certify(scaled.fan.triangulation, opts.window_options())};
  Outcome o{io::to_json(rechecked), kExitOk, ""};
  o.code = rechecked.fan.certificates.all() ? kExitOk : kExitSemantic;
  o.summary = "nu = " + to_string(scaled.nu) + ", " + std::to_string(scaled.fan.triangulation.simplices().size()) +
              " simplex classes";
  return o;
}

inline Outcome cmd_fan_check(const Json& doc, const Options& opts) {
  const PeriodicTriangulation t = io::fan_from_json(doc);
  const CertifiedFan fan = certify(t, opts.window_options());
  Outcome o;
  o.report = {{"command", "fan check"},
              {"certificates", io::to_json(fan.certificates)},
              {"violations", {{"property_d", io::to_json(fan.property_d_violations)},
                              {"h_free", io::to_json(fan.h_violations)}}}};
  o.code = fan.certificates.all() ? kExitOk : kExitSemantic;
  std::string failed;
  for (const auto& [key, value] : o.report["certificates"].items())
    if (!value.get<bool>()) failed += (failed.empty() ? "" : ", ") + key;
  if (!failed.empty()) o.report["failed"] = failed;
  o.summary = failed.empty() ? "all certificates pass" : "failed: " + failed;
  return o;
}

inline Outcome cmd_complex_dual(const Json& doc, const Options& opts) {
  const PeriodicTriangulation t = io::fan_from_json(doc);
  const CertifiedFan fan = certify(t, opts.window_options());
  const DualComplex dual = dual_complex(fan);
  Outcome o{io::to_json(dual.complex, &dual.action), kExitOk, ""};
  o.report["euler_characteristic"] = euler_characteristic(dual.complex);
  o.summary = "Delta_A: " + complex_summary(dual.complex).dump();
  return o;
}

inline Outcome cmd_complex_quotient(const Json& doc) {
  const io::ComplexDocument c = io::complex_from_json(doc);
  if (!c.action) throw io::SchemaError("complex document has no \"involution\" field");
  const DeltaComplex q = h_quotient(c.complex, *c.action);
  Outcome o{io::to_json(q), kExitOk, ""};
  o.report["euler_characteristic"] = euler_characteristic(q);
  o.summary = "Delta_X: " + complex_summary(q).dump();
  return o;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

inline int emit(const Outcome& o, const Options& opts, std::ostream& out, std::ostream& err) {
  out << o.report.dump(2) << "\n";
  if (!opts.quiet && !o.summary.empty()) err << o.summary << "\n";
  return o.code;
}

inline int emit_error(const std::string& code, const std::string& message, int exit_code, std::ostream& out,
                      std::ostream& err) {
  const Json report = {{"error", {{"code", code}, {"message", message}}}};
  out << report.dump(2) << "\n";
  err << "error: " << message << "\n";
  return exit_code;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Kulikov models of Kummer surfaces from degeneration data"};
  app.require_subcommand(1);
  Options opts;
  std::optional<long long> window;
  app.add_flag("--quiet,-q", opts.quiet, "Suppress the summary on stderr");
  app.add_option("--window", window, "Search radius for windowed fan checks");
  app.add_flag("--unsafe", opts.unsafe, "Allow --window below the safe bound");

  std::string path;
  std::vector<long long> es;
  std::optional<long long> toric_rank;
  std::string matrix_path;
  std::string perm_path;

  auto* validate_cmd = app.add_subcommand("validate", "Check the axioms of degeneration data");
  validate_cmd->add_option("file", path, "Degeneration data JSON")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Fan, complexes, counts and type");
  classify_cmd->add_option("file", path, "Degeneration data JSON")->required();

  auto* report_cmd = app.add_subcommand("report", "classify plus a base-change table");
  report_cmd->add_option("file", path, "Degeneration data JSON")->required();
  report_cmd->add_option("--e", es, "Ramification indices (default 1..6)");

  auto* bc_cmd = app.add_subcommand("base-change", "Component counts after a base change of index e");
  bc_cmd->add_option("file", path, "Degeneration data JSON")->required();
  bc_cmd->add_option("--e", es, "Ramification index")->required()->check(CLI::PositiveNumber);

  auto* mono_cmd = app.add_subcommand("monodromy", "Nilpotency index and type of N_X");
  auto* rank_opt = mono_cmd->add_option("--toric-rank", toric_rank, "Use the standard N of this rank");
  auto* matrix_opt = mono_cmd->add_option("--matrix", matrix_path, "4x4 operator N as matrix JSON");
  mono_cmd->add_option("--perm", perm_path, "Permutation JSON of A[2] to test for triviality");
  rank_opt->excludes(matrix_opt);

  auto* fan_cmd = app.add_subcommand("fan", "Fan construction and certification");
  fan_cmd->require_subcommand(1);
  auto* fan_build = fan_cmd->add_subcommand("build", "Scale and certify the standard fan");
  fan_build->add_option("file", path, "Degeneration data JSON")->required();
  auto* fan_check = fan_cmd->add_subcommand("check", "Certify a fan document");
  fan_check->add_option("file", path, "Fan JSON")->required();

  auto* complex_cmd = app.add_subcommand("complex", "Dual complexes");
  complex_cmd->require_subcommand(1);
  auto* complex_dual = complex_cmd->add_subcommand("dual", "Delta_A of a fan, with its involution");
  complex_dual->add_option("file", path, "Fan JSON")->required();
  auto* complex_quotient = complex_cmd->add_subcommand("quotient", "Quotient of a complex by its involution");
  complex_quotient->add_option("file", path, "Complex JSON with an involution")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  fan_build->fallthrough();
  fan_check->fallthrough();
  complex_dual->fallthrough();
  complex_quotient->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  opts.window = window;

  try {
    Outcome o;
    if (*validate_cmd) {
      o = cmd_validate(read_json_file(path));
    } else if (*classify_cmd) {
      o = classify_report(read_json_file(path), opts);
    } else if (*report_cmd) {
      const Json doc = read_json_file(path);
      o = classify_report(doc, opts);
      if (o.code == kExitOk) {
        if (es.empty()) es = {1, 2, 3, 4, 5, 6};
        Outcome bc = cmd_base_change(doc, es, "report");
        o.report["command"] = "report";
        o.report["base_change"] = bc.report["base_change"];
        o.report["consistent"] = o.report["consistent"].get<bool>() && bc.report["consistent"].get<bool>();
        if (bc.code != kExitOk) o.code = bc.code;
        o.summary += "\n" + bc.summary;
      }
    } else if (*bc_cmd) {
      for (long long e : es)
        if (e <= 0) throw io::SchemaError("--e must be positive");
      o = cmd_base_change(read_json_file(path), es, "base-change");
    } else if (*mono_cmd) {
      std::optional<Json> matrix, perm;
      if (!matrix_path.empty()) matrix = read_json_file(matrix_path);
      if (!perm_path.empty()) perm = read_json_file(perm_path);
      if (!matrix && !toric_rank) throw io::SchemaError("monodromy needs --toric-rank or --matrix");
      o = cmd_monodromy(toric_rank, matrix, perm);
    } else if (*fan_build) {
      o = cmd_fan_build(read_json_file(path), opts);
    } else if (*fan_check) {
      o = cmd_fan_check(read_json_file(path), opts);
    } else if (*complex_dual) {
      o = cmd_complex_dual(read_json_file(path), opts);
    } else if (*complex_quotient) {
      o = cmd_complex_quotient(read_json_file(path));
    }
    return emit(o, opts, out, err);
  } catch (const InputError& e) {
    return emit_error("InputError", e.what(), kExitInput, out, err);
  } catch (const io::SchemaError& e) {
    return emit_error("SchemaError", e.what(), kExitInput, out, err);
  } catch (const Json::exception& e) {
    return emit_error("SchemaError", e.what(), kExitInput, out, err);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DimensionMismatch) return emit_error("SchemaError", e.what(), kExitInput, out, err);
    return emit_error(std::string(error_name(e.code())), e.what(), kExitSemantic, out, err);
  }
}

}  // namespace kulikov::cli
