// Copyright 2026 The fock-toeplitz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// fock_toeplitz: command-line front end.
//
// Exit status: 0 success, 1 domain error (divergent series, unbounded
// composition, uncertified tail, no convergence), 2 usage or input error.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acceptance/suite.hpp"
#include "cli_io.hpp"
#include "fock/algebra.hpp"
#include "fock/assembly.hpp"
#include "fock/carleson.hpp"
#include "fock/symbol.hpp"

#ifndef FOCK_TOEPLITZ_VERSION
#define FOCK_TOEPLITZ_VERSION "unknown"
#endif

namespace fock::cli {
namespace {

constexpr const char* kSource =
    "Toeplitz operators on the Fock space F^2 with symbols given by functions, measures, "
    "coderivatives of measures and point distributions";

struct SymbolInput {
  std::string file;
  std::string text;
  std::vector<std::string> params;
};

struct Common {
  std::string out;
  std::string report;
  std::uint64_t seed = 7;
  int radial_nodes = 96;
  int angular_nodes = 256;
  double cutoff = 0.0;
  double tolerance = 1e-10;
  double r = kDefaultCarlesonRadius;
  double R = kDefaultSearchRadius;
  bool serial = false;

  QuadratureSpec spec() const {
    QuadratureSpec s;
    s.radial_nodes = radial_nodes;
    s.angular_nodes = angular_nodes;
    s.radial_cutoff = cutoff;
    s.tolerance = tolerance;
    s.validate();
    return s;
  }
  Exec exec() const { return serial ? Exec::serial : Exec::parallel; }
};

// Where the last parsed symbol came from, for error positions.
std::string g_symbol_file;

void add_symbol_options(CLI::App* cmd, SymbolInput& in, bool required = true) {
  auto* group = cmd->add_option_group("symbol");
  group->add_option("--symbol,-s", in.file, "symbol file")->check(CLI::ExistingFile);
  group->add_option("--text,-t", in.text, "symbol text");
  if (required) group->require_option(1);
  cmd->add_option("--param,-p", in.params, "parameter binding name=value (repeatable)");
}

void add_common_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--out,-o", c.out, "output file (default: stdout)");
  cmd->add_option("--report", c.report, "JSON report with the run manifest");
  cmd->add_option("--seed", c.seed, "seed for randomized steps");
  cmd->add_option("--radial-nodes", c.radial_nodes, "radial quadrature nodes");
  cmd->add_option("--angular-nodes", c.angular_nodes, "angular quadrature nodes");
  cmd->add_option("--cutoff", c.cutoff, "radial cutoff, 0 for the whole plane");
  cmd->add_option("--tolerance", c.tolerance, "quadrature self-check tolerance");
  cmd->add_option("--r", c.r, "Carleson disk radius")->check(CLI::PositiveNumber);
  cmd->add_option("--R", c.R, "Carleson search radius")->check(CLI::PositiveNumber);
  cmd->add_flag("--serial", c.serial, "use the serial reference kernels");
}

expr::Params parse_params(const std::vector<std::string>& bindings) {
  expr::Params params;
  for (const std::string& b : bindings) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("bad --param '" + b + "', expected name=value");
    try {
      params[b.substr(0, eq)] = std::stod(b.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad --param '" + b + "', value is not a number");
    }
  }
  return params;
}

SymbolDocument load_symbol(const SymbolInput& in) {
  const expr::Params params = parse_params(in.params);
  if (!in.file.empty()) {
    g_symbol_file = in.file;
    return parse_document(in.file, read_symbol_file(in.file), params);
  }
  g_symbol_file.clear();
  return parse_document("<text>", in.text, params);
}

Json manifest(const std::string& command, const Common& c, const std::vector<SymbolDocument>& docs,
              const Json& extra) {
  Json symbols = Json::array();
  for (const SymbolDocument& d : docs) {
    Json p = Json::object();
    for (const auto& [k, v] : d.params) p[k] = v;
    symbols.push_back(Json{{"name", d.name}, {"text", to_string(d.symbol)}, {"params", p}});
  }
  Json m{{"tool", "fock_toeplitz"},
         {"version", FOCK_TOEPLITZ_VERSION},
         {"source", kSource},
         {"command", command},
         {"symbols", symbols},
         {"quadrature",
          {{"radial_nodes", c.radial_nodes},
           {"angular_nodes", c.angular_nodes},
           {"radial_cutoff", c.cutoff},
           {"tolerance", c.tolerance}}},
         {"carleson", {{"r", c.r}, {"R", c.R}}},
         {"exec", c.serial ? "serial" : "parallel"},
         {"seed", c.seed}};
  for (const auto& [k, v] : extra.items()) m[k] = v;
  return m;
}

void emit_report(const Common& c, Json m, Json outputs) {
  if (c.report.empty()) return;
  m["outputs"] = std::move(outputs);
  write_output(c.report, m.dump(2) + "\n");
}

Json carleson_json(const CarlesonReport& rep) {
  return Json{{"k2", rep.k2},
              {"r", rep.r},
              {"R", rep.R},
              {"C_k", log_json(rep.C_k)},
              {"C_tilde_k", log_json(rep.C_tilde_k)},
              {"lower", log_json(rep.lower)},
              {"upper", log_json(rep.upper)},
              {"tail", log_json(rep.tail)},
              {"varpi_bound", log_json(rep.varpi_bound)},
              {"samples", rep.samples}};
}

const MeasureSymbol& measure_of(const Symbol& s) {
  if (const auto* m = std::get_if<MeasureSymbol>(&s.v)) return *m;
  if (const auto* c = std::get_if<CoderivedSymbol>(&s.v)) return c->base;
  throw UsageError("expected a measure or coderivative symbol");
}

// --- subcommands ----------------------------------------------------------

struct AssembleArgs {
  SymbolInput sym;
  Common common;
  std::size_t degree = 16;
  std::string format = "csv";
  double series_tol = 0.1;
};

int run_assemble(const AssembleArgs& a) {
  const SymbolDocument doc = load_symbol(a.sym);
  AssemblyOptions opt;
  opt.spec = a.common.spec();
  opt.exec = a.common.exec();
  opt.series_tolerance = a.series_tol;
  opt.carleson_r = a.common.r;
  opt.carleson_R = a.common.R;
  const OperatorMatrix m = assemble(doc.symbol, a.degree, opt);
  write_output(a.common.out, a.format == "json" ? matrix_json(m).dump(1) + "\n" : matrix_csv(m));
  emit_report(a.common, manifest("assemble", a.common, {doc}, {{"degree", a.degree}}),
              {{"matrix", a.common.out.empty() ? "-" : a.common.out},
               {"format", a.format},
               {"possibly_unbounded", m.possibly_unbounded}});
  return 0;
}

struct EigenseqArgs {
  SymbolInput sym;
  Common common;
  std::size_t degree = 16;
};

int run_eigenseq(const EigenseqArgs& a) {
  const SymbolDocument doc = load_symbol(a.sym);
  const auto* radial = std::get_if<RadialSymbol>(&doc.symbol.v);
  if (radial == nullptr) throw UsageError("eigenseq expects a radial(...) symbol");
  const auto gamma = radial_eigenvalues(*radial, a.degree, a.common.spec(), a.common.exec());
  std::string text = "k,re,im\n";
  Json values = Json::array();
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, gamma[k].real(), gamma[k].imag());
    text += buf;
    values.push_back(complex_json(gamma[k]));
  }
  write_output(a.common.out, text);
  emit_report(a.common, manifest("eigenseq", a.common, {doc}, {{"degree", a.degree}}), {{"eigenvalues", values}});
  return 0;
}

struct ActionArgs {
  SymbolInput sym;
  Common common;
  std::string point = "0";
  std::vector<std::string> coeffs;
  std::size_t basis = 0;
  bool use_basis = false;
};

int run_action(const ActionArgs& a) {
  const SymbolDocument doc = load_symbol(a.sym);
  const Complex z = parse_complex(a.point);
  FockVector f;
  if (!a.coeffs.empty()) {
    std::vector<Complex> c;
    for (const std::string& s : a.coeffs) c.push_back(parse_complex(s));
    f = FockVector(std::move(c));
  } else {
    f = FockVector::basis(a.basis);
  }
  const Complex v = action_at_point(doc.symbol, f, z, a.common.spec());
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v.real(), v.imag());
  write_output(a.common.out, buf);
  emit_report(a.common, manifest("action", a.common, {doc}, {{"point", complex_json(z)}, {"degree", f.degree()}}),
              {{"value", complex_json(v)}});
  return 0;
}

struct CarlesonArgs {
  SymbolInput sym;
  Common common;
  int k2 = 0;
  bool sharp = false;
  bool vanishing = false;
  int shift = -1;
};

int run_carleson(const CarlesonArgs& a) {
  const SymbolDocument doc = load_symbol(a.sym);
  const MeasureSymbol& mu = measure_of(doc.symbol);
  Json out;
  if (a.shift >= 0) {
    const RatioBracket b = equivalence_shift(mu, a.k2, a.shift, a.common.r, a.common.R);
    out = Json{{"equivalence_shift", {{"p", a.shift}, {"ratio", b.ratio}, {"lower", b.lower}, {"upper", b.upper}}}};
  } else {
    const CarlesonReport rep = a.sharp ? fc_constant_sharp(mu, a.k2, a.common.r, a.common.R, a.common.exec())
                                       : fc_constant(mu, a.k2, a.common.r, a.common.R, a.common.exec());
    out = carleson_json(rep);
    out["sharp"] = a.sharp;
  }
  if (a.vanishing) out["vanishing"] = vanishing_check(mu, a.k2, a.common.r, a.common.R);
  write_output(a.common.out, out.dump(2) + "\n");
  emit_report(a.common, manifest("carleson", a.common, {doc}, {{"k2", a.k2}}), out);
  return 0;
}

struct GateArgs {
  SymbolInput sym;
  Common common;
  double series_tol = 0.1;
};

int run_gate(const GateArgs& a) {
  const SymbolDocument doc = load_symbol(a.sym);
  const auto* series = std::get_if<SeriesSymbol>(&doc.symbol.v);
  if (series == nullptr) throw UsageError("gate expects a series(...) symbol");
  const SeriesGateReport rep = series_gate_report(*series, a.common.r, a.common.R, a.series_tol);
  Json groups = Json::array();
  for (std::size_t g = 0; g < rep.group_j.size(); ++g)
    groups.push_back(
        Json{{"j", rep.group_j[g]}, {"bound", log_json(rep.group_bounds[g])}, {"tail_after", log_json(rep.tail_after[g])}});
  Json terms = Json::array();
  for (const LogReal& t : rep.term_bounds) terms.push_back(log_json(t));
  const Json out{{"converged", rep.converged},
                 {"ratio", rep.ratio},
                 {"tolerance", a.series_tol},
                 {"total", log_json(rep.total)},
                 {"groups", groups},
                 {"term_bounds", terms}};
  write_output(a.common.out, out.dump(2) + "\n");
  emit_report(a.common, manifest("gate", a.common, {doc}, {}), out);
  if (!rep.converged) {
    std::fprintf(stderr, "fock_toeplitz: series diverges (ratio %.4g)\n", rep.ratio);
    return 1;
  }
  return 0;
}

struct NormArgs {
  SymbolInput sym;
  Common common;
  std::string matrix;
  long degree = -1;
};

OperatorMatrix matrix_input(const SymbolInput& sym, const Common& c, const std::string& matrix, long degree,
                            std::vector<SymbolDocument>& docs) {
  if (!matrix.empty()) return read_matrix_csv(matrix, degree);
  if (sym.file.empty() && sym.text.empty()) throw UsageError("give --matrix or a symbol");
  docs.push_back(load_symbol(sym));
  AssemblyOptions opt;
  opt.spec = c.spec();
  opt.exec = c.exec();
  opt.carleson_r = c.r;
  opt.carleson_R = c.R;
  return assemble(docs.back().symbol, degree < 0 ? 16 : static_cast<std::size_t>(degree), opt);
}

int run_norm(const NormArgs& a) {
  std::vector<SymbolDocument> docs;
  const OperatorMatrix m = matrix_input(a.sym, a.common, a.matrix, a.degree, docs);
  NormOptions opt;
  opt.seed = a.common.seed;
  const double norm = op_norm(m, opt);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g\n", norm);
  write_output(a.common.out, buf);
  emit_report(a.common, manifest("norm", a.common, docs, {{"degree", m.degree()}, {"matrix", a.matrix}}),
              {{"op_norm", norm}});
  return 0;
}

struct DecomposeArgs {
  SymbolInput sym;
  Common common;
  std::string matrix;
  long degree = -1;
  bool point_form = false;
};

int run_decompose(const DecomposeArgs& a) {
  std::vector<SymbolDocument> docs;
  const OperatorMatrix m = matrix_input(a.sym, a.common, a.matrix, a.degree, docs);
  const DecompositionResult d = decompose_to_symbol(m);
  const std::string text =
      a.point_form ? to_string(Symbol{d.point_form}) : to_string(d.symbol());
  write_output(a.common.out, text + "\n");
  emit_report(a.common, manifest("decompose", a.common, docs, {{"degree", m.degree()}, {"matrix", a.matrix}}),
              {{"terms", d.terms.size()}, {"symbol", text}});
  return 0;
}

struct ApproxArgs {
  Common common;
  int n = 1;
  std::size_t degree = 48;
  std::size_t rank_one = 0;
};

int run_approx(const ApproxArgs& a) {
  Json out;
  if (a.rank_one > 0) {
    const auto errs = rank_one_approximation_experiment(a.rank_one, a.rank_one, a.degree);
    out = Json{{"rank_one", a.rank_one}, {"degree", a.degree}, {"errors", errs},
               {"tail", rank_one_tail(a.rank_one, a.degree)}};
  } else {
    const ApproximationResult r = approximation_experiment(a.n, a.degree, a.common.exec());
    out = Json{{"n", a.n}, {"degree", a.degree}, {"norm_distance", r.norm_distance},
               {"expected", 1.0 / (1.0 + a.n)}, {"argmax", r.argmax}};
  }
  write_output(a.common.out, out.dump(2) + "\n");
  emit_report(a.common, manifest("approx", a.common, {}, {}), out);
  return 0;
}

struct VerifyArgs {
  Common common;
  std::string suite = "all";
};

std::vector<int> parse_suite(const std::string& s) {
  if (s == "all") return {};
  std::vector<int> ids;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const int id = std::stoi(item);
      if (id < 1 || id > acceptance::kCriterionCount) throw std::out_of_range(item);
      ids.push_back(id);
    } catch (const std::exception&) {
      throw UsageError("bad --suite entry '" + item + "'");
    }
  }
  return ids;
}

// C_0(mu_0) / C_2(mu) for single atoms at radii 1..30.
acceptance::Note per_atom_ratios(double r, double R) {
  double lo = 1e300;
  double hi = 0.0;
  double bracket_lo = 1e300;
  double bracket_hi = 0.0;
  for (int rho = 1; rho <= 30; ++rho) {
    const MeasureSymbol mu = std::get<MeasureSymbol>(parse_symbol("atoms(" + std::to_string(rho) + ":1)").v);
    const RatioBracket b = equivalence_shift(mu, 4, 0, r, R);
    lo = std::min(lo, b.ratio);
    hi = std::max(hi, b.ratio);
    bracket_lo = std::min(bracket_lo, b.lower);
    bracket_hi = std::max(bracket_hi, b.upper);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "single atoms at radii 1..30, k = 2, p = 0: sampled ratio in [%.4f, %.4f], "
                "certified brackets within [%.4f, %.4f], window [1/9, 9]",
                lo, hi, bracket_lo, bracket_hi);
  return {"equivalence-per-atom", buf};
}

int run_verify(const VerifyArgs& a) {
  const auto report = acceptance::run_suite(parse_suite(a.suite), a.common.seed);
  std::vector<acceptance::Note> notes = report.notes;
  if (a.suite == "all") notes.push_back(per_atom_ratios(a.common.r, a.common.R));
  std::string text;
  Json criteria = Json::array();
  for (const auto& r : report.criteria) {
    text += acceptance::format_line(r) + "\n";
    criteria.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  Json notes_json = Json::array();
  for (const auto& n : notes) {
    text += "note  " + n.topic + ": " + n.text + "\n";
    notes_json.push_back(Json{{"topic", n.topic}, {"text", n.text}});
  }
  write_output(a.common.out, text);
  emit_report(a.common, manifest("verify", a.common, {}, {{"suite", a.suite}}),
              {{"all_pass", report.all_pass()}, {"criteria", criteria}, {"notes", notes_json}});
  return report.all_pass() ? 0 : 1;
}

void report_parse_error(const ParseError& e) {
  if (!g_symbol_file.empty()) {
    const auto [line, col] = line_column(g_symbol_file, e.position());
    std::fprintf(stderr, "%s:%zu:%zu: %s\n", g_symbol_file.c_str(), line, col, e.what());
  } else {
    std::fprintf(stderr, "<text>:1:%zu: %s\n", e.position() + 1, e.what());
  }
}

void apply_thread_env() {
  if (const char* env = std::getenv("FOCK_TOEPLITZ_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

}  // namespace
}  // namespace fock::cli

int main(int argc, char** argv) {
  using namespace fock::cli;
  apply_thread_env();

  CLI::App app{"Toeplitz operators on the Fock space"};
  app.set_version_flag("--version", std::string("fock_toeplitz ") + FOCK_TOEPLITZ_VERSION);
  app.require_subcommand(1);

  AssembleArgs assemble_args;
  auto* assemble_cmd = app.add_subcommand("assemble", "matrix of T_s on polynomials of degree <= N");
  add_symbol_options(assemble_cmd, assemble_args.sym);
  add_common_options(assemble_cmd, assemble_args.common);
  assemble_cmd->add_option("--degree,-N", assemble_args.degree, "truncation degree N");
  assemble_cmd->add_option("--format", assemble_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  assemble_cmd->add_option("--series-tol", assemble_args.series_tol, "series gate tolerance");

  EigenseqArgs eigen_args;
  auto* eigen_cmd = app.add_subcommand("eigenseq", "eigenvalues of a radial symbol");
  add_symbol_options(eigen_cmd, eigen_args.sym);
  add_common_options(eigen_cmd, eigen_args.common);
  eigen_cmd->add_option("--degree,-N", eigen_args.degree, "largest index");

  ActionArgs action_args;
  auto* action_cmd = app.add_subcommand("action", "(T_s f)(z) without truncation");
  add_symbol_options(action_cmd, action_args.sym);
  add_common_options(action_cmd, action_args.common);
  action_cmd->add_option("--point,-z", action_args.point, "evaluation point, \"x,y\" or an expression");
  auto* vec = action_cmd->add_option("--coeffs", action_args.coeffs, "coefficients of f in e_k");
  action_cmd->add_option("--basis", action_args.basis, "f = e_k")->excludes(vec);

  CarlesonArgs carleson_args;
  auto* carleson_cmd = app.add_subcommand("carleson", "k-Fock-Carleson constant of a measure");
  add_symbol_options(carleson_cmd, carleson_args.sym);
  add_common_options(carleson_cmd, carleson_args.common);
  carleson_cmd->add_option("--k2", carleson_args.k2, "2k")->required()->check(CLI::NonNegativeNumber);
  carleson_cmd->add_flag("--sharp", carleson_args.sharp, "use the sharp weight");
  carleson_cmd->add_flag("--vanishing", carleson_args.vanishing, "also run the vanishing check");
  carleson_cmd->add_option("--shift", carleson_args.shift, "report C_p(mu_p)/C_k(mu) for this p");

  GateArgs gate_args;
  auto* gate_cmd = app.add_subcommand("gate", "norm gate of a series symbol");
  add_symbol_options(gate_cmd, gate_args.sym);
  add_common_options(gate_cmd, gate_args.common);
  gate_cmd->add_option("--series-tol", gate_args.series_tol, "series gate tolerance");

  NormArgs norm_args;
  auto* norm_cmd = app.add_subcommand("norm", "operator norm of a matrix or an assembled symbol");
  add_symbol_options(norm_cmd, norm_args.sym, false);
  add_common_options(norm_cmd, norm_args.common);
  norm_cmd->add_option("--matrix,-m", norm_args.matrix, "matrix CSV")->check(CLI::ExistingFile);
  norm_cmd->add_option("--degree,-N", norm_args.degree, "truncation degree");

  DecomposeArgs decompose_args;
  auto* decompose_cmd = app.add_subcommand("decompose", "symbol of a finite matrix");
  add_symbol_options(decompose_cmd, decompose_args.sym, false);
  add_common_options(decompose_cmd, decompose_args.common);
  decompose_cmd->add_option("--matrix,-m", decompose_args.matrix, "matrix CSV")->check(CLI::ExistingFile);
  decompose_cmd->add_option("--degree,-N", decompose_args.degree, "truncation degree");
  decompose_cmd->add_flag("--point-form", decompose_args.point_form, "print the point distribution at 0");

  ApproxArgs approx_args;
  auto* approx_cmd = app.add_subcommand("approx", "approximation experiments");
  add_common_options(approx_cmd, approx_args.common);
  approx_cmd->add_option("--n", approx_args.n, "index of a_n")->check(CLI::NonNegativeNumber);
  approx_cmd->add_option("--degree,-N", approx_args.degree, "truncation degree");
  approx_cmd->add_option("--rank-one", approx_args.rank_one, "rank-one experiment with m terms");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  add_common_options(verify_cmd, verify_args.common);
  verify_cmd->add_option("--suite", verify_args.suite, "all or a comma-separated list of criterion ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*assemble_cmd) return run_assemble(assemble_args);
    if (*eigen_cmd) return run_eigenseq(eigen_args);
    if (*action_cmd) return run_action(action_args);
    if (*carleson_cmd) return run_carleson(carleson_args);
    if (*gate_cmd) return run_gate(gate_args);
    if (*norm_cmd) return run_norm(norm_args);
    if (*decompose_cmd) return run_decompose(decompose_args);
    if (*approx_cmd) return run_approx(approx_args);
    if (*verify_cmd) return run_verify(verify_args);
  } catch (const fock::ParseError& e) {
    report_parse_error(e);
    return 2;
  } catch (const fock::ValidationError& e) {
    std::fprintf(stderr, "fock_toeplitz: invalid input: %s\n", e.what());
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "fock_toeplitz: %s\n", e.what());
    return 2;
  } catch (const fock::Error& e) {
    std::fprintf(stderr, "fock_toeplitz: %s\n", e.what());
    return 1;
  }
  return 2;
}
