//====== treeharm command line ======//
//
// Subcommands: spectrum, spherical, verify, nesting. Exit codes: 0 success,
// 1 verification/strictness failure, 2 input validation, 3 classification
// unavailable (independence assumption dropped).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treeharm/boundary.hpp"
#include "treeharm/jsonio.hpp"
#include "treeharm/radial.hpp"
#include "treeharm/spectra.hpp"
#include "treeharm/spherical.hpp"
#include "treeharm/tree.hpp"
#include "treeharm/verify.hpp"

namespace {

using namespace treeharm;

struct CliConfig {
  int d0 = 0, d1 = 0, kappa = 0;
  std::string preset;
  int q = 0;
  long long budget = 0;
  bool no_tits = false;
  std::string format = "json";
  std::string output;
  Tolerances tol;
  bool corrupt_kernel = false;
};

void add_common(CLI::App* sub, CliConfig& cfg) {
  sub->add_option("--d0", cfg.d0, "degree on the root side");
  sub->add_option("--d1", cfg.d1, "degree on the opposite side");
  sub->add_option("--kappa", cfg.kappa, "orbit step, 1 or 2");
  sub->add_option(
      "--preset", cfg.preset,
      "homogeneous3 | semihomog23 | semihomog45 | bruhat-tits-q");
  sub->add_option("--q", cfg.q, "prime residue degree for bruhat-tits-q");
  sub->add_option("--budget", cfg.budget,
                  "vertex budget (overrides TREEHARM_BUDGET)");
  sub->add_flag("--no-tits-independence", cfg.no_tits,
                "drop the independence assumption; classification-dependent "
                "output degrades to the certified lower bound");
  sub->add_option("--format", cfg.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("-o,--output", cfg.output, "write to a file, not stdout");
  sub->add_option("--tol-identity", cfg.tol.identity, "exact-identity bound");
  sub->add_option("--tol-cross", cfg.tol.cross, "cross-evaluator bound");
  sub->add_option("--tol-psd-slack", cfg.tol.psd_slack, "Gram floor slack");
  sub->add_option("--tol-spectrum", cfg.tol.spectrum, "spectrum bound");
  sub->add_option("--tol-singular", cfg.tol.singular,
                  "singular-parameter detection radius");
  sub->add_flag("--corrupt-kernel", cfg.corrupt_kernel)->group("");
}

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

TreeParams resolve_params(const CliConfig& cfg) {
  int d0 = cfg.d0, d1 = cfg.d1, kappa = cfg.kappa;
  if (!cfg.preset.empty()) {
    if (cfg.preset == "homogeneous3") {
      d0 = d1 = 3;
      if (!kappa) kappa = 1;
    } else if (cfg.preset == "semihomog23") {
      d0 = 2, d1 = 3;
      if (!kappa) kappa = 2;
    } else if (cfg.preset == "semihomog45") {
      d0 = 4, d1 = 5;
      if (!kappa) kappa = 2;
    } else if (cfg.preset == "bruhat-tits-q") {
      // Tree of PGL(2) over a q-adic field; its automorphism group acts with
      // the full degree q+1 on both sides.
      if (!is_prime(cfg.q)) {
        throw ValidationError("--preset bruhat-tits-q needs a prime --q");
      }
      d0 = d1 = cfg.q + 1;
      if (!kappa) kappa = 1;
    } else {
      throw ValidationError("unknown preset '" + cfg.preset + "'");
    }
  } else if (!d0 || !d1 || !kappa) {
    throw ValidationError("give --preset or all of --d0, --d1, --kappa");
  }
  return make_tree_params(d0, d1, kappa);
}

void write_out(const CliConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw ValidationError("cannot open '" + cfg.output + "'");
  file << text;
}

std::string p_field(real_t p) { return format_p(p); }

//====== spectrum ======//

int cmd_spectrum(const CliConfig& cfg, const std::string& p_text) {
  TreeParams params = resolve_params(cfg);
  bool has_p = !p_text.empty();
  real_t p = has_p ? parse_p(p_text) : 0;
  if (has_p && !(p >= 2.0)) {
    throw ValidationError("exponent p must lie in [2, inf]");
  }

  IntervalUnion u;
  std::string label = "spectrum";
  int code = 0;
  if (cfg.no_tits) {
    // Without the independence property only the critical segment is
    // certified; emit it labeled as a lower bound and signal 3.
    u = critical_spectrum(params);
    label = "lower_bound";
    code = 3;
  } else {
    u = has_p ? lp_spectrum(params, p) : full_spectrum(params);
  }

  if (cfg.format == "csv") {
    std::string text = csv_row(
        {"kind", "d0", "d1", "kappa", "p", "label", "component", "lo", "hi"});
    const auto& comps = u.components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      text += csv_row({"spectrum", std::to_string(params.d0),
                       std::to_string(params.d1), std::to_string(params.kappa),
                       has_p ? p_field(p) : "", label, std::to_string(i),
                       format_real(comps[i].lo), format_real(comps[i].hi)});
    }
    write_out(cfg, text);
    return code;
  }

  ordered_json j;
  j["kind"] = "spectrum";
  j.update(params_to_json(params));
  if (has_p) {
    j["p"] = std::isinf(p) ? ordered_json("inf") : ordered_json(p);
  }
  j["label"] = label;
  j.update(to_json(u));
  write_out(cfg, canonical_dump(j) + "\n");
  return code;
}

//====== spherical ======//

int cmd_spherical(const CliConfig& cfg, const std::string& z_text, int r_max) {
  TreeParams params = resolve_params(cfg);
  if (r_max < 0) throw ValidationError("--r-max must be nonnegative");
  complex_t z = parse_complex(z_text);
  complex_t eigenvalue = spherical_eigenvalue(params, z);
  bool singular = is_singular_parameter(params, z, cfg.tol.singular);

  // Values one orbit step beyond r_max feed the residual column.
  std::vector<SphericalValue> vals;
  for (int r = 0; r <= r_max + params.kappa; r += params.kappa) {
    vals.push_back(spherical_eval_traced(params, z, r));
  }
  auto phi = [&](int r) { return vals[r / params.kappa].value; };

  struct Row {
    int r;
    complex_t value;
    bool boundary_route;
    real_t residual;
  };
  std::vector<Row> rows;
  for (int r = 0; r <= r_max; r += params.kappa) {
    complex_t defect =
        apply_generator(params, phi, r) - eigenvalue * phi(r);
    rows.push_back({r, phi(r),
                    vals[r / params.kappa].route ==
                        SphericalRoute::BoundaryIntegral,
                    std::abs(defect)});
  }

  if (cfg.format == "csv") {
    std::string text =
        csv_row({"kind", "d0", "d1", "kappa", "z_re", "z_im", "r", "value_re",
                 "value_im", "route", "residual"});
    for (const auto& row : rows) {
      text += csv_row({"spherical", std::to_string(params.d0),
                       std::to_string(params.d1), std::to_string(params.kappa),
                       format_real(z.real()), format_real(z.imag()),
                       std::to_string(row.r), format_real(row.value.real()),
                       format_real(row.value.imag()),
                       row.boundary_route ? "boundary" : "mixing",
                       format_real(row.residual)});
    }
    write_out(cfg, text);
    return 0;
  }

  ordered_json j;
  j["kind"] = "spherical";
  j.update(params_to_json(params));
  j["z"] = complex_to_json(z);
  j["eigenvalue"] = complex_to_json(eigenvalue);
  j["singular"] = singular;
  if (!singular) {
    complex_t c = mixing_coefficient(params, z);
    j["mixing"] = ordered_json{{"coefficient", complex_to_json(c)},
                               {"reflected_coefficient",
                                complex_to_json(complex_t(1, 0) - c)}};
  }
  ordered_json jrows = ordered_json::array();
  for (const auto& row : rows) {
    jrows.push_back(
        ordered_json{{"r", row.r},
                     {"value", complex_to_json(row.value)},
                     {"route", row.boundary_route ? "boundary" : "mixing"},
                     {"residual", row.residual}});
  }
  j["rows"] = std::move(jrows);
  write_out(cfg, canonical_dump(j) + "\n");
  return 0;
}

//====== verify ======//

int cmd_verify(const CliConfig& cfg, const std::string& suite) {
  TreeParams params = resolve_params(cfg);
  VerifyOptions opts;
  opts.tits_independence = !cfg.no_tits;
  opts.tol = cfg.tol;
  opts.vertex_budget = cfg.budget;
  opts.corrupt_kernel = cfg.corrupt_kernel;
  SuiteReport report = run_suite(params, suite, opts);

  if (cfg.format == "csv") {
    std::string text = csv_row({"kind", "d0", "d1", "kappa", "suite", "name",
                                "pass", "measured", "tolerance", "detail"});
    for (const auto& c : report.checks) {
      text += csv_row({"verify_check", std::to_string(params.d0),
                       std::to_string(params.d1), std::to_string(params.kappa),
                       report.suite, c.name, c.pass ? "true" : "false",
                       format_real(c.measured), format_real(c.tolerance),
                       c.detail});
    }
    write_out(cfg, text);
    return report.all_pass() ? 0 : 1;
  }

  ordered_json j;
  j["kind"] = "verify";
  j.update(to_json(report));
  write_out(cfg, canonical_dump(j) + "\n");
  return report.all_pass() ? 0 : 1;
}

//====== nesting ======//

int cmd_nesting(const CliConfig& cfg, const std::vector<std::string>& ps_text) {
  TreeParams params = resolve_params(cfg);
  if (ps_text.empty()) throw ValidationError("--ps needs at least one entry");
  std::vector<real_t> ps;
  for (const auto& t : ps_text) ps.push_back(parse_p(t));
  NestingReport report = nesting_report(params, ps, !cfg.no_tits);

  if (cfg.format == "csv") {
    std::string text = csv_row({"kind", "d0", "d1", "kappa", "p_from", "p_to",
                                "from_min", "from_max", "to_min", "to_max",
                                "strict", "witness_eigenvalue", "witness_re",
                                "margin_upper", "margin_lower"});
    for (const auto& s : report.steps) {
      text += csv_row(
          {"nesting_step", std::to_string(params.d0), std::to_string(params.d1),
           std::to_string(params.kappa), p_field(s.p_from), p_field(s.p_to),
           format_real(s.spectrum_from.min()),
           format_real(s.spectrum_from.max()),
           format_real(s.spectrum_to.min()), format_real(s.spectrum_to.max()),
           s.strict ? "true" : "false", format_real(s.witness_eigenvalue),
           format_real(s.witness_parameter.real()),
           format_real(s.margin_upper), format_real(s.margin_lower)});
    }
    write_out(cfg, text);
    return report.all_strict ? 0 : 1;
  }

  ordered_json j;
  j["kind"] = "nesting";
  j.update(params_to_json(params));
  j.update(to_json(report));
  write_out(cfg, canonical_dump(j) + "\n");
  return report.all_strict ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical harmonic analysis on semi-homogeneous trees"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string p_text;
  std::string z_text;
  int r_max = 10;
  std::string suite;
  std::vector<std::string> ps_text;

  CLI::App* sp = app.add_subcommand(
      "spectrum", "Spectrum of the generator in the L^p completion");
  add_common(sp, cfg);
  sp->add_option("--p", p_text, "exponent in [2, inf]; omit for the full one");

  CLI::App* sph = app.add_subcommand(
      "spherical", "Spherical function table at a complex parameter");
  add_common(sph, cfg);
  sph->add_option("--z", z_text, "complex parameter, a+bi")->required();
  sph->add_option("--r-max", r_max, "largest radius tabulated");

  CLI::App* ver =
      app.add_subcommand("verify", "Run a named verification suite");
  add_common(ver, cfg);
  ver->add_option("--suite", suite,
                  "oracle | eigen | boundary | lp | psd | spectrum | all")
      ->required();

  CLI::App* nst = app.add_subcommand(
      "nesting", "Strict spectrum nesting along an exponent grid");
  add_common(nst, cfg);
  nst->add_option("--ps", ps_text, "ascending exponents, e.g. 2,3,inf")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(cfg, p_text);
    if (sph->parsed()) return cmd_spherical(cfg, z_text, r_max);
    if (ver->parsed()) return cmd_verify(cfg, suite);
    return cmd_nesting(cfg, ps_text);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ClassificationUnavailableError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
