// Command-line driver: convergence studies, single solves with field dumps,
// energy traces, and the property-suite runner.
//
// Exit codes: 0 success, 1 numerical failure, 2 bad configuration.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hodg/field_io.hpp"
#include "hodg/harness.hpp"
#include "hodg/projection.hpp"

namespace {

std::vector<int> parse_meshes(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

struct CommonOptions {
  std::string problem = "ex7.1";
  int degree = 2;
  std::string flux = "alt1";
  double t_final = -1.0;  // negative: use the problem default
  int order = 6;
  std::string sign = "intro";
  unsigned seed = 20250607u;
  int quad_pts = 0;
  double perturbation = 0.0;
  // SDC
  int nodes = 3;
  int sweeps = 0;  // 0: pick from the degree
  std::string mode = "implicit";
  double dt = 0.0;
  double courant = 0.5;
  int min_steps = 16;
  double newton_tol = 1e-12;
  int newton_max_iter = 25;
  double sweep_tol = 0.0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--problem", o.problem,
                  "Problem id: ex7.1 ex7.2 ex7.3 ex7.4 ex7.5 or custom");
  cmd->add_option("--k", o.degree, "Polynomial degree");
  cmd->add_option("--flux", o.flux, "Flux tokens: alt1..alt4, theta:<v>, upwind, lf:<a>, central");
  cmd->add_option("--tfinal", o.t_final, "Final time (default per problem)");
  cmd->add_option("--order", o.order, "Spatial order for --problem custom");
  cmd->add_option("--sign", o.sign, "Odd-order sign convention: intro | positive");
  cmd->add_option("--seed", o.seed, "Deterministic seed");
  cmd->add_option("--quad-pts", o.quad_pts, "Quadrature points for nonlinear terms (0: k+2)");
  cmd->add_option("--perturb", o.perturbation, "Mesh perturbation fraction in [0, 0.5)");
  cmd->add_option("--sdc-nodes", o.nodes, "Gauss-Lobatto nodes per step");
  cmd->add_option("--sdc-sweeps", o.sweeps, "Correction sweeps (0: k+2)");
  cmd->add_option("--sdc-mode", o.mode, "Sweep mode: implicit | explicit");
  cmd->add_option("--dt", o.dt, "Fixed time step (overrides the courant policy)");
  cmd->add_option("--courant", o.courant, "dt = courant * h policy factor");
  cmd->add_option("--min-steps", o.min_steps, "Lower bound on the number of steps");
  cmd->add_option("--newton-tol", o.newton_tol, "Newton absolute residual tolerance");
  cmd->add_option("--newton-max-iter", o.newton_max_iter, "Newton iteration cap");
  cmd->add_option("--sweep-tol", o.sweep_tol, "Sweep-to-tolerance mode (0: fixed sweeps)");
}

double default_tfinal(const std::string& problem) {
  if (problem == "ex7.3" || problem == "ex7.4") return 0.1;
  return 1.0;
}

std::vector<int> default_meshes(const std::string& problem) {
  if (problem == "ex7.3" || problem == "ex7.4") return {4, 8, 16, 32, 64};
  if (problem == "ex7.5") return {4, 8, 16, 32, 64};
  return {10, 20, 40, 80, 160, 320};
}

hodg::StudyConfig make_study(const CommonOptions& o, const std::vector<int>& meshes) {
  hodg::StudyConfig config;
  config.problem = o.problem;
  config.degree = o.degree;
  config.meshes = meshes.empty() ? default_meshes(o.problem) : meshes;
  config.flux = hodg::FluxConfig::parse(o.flux);
  config.t_final = o.t_final > 0.0 ? o.t_final : default_tfinal(o.problem);
  config.perturbation = o.perturbation;
  config.quad_pts = o.quad_pts;
  config.seed = o.seed;
  config.custom_order = o.order;
  if (o.sign == "intro")
    config.custom_sign = hodg::SignConvention::IntroAlternating;
  else if (o.sign == "positive")
    config.custom_sign = hodg::SignConvention::PositiveOdd;
  else
    throw CLI::ValidationError("--sign", "expected 'intro' or 'positive'");

  config.sdc.nodes = o.nodes;
  config.sdc.sweeps = o.sweeps > 0 ? o.sweeps : std::max(o.degree + 2, 4);
  config.sdc.mode = o.mode == "explicit" ? hodg::SDCConfig::SweepMode::Explicit
                                         : hodg::SDCConfig::SweepMode::ImplicitEuler;
  config.sdc.dt_fixed = o.dt;
  config.sdc.courant = o.courant;
  config.sdc.min_steps = o.min_steps;
  config.sdc.newton_tol = o.newton_tol;
  config.sdc.newton_max_iter = o.newton_max_iter;
  config.sdc.sweep_tol = o.sweep_tol;
  return config;
}

int run_single(const hodg::StudyConfig& config, int n, const std::string& out_field,
               const std::string& out_energy) {
  const hodg::ProblemSpec problem = hodg::resolve_problem(config);
  std::vector<hodg::EnergySample> trace;

  if (problem.dimension == 1) {
    const hodg::Mesh1D mesh =
        hodg::Mesh1D::build(n, problem.domain, config.perturbation, config.seed);
    const hodg::DGField1D u0 = hodg::initial_condition(problem, mesh, config.degree);
    hodg::SchemeOptions opts;
    opts.quad_pts = config.quad_pts;
    const auto res = hodg::integrate(problem, u0, config.t_final, config.sdc, config.flux, opts);
    trace = res.energy_trace;
    if (!out_field.empty()) hodg::dump_csv_file(res.u, out_field);
    if (problem.exact) {
      const auto err = hodg::error_norms(res.u, *problem.exact, config.t_final);
      std::cout << "N = " << n << "  L1 = " << err[0] << "  L2 = " << err[1]
                << "  Linf = " << err[2] << "\n";
    }
  } else {
    const hodg::Mesh2D mesh = hodg::Mesh2D::build(n, n, problem.domain, problem.domain,
                                                  config.perturbation, config.seed);
    const hodg::DGField2D u0 = hodg::initial_condition_2d(problem, mesh, config.degree);
    const auto choice = config.flux.choice == hodg::AlternatingChoice::Choice2
                            ? hodg::FluxChoice2D::AltMinusPlus
                            : hodg::FluxChoice2D::AltPlusMinus;
    const auto res = hodg::integrate_2d(u0, config.t_final, config.sdc, choice);
    trace = res.energy_trace;
    if (!out_field.empty()) hodg::dump_csv_file(res.u, out_field);
    if (problem.exact2d) {
      const auto err = hodg::error_norms(res.u, *problem.exact2d, config.t_final);
      std::cout << "N = " << n << "x" << n << "  L1 = " << err[0] << "  L2 = " << err[1]
                << "  Linf = " << err[2] << "\n";
    }
  }

  if (!out_energy.empty()) {
    std::ofstream out(out_energy);
    if (!out) throw std::runtime_error("cannot open " + out_energy);
    hodg::energy_trace_to_csv(trace, out);
  } else if (out_field.empty()) {
    hodg::energy_trace_to_csv(trace, std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discontinuous Galerkin solver for high-order PDEs"};
  app.set_config("--config", "", "Configuration file (key = value); flags override");
  app.require_subcommand(1);

  CommonOptions study_opts, run_opts, energy_opts;
  std::string meshes_csv, out_csv, out_manifest;
  bool aux_errors = false;

  CLI::App* study = app.add_subcommand("study", "Mesh-ladder convergence study");
  add_common(study, study_opts);
  study->add_option("--meshes", meshes_csv, "Comma-separated mesh ladder, e.g. 10,20,40");
  study->add_option("--out", out_csv, "Write the convergence table CSV here");
  study->add_option("--manifest", out_manifest, "Write a JSON run manifest here");
  study->add_flag("--aux-errors", aux_errors, "Also report auxiliary-variable errors");

  int run_n = 40;
  std::string run_field_out, run_energy_out;
  CLI::App* run = app.add_subcommand("run", "Single solve with a field dump");
  add_common(run, run_opts);
  run->add_option("--n", run_n, "Cells (per dimension)");
  run->add_option("--out", run_field_out, "Field dump CSV path");
  run->add_option("--energy-out", run_energy_out, "Energy trace CSV path");

  int energy_n = 16;
  std::string energy_out;
  CLI::App* energy = app.add_subcommand("energy", "Solve and emit the energy trace");
  add_common(energy, energy_opts);
  energy->add_option("--n", energy_n, "Cells (per dimension)");
  energy->add_option("--out", energy_out, "Energy trace CSV path (default: stdout)");

  std::string suite_name = "energy", suite_out;
  unsigned suite_seed = 20250607u;
  CLI::App* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", suite_name,
                     "projections | energy | superconvergence | lemma-ratios | flux-equivalence");
  verify->add_option("--seed", suite_seed, "Deterministic seed");
  verify->add_option("--out", suite_out, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (study->parsed()) {
      hodg::StudyConfig config = make_study(study_opts, parse_meshes(meshes_csv));
      config.out_csv = out_csv;
      config.out_manifest = out_manifest;
      config.aux_errors = aux_errors;
      const hodg::ConvergenceTable table = hodg::run_study(config);
      table.to_text(std::cout);
      return 0;
    }
    if (run->parsed()) {
      return run_single(make_study(run_opts, {}), run_n, run_field_out, run_energy_out);
    }
    if (energy->parsed()) {
      return run_single(make_study(energy_opts, {}), energy_n, "", energy_out);
    }
    if (verify->parsed()) {
      const hodg::SuiteReport report = hodg::verify_suite(suite_name, suite_seed);
      const std::string json = hodg::report_to_json(report);
      if (!suite_out.empty()) {
        std::ofstream out(suite_out);
        out << json << "\n";
      }
      std::cout << json << "\n";
      for (const auto& c : report.checks)
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  value = " << c.value
                  << "  bound = " << c.threshold << "\n";
      return report.passed ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
