#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hodg/timeint.hpp"

namespace hodg {

/// Mesh-ladder convergence study over one of the built-in problems (or a
/// custom linear order). The mesh ladder must be strictly increasing and at
/// least two levels long for empirical orders.
struct StudyConfig {
  std::string problem = "ex7.1";
  int degree = 2;
  std::vector<int> meshes = {10, 20, 40, 80, 160, 320};
  FluxConfig flux;
  SDCConfig sdc;
  double t_final = 1.0;
  double perturbation = 0.0;  // nonuniform-mesh studies
  bool aux_errors = false;    // extend the table with ||w - w_h|| (and v)
  int quad_pts = 0;
  unsigned seed = 20250607u;
  int custom_order = 6;  // used when problem == "custom"
  SignConvention custom_sign = SignConvention::IntroAlternating;
  std::string out_csv;       // written when non-empty
  std::string out_manifest;  // JSON run manifest, written when non-empty
};

struct ErrorRow {
  int n = 0;  // cells per dimension
  std::array<double, 3> error{};  // L1, L2, Linf
  std::array<double, 3> order{};  // NaN on the first row
  std::optional<double> w_error, w_order;
  std::optional<double> v_error, v_order;
};

struct ConvergenceTable {
  std::vector<ErrorRow> rows;
  std::string label;  // e.g. "P2" / "Q2"

  void to_csv(std::ostream& out) const;
  void to_text(std::ostream& out) const;
};

/// order = log(e_coarse / e_fine) / log(N_fine / N_coarse).
double empirical_order(double e_coarse, double e_fine, int n_coarse, int n_fine);

/// Norms of u_h minus the exact solution at time t (L1, L2 by k+3-point
/// quadrature, Linf by dense sampling).
std::array<double, 3> error_norms(const DGField1D& u, const ExactSolution1D& exact, double t);
std::array<double, 3> error_norms(const DGField2D& u, const ExactSolution2D& exact, double t);

/// Initial data per the scheme's analysis: P1h+ (1D fourth order), the
/// tensor projection (2D), plain L2 otherwise.
DGField1D initial_condition(const ProblemSpec& problem, const Mesh1D& mesh, int degree);
DGField2D initial_condition_2d(const ProblemSpec& problem, const Mesh2D& mesh, int degree);

ProblemSpec resolve_problem(const StudyConfig& config);

/// Runs the ladder: build mesh, project initial data, integrate to t_final,
/// compute error norms and empirical orders. Writes CSV/manifest when
/// configured. Integrator aborts are annotated with the failing mesh level.
ConvergenceTable run_study(const StudyConfig& config);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // pass bound
};

struct SuiteReport {
  std::string suite;
  bool passed = false;
  std::vector<CheckResult> checks;
};

/// Named property suites with fixed seeds: projections, energy,
/// superconvergence, lemma-ratios, flux-equivalence. Unknown names throw
/// std::invalid_argument.
SuiteReport verify_suite(const std::string& name, unsigned seed = 20250607u);

/// Machine-readable form of a suite report.
std::string report_to_json(const SuiteReport& report);

/// Energy trace CSV: columns (step, t, energy, dissipation_increment).
void energy_trace_to_csv(const std::vector<EnergySample>& trace, std::ostream& out);

}  // namespace hodg
