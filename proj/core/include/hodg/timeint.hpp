#pragma once

#include <array>
#include <vector>

#include "hodg/scheme1d.hpp"
#include "hodg/scheme2d.hpp"

namespace hodg {

/// Spectral deferred correction configuration. The formal order is
/// min(2*nodes - 2, sweeps + 1): Gauss-Lobatto collocation order capped by
/// one order gained per correction sweep.
struct SDCConfig {
  int nodes = 3;   // Gauss-Lobatto collocation nodes per step (2..6)
  int sweeps = 4;  // correction sweeps after the first implicit/explicit pass

  enum class SweepMode { Explicit, ImplicitEuler };
  SweepMode mode = SweepMode::ImplicitEuler;

  double newton_tol = 1e-12;  // absolute residual norm
  int newton_max_iter = 25;

  /// Step policy: a fixed step when dt_fixed > 0, otherwise
  /// min(courant * h, t_final / min_steps); either way the step is rounded
  /// down so the ladder lands exactly on t_final.
  double dt_fixed = 0.0;
  double courant = 0.5;
  int min_steps = 16;

  /// When positive, keep sweeping (up to max_sweeps) until the sweep
  /// increment drops below this value - i.e. converge to the collocation
  /// solution, which conserves quadratic invariants for skew problems.
  double sweep_tol = 0.0;
  int max_sweeps = 64;

  int formal_order() const;
  double resolve_dt(double h, double t_final) const;
};

/// Sparse block operator equal to the spatial residual of a linear problem:
/// applying it to a coefficient vector matches spatial_residual on the
/// corresponding field. Assembled by probing with unit coefficient vectors.
class LinearOperator {
 public:
  int dim() const { return rows_; }
  void apply(const double* x, double* y) const;
  std::vector<double> apply(const std::vector<double>& x) const;

  /// Maximum cell-index offset (periodic distance) between coupled cells.
  int stencil_halfwidth() const { return stencil_; }

  // CSR storage (row_ptr has dim()+1 entries).
  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& cols() const { return cols_; }
  const std::vector<double>& values() const { return vals_; }

  static LinearOperator from_triplets(int dim, std::vector<std::array<double, 3>> t, int stencil);

 private:
  int rows_ = 0;
  int stencil_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> cols_;
  std::vector<double> vals_;
};

/// Probes spatial_residual column by column (linear problems only; rejects
/// nonlinear ones). Any manufactured source is excluded from the matrix.
LinearOperator assemble_operator(const ProblemSpec& problem, const Mesh1D& mesh, int degree,
                                 const FluxConfig& config);

/// 2D biharmonic operator assembled by coloring probes.
LinearOperator assemble_operator_2d(const Mesh2D& mesh, int degree, FluxChoice2D choice);

struct EnergySample {
  int step;
  double t;
  double energy;                  // ||u_h||^2 after the step
  double dissipation_increment;   // energy drop across the step
};

struct IntegrateResult1D {
  DGField1D u;
  AuxFields aux;  // auxiliaries of the final state
  std::vector<EnergySample> energy_trace;
  int steps = 0;
  long newton_iterations = 0;
};

/// Advances u0 to t_final by SDC steps. Linear problems use one sparse LU
/// factorization per distinct substep size, reused across steps; nonlinear
/// problems use modified Newton with a Jacobian probed by cell coloring and
/// refreshed every step. Aborts (std::runtime_error) on Newton
/// non-convergence or NaN, reporting the step and time.
IntegrateResult1D integrate(const ProblemSpec& problem, const DGField1D& u0, double t_final,
                            const SDCConfig& sdc, const FluxConfig& flux,
                            const SchemeOptions& opts = {});

struct IntegrateResult2D {
  DGField2D u;
  DGField2D w;
  std::vector<EnergySample> energy_trace;
  int steps = 0;
};

IntegrateResult2D integrate_2d(const DGField2D& u0, double t_final, const SDCConfig& sdc,
                               FluxChoice2D choice);

/// Scalar SDC driver for y' = lambda y; exposes the collocation/sweep order
/// behavior for unit tests.
double sdc_scalar_decay(double lambda, double t_final, double dt, const SDCConfig& sdc);

}  // namespace hodg
