#pragma once

#include <optional>

#include "hodg/field.hpp"
#include "hodg/flux.hpp"
#include "hodg/problem.hpp"

namespace hodg {

/// Auxiliary unknowns of the rewritten lower-order system. w is always
/// present; v additionally appears for the nonlinear fourth-order problem
/// (v = projection of b(u_h) w_h) and for all odd orders (v = d^l u).
struct AuxFields {
  DGField1D w;
  std::optional<DGField1D> v;
};

struct Residual1D {
  DGField1D dudt;
  AuxFields aux;
};

struct SchemeOptions {
  /// Quadrature points for nonlinear-term products; 0 means k+2. Raising it
  /// controls aliasing in the energy identities for high-degree fluxes.
  int quad_pts = 0;
};

/// Element-local auxiliary solves: each auxiliary is obtained by inverting
/// the diagonal modal mass matrix against its ultra-weak right side. The
/// degree must meet the order's minimum (ProblemSpec::min_degree); violations
/// throw std::invalid_argument naming the minimal degree.
AuxFields solve_auxiliaries(const ProblemSpec& problem, const DGField1D& u,
                            const FluxConfig& config, const SchemeOptions& opts = {});

/// Semi-discrete right-hand side du/dt plus the auxiliaries it was built
/// from; adds the L2-projected manufactured source when the problem has one.
/// Dedicated code paths handle the fourth- and fifth-order equations; all
/// other orders go through the general even/odd dispatch.
Residual1D spatial_residual(const ProblemSpec& problem, const DGField1D& u,
                            const FluxConfig& config, double t, const SchemeOptions& opts = {});

/// General even/odd-order path for any order (linear problems only); the
/// dedicated fourth/fifth-order residuals must agree with this coefficientwise.
Residual1D spatial_residual_general(const ProblemSpec& problem, const DGField1D& u,
                                    const FluxConfig& config, double t,
                                    const SchemeOptions& opts = {});

/// L2 projection of the manufactured source g = u_t + (spatial operator
/// applied to the exact solution), composed analytically.
DGField1D manufactured_source(const ProblemSpec& problem, double t, const Mesh1D& mesh,
                              int degree);

/// Theoretical semi-discrete dissipation for the given state: the identity
/// <dudt, u_h> + dissipation = 0 holds to round-off. Fourth order:
/// quadrature of b(u_h) w_h^2; fifth order: sum of interface entropy
/// productions; even orders: ||w_h||^2; odd orders: 1/2 sum of [v_h]^2.
double scheme_dissipation(const ProblemSpec& problem, const DGField1D& u, const Residual1D& r,
                          const FluxConfig& config, const SchemeOptions& opts = {});

}  // namespace hodg
