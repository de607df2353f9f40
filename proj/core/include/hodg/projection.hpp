#pragma once

#include <functional>

#include "hodg/field.hpp"

namespace hodg {

/// All local projections used for initialization and analysis. P1 variants
/// require k >= 1, P2 variants k >= 2; Pi2d variants are the tensor products
/// of the P1 operators and require k >= 1.
enum class ProjectionKind {
  L2,
  GaussRadauMinus,
  GaussRadauPlus,
  P1Minus,
  P1Plus,
  P2Minus,
  P2Plus,
  Pi2dMinus,
  Pi2dPlus,
};

/// Scalar function together with its x-derivatives: eval(d, x) = f^(d)(x).
struct ScalarFunc1D {
  std::function<double(int deriv, double x)> eval;
  double operator()(int deriv, double x) const { return eval(deriv, x); }
};

/// Scalar function of two variables with partials: eval(dx, dy, x, y).
struct ScalarFunc2D {
  std::function<double(int dx, int dy, double x, double y)> eval;
  double operator()(int dx, int dy, double x, double y) const { return eval(dx, dy, x, y); }
};

/// Cell-local projection into V_h: interior moments against the reduced
/// polynomial space plus the kind's endpoint value/derivative conditions,
/// solved as a dense (k+1)x(k+1) system with partial-pivot LU.
/// Reproduces polynomials of degree <= k exactly.
DGField1D project_1d(ProjectionKind kind, const ScalarFunc1D& f, const Mesh1D& mesh, int degree);

/// 2D projection: L2 or the tensor operators applied dimension by dimension.
DGField2D project_2d(ProjectionKind kind, const ScalarFunc2D& f, const Mesh2D& mesh, int degree);

/// Boundary bilinear forms of the 2D scheme restricted to one element, with
/// one-sided traces: B1 takes minus traces of its first argument, B2 plus
/// traces. Used for the superconvergence identities of the tensor projection.
enum class BForm { B1, B2 };

/// max over elements K and over the L2(K)-normalized tensor Legendre basis
/// q of |B_K(u - Pi u, q)|, where Pi is Pi2dMinus for B1 and Pi2dPlus for B2.
/// Quadrature exactness degree >= 2k+6 so integration error cannot mask the
/// identity.
double superconvergence_residual(BForm which, const ScalarFunc2D& u, const Mesh2D& mesh,
                                 int degree);

}  // namespace hodg
