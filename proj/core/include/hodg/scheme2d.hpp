#pragma once

#include "hodg/field.hpp"

namespace hodg {

/// Flux sides of the 2D biharmonic scheme. "Left/right" follow the
/// rectangular-mesh convention: left = west/south traces, right = east/north.
/// AltPlusMinus takes u-hat and grad-u-hat from the plus side and w-tilde,
/// grad-w-tilde from the minus side; AltMinusPlus is the mirror. The two
/// families always come from opposite sides of every face.
enum class FluxChoice2D { AltPlusMinus, AltMinusPlus };

struct Residual2D {
  DGField2D dudt;
  DGField2D w;
};

/// Semi-discrete residual of u_t + Laplacian^2 u = 0: the auxiliary
/// w_h (ultra-weak Laplacian of u_h) by inverting the diagonal tensor mass
/// matrix, then du/dt from w_h with the opposite trace sides. Periodic in
/// both directions; requires degree k >= 1.
Residual2D spatial_residual_2d(const DGField2D& u, FluxChoice2D choice);

}  // namespace hodg
