#include "hodg/scheme2d.hpp"

#include <stdexcept>
#include <vector>

#include "hodg/basis.hpp"

namespace hodg {

namespace {

/// Applies the ultra-weak Laplacian form with one-sided traces:
///   out = base + scale * M^{-1} [ (field, Lap q)_K + <grad-trace . n, q>_dK
///                                 - <trace, grad q . n>_dK ]
/// where the traces of `field` come from the minus side (west/south cell on
/// each face) when `minus_traces`, else from the plus side.
void add_ultraweak_laplacian(const DGField2D& field, bool minus_traces, double scale,
                             DGField2D& out) {
  const auto& mx = field.mesh().x();
  const auto& my = field.mesh().y();
  const int nx = mx.num_cells();
  const int ny = my.num_cells();
  const int n = field.num_modes();
  const auto& ref = reference_element(field.degree());

  const FaceTraces2D tx = traces_x(field, 1);
  const FaceTraces2D ty = traces_y(field, 1);
  const auto xtrace = [&](int f, int t, int r) {
    return minus_traces ? tx.left(f, t, r) : tx.right(f, t, r);
  };
  const auto ytrace = [&](int f, int t, int r) {
    return minus_traces ? ty.left(f, t, r) : ty.right(f, t, r);
  };

  const std::vector<double>* d2 = field.degree() >= 2 ? &ref.deriv_matrix(2) : nullptr;

  std::vector<double> functional(n * n);
  for (int ci = 0; ci < nx; ++ci) {
    const double hx = mx.cell_width(ci);
    for (int cj = 0; cj < ny; ++cj) {
      const double hy = my.cell_width(cj);
      const double* c = field.cell_coeffs(ci, cj);
      std::fill(functional.begin(), functional.end(), 0.0);

      // (field, q_xx + q_yy)_K with the exact modal derivative matrices.
      if (d2) {
        for (int b = 0; b < n; ++b) {
          const double wy = 0.5 * hy * ref.mass(b) * (2.0 / hx);
          for (int ap = 0; ap < n; ++ap) {
            const double ca = c[ap * n + b] * ref.mass(ap) * wy;
            if (ca == 0.0) continue;
            for (int a = 0; a < n; ++a) functional[a * n + b] += ca * (*d2)[ap * n + a];
          }
        }
        for (int a = 0; a < n; ++a) {
          const double wx = 0.5 * hx * ref.mass(a) * (2.0 / hy);
          for (int bp = 0; bp < n; ++bp) {
            const double cb = c[a * n + bp] * ref.mass(bp) * wx;
            if (cb == 0.0) continue;
            for (int b = 0; b < n; ++b) functional[a * n + b] += cb * (*d2)[bp * n + b];
          }
        }
      }

      // x-normal faces: + <trace_x, q> - <trace, q_x> with outward normals.
      const int face_w = ci, face_e = (ci + 1) % nx;
      for (int b = 0; b < n; ++b) {
        const double wy = 0.5 * hy * ref.mass(b);
        const double de = xtrace(face_e, cj, 1)[b] * wy;
        const double dw = xtrace(face_w, cj, 1)[b] * wy;
        const double ve = xtrace(face_e, cj, 0)[b] * wy * (2.0 / hx);
        const double vw = xtrace(face_w, cj, 0)[b] * wy * (2.0 / hx);
        for (int a = 0; a < n; ++a) {
          functional[a * n + b] += de * ref.endpoint_value(a, 0, true) -
                                   dw * ref.endpoint_value(a, 0, false) -
                                   ve * ref.endpoint_value(a, 1, true) +
                                   vw * ref.endpoint_value(a, 1, false);
        }
      }
      // y-normal faces.
      const int face_s = cj, face_n = (cj + 1) % ny;
      for (int a = 0; a < n; ++a) {
        const double wx = 0.5 * hx * ref.mass(a);
        const double dn = ytrace(face_n, ci, 1)[a] * wx;
        const double ds = ytrace(face_s, ci, 1)[a] * wx;
        const double vn = ytrace(face_n, ci, 0)[a] * wx * (2.0 / hy);
        const double vs = ytrace(face_s, ci, 0)[a] * wx * (2.0 / hy);
        for (int b = 0; b < n; ++b) {
          functional[a * n + b] += dn * ref.endpoint_value(b, 0, true) -
                                   ds * ref.endpoint_value(b, 0, false) -
                                   vn * ref.endpoint_value(b, 1, true) +
                                   vs * ref.endpoint_value(b, 1, false);
        }
      }

      double* o = out.cell_coeffs(ci, cj);
      const double jac = 0.25 * hx * hy;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          o[a * n + b] += scale * functional[a * n + b] / (jac * ref.mass(a) * ref.mass(b));
    }
  }
}

}  // namespace

Residual2D spatial_residual_2d(const DGField2D& u, FluxChoice2D choice) {
  if (u.degree() < 1)
    throw std::invalid_argument("scheme2d: the biharmonic scheme requires degree k >= 1");
  const bool u_minus = choice == FluxChoice2D::AltMinusPlus;

  // (6.5): (w,q) = (u, Lap q) + <grad-u-hat . n, q> - <u-hat, grad q . n>.
  DGField2D w(u.mesh(), u.degree());
  add_ultraweak_laplacian(u, u_minus, 1.0, w);

  // (6.4): (u_t, p) = -(w, Lap p) - <grad-w-tilde . n, p> + <w-tilde, grad p . n>.
  DGField2D dudt(u.mesh(), u.degree());
  add_ultraweak_laplacian(w, !u_minus, -1.0, dudt);
  return {std::move(dudt), std::move(w)};
}

}  // namespace hodg
