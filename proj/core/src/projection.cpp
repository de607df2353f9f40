#include "hodg/projection.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hodg/basis.hpp"

namespace hodg {

namespace {

struct KindTraits {
  int conditions;  // number of endpoint derivative levels matched (0 for pure L2)
  bool at_right;   // conditions at xi = +1 (minus-type) or xi = -1 (plus-type)
};

KindTraits traits_1d(ProjectionKind kind, int degree) {
  switch (kind) {
    case ProjectionKind::L2:
      return {0, true};
    case ProjectionKind::GaussRadauMinus:
      return {1, true};
    case ProjectionKind::GaussRadauPlus:
      return {1, false};
    case ProjectionKind::P1Minus:
    case ProjectionKind::P1Plus:
      if (degree < 1) throw std::invalid_argument("projection: P1 variants require k >= 1");
      return {2, kind == ProjectionKind::P1Minus};
    case ProjectionKind::P2Minus:
    case ProjectionKind::P2Plus:
      if (degree < 2) throw std::invalid_argument("projection: P2 variants require k >= 2");
      return {3, kind == ProjectionKind::P2Minus};
    default:
      throw std::invalid_argument("projection: 2D kind passed to project_1d");
  }
}

int moment_quad_points(int degree) { return std::max(degree + 8, 10); }

/// Solves the local system for one cell: k+1-c moment rows (modal identity)
/// plus c endpoint rows. moments holds the full modal expansion of the data;
/// endpoint[i] is the i-th physical derivative at the condition endpoint.
std::vector<double> project_cell(int degree, double h, const KindTraits& tr,
                                 const std::vector<double>& moments,
                                 const std::vector<double>& endpoint) {
  const int n = degree + 1;
  if (tr.conditions == 0) return {moments.begin(), moments.begin() + n};

  const auto& ref = reference_element(degree);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs(n);
  const int moment_rows = n - tr.conditions;
  for (int r = 0; r < moment_rows; ++r) {
    a(r, r) = 1.0;
    rhs(r) = moments[r];
  }
  double scale = 1.0;
  for (int i = 0; i < tr.conditions; ++i) {
    const int row = moment_rows + i;
    for (int m = 0; m < n; ++m) a(row, m) = ref.endpoint_value(m, i, tr.at_right) * scale;
    rhs(row) = endpoint[i];
    scale *= 2.0 / h;
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  Eigen::VectorXd c = lu.solve(rhs);
  if ((a * c - rhs).norm() > 1e-8 * (1.0 + rhs.norm()))
    throw std::runtime_error("projection: singular local system");
  return {c.data(), c.data() + n};
}

}  // namespace

DGField1D project_1d(ProjectionKind kind, const ScalarFunc1D& f, const Mesh1D& mesh, int degree) {
  const KindTraits tr = traits_1d(kind, degree);
  const int n = degree + 1;
  const auto& quad = gauss_rule(moment_quad_points(degree));

  std::vector<double> ltab(quad.size() * n);
  for (int g = 0; g < quad.size(); ++g)
    for (int m = 0; m < n; ++m) ltab[g * n + m] = legendre_eval(m, quad.points[g]).value;

  DGField1D out(mesh, degree);
  std::vector<double> moments(n), endpoint(tr.conditions);
  for (int j = 0; j < mesh.num_cells(); ++j) {
    const double xc = mesh.cell_center(j);
    const double half_h = 0.5 * mesh.cell_width(j);
    std::fill(moments.begin(), moments.end(), 0.0);
    for (int g = 0; g < quad.size(); ++g) {
      const double fv = f(0, xc + half_h * quad.points[g]);
      for (int m = 0; m < n; ++m) moments[m] += quad.weights[g] * fv * ltab[g * n + m];
    }
    for (int m = 0; m < n; ++m) moments[m] *= 0.5 * (2 * m + 1);

    const double xe = tr.at_right ? mesh.cell_right(j) : mesh.cell_left(j);
    for (int i = 0; i < tr.conditions; ++i) endpoint[i] = f(i, xe);

    const auto c = project_cell(degree, mesh.cell_width(j), tr, moments, endpoint);
    for (int m = 0; m < n; ++m) out.coeff(j, m) = c[m];
  }
  return out;
}

namespace {

KindTraits traits_2d(ProjectionKind kind, int degree) {
  switch (kind) {
    case ProjectionKind::L2:
      return {0, true};
    case ProjectionKind::Pi2dMinus:
    case ProjectionKind::Pi2dPlus:
      if (degree < 1) throw std::invalid_argument("projection: Pi variants require k >= 1");
      return {2, kind == ProjectionKind::Pi2dMinus};
    default:
      throw std::invalid_argument("projection: 1D kind passed to project_2d");
  }
}

}  // namespace

DGField2D project_2d(ProjectionKind kind, const ScalarFunc2D& f, const Mesh2D& mesh, int degree) {
  const KindTraits tr = traits_2d(kind, degree);
  const int n = degree + 1;
  const auto& quad = gauss_rule(moment_quad_points(degree));
  const int nq = quad.size();

  std::vector<double> ltab(nq * n);
  for (int g = 0; g < nq; ++g)
    for (int m = 0; m < n; ++m) ltab[g * n + m] = legendre_eval(m, quad.points[g]).value;

  DGField2D out(mesh, degree);

  // Per-cell helper: project a 1D slice of data given samples at the
  // quadrature points and (if constrained) endpoint derivative values.
  const auto slice_project = [&](double h, const std::vector<double>& samples,
                                 const std::vector<double>& endpoint) {
    std::vector<double> moments(n, 0.0);
    for (int g = 0; g < nq; ++g)
      for (int m = 0; m < n; ++m) moments[m] += quad.weights[g] * samples[g] * ltab[g * n + m];
    for (int m = 0; m < n; ++m) moments[m] *= 0.5 * (2 * m + 1);
    return project_cell(degree, h, tr, moments, endpoint);
  };

  std::vector<double> sx(nq), ex(tr.conditions);
  for (int ci = 0; ci < mesh.num_cells_x(); ++ci) {
    const double xc = mesh.x().cell_center(ci);
    const double hx = mesh.x().cell_width(ci);
    const double xe = tr.at_right ? mesh.x().cell_right(ci) : mesh.x().cell_left(ci);
    for (int cj = 0; cj < mesh.num_cells_y(); ++cj) {
      const double yc = mesh.y().cell_center(cj);
      const double hy = mesh.y().cell_width(cj);
      const double ye = tr.at_right ? mesh.y().cell_right(cj) : mesh.y().cell_left(cj);

      // x-projection of f(.,y) at every y quadrature node: cx[g][a], and of
      // f_y d(levels) at the y endpoint: ce[a] (values), cey[a] (y-derivative).
      std::vector<std::vector<double>> cx(nq);
      for (int g = 0; g < nq; ++g) {
        const double y = yc + 0.5 * hy * quad.points[g];
        for (int gg = 0; gg < nq; ++gg) sx[gg] = f(0, 0, xc + 0.5 * hx * quad.points[gg], y);
        for (int i = 0; i < tr.conditions; ++i) ex[i] = f(i, 0, xe, y);
        cx[g] = slice_project(hx, sx, ex);
      }

      std::vector<double> ce, cey;
      if (tr.conditions > 0) {
        for (int gg = 0; gg < nq; ++gg) sx[gg] = f(0, 0, xc + 0.5 * hx * quad.points[gg], ye);
        for (int i = 0; i < tr.conditions; ++i) ex[i] = f(i, 0, xe, ye);
        ce = slice_project(hx, sx, ex);
        // The 1D operator is linear with y-independent weights, so the
        // y-derivative of the projected coefficients is the projection of f_y.
        for (int gg = 0; gg < nq; ++gg) sx[gg] = f(0, 1, xc + 0.5 * hx * quad.points[gg], ye);
        for (int i = 0; i < tr.conditions; ++i) ex[i] = f(i, 1, xe, ye);
        cey = slice_project(hx, sx, ex);
      }

      std::vector<double> sy(nq), ey(tr.conditions);
      for (int a = 0; a < n; ++a) {
        for (int g = 0; g < nq; ++g) sy[g] = cx[g][a];
        if (tr.conditions > 0) {
          ey[0] = ce[a];
          if (tr.conditions > 1) ey[1] = cey[a];
        }
        const auto cb = slice_project(hy, sy, ey);
        for (int b = 0; b < n; ++b) out.coeff(ci, cj, a, b) = cb[b];
      }
    }
  }
  return out;
}

namespace {

/// Evaluates the basis derivative L_m^{(d)} at an arbitrary reference point
/// through the exact modal derivative matrices.
double basis_deriv(const ReferenceElement& ref, int m, int d, double xi) {
  const int n = ref.num_modes();
  if (d > ref.degree()) return 0.0;
  const auto& mat = ref.deriv_matrix(d);
  double s = 0.0;
  for (int a = 0; a < n; ++a) {
    const double c = mat[a * n + m];
    if (c != 0.0) s += c * legendre_eval(a, xi).value;
  }
  return s;
}

}  // namespace

double superconvergence_residual(BForm which, const ScalarFunc2D& u, const Mesh2D& mesh,
                                 int degree) {
  const ProjectionKind kind =
      which == BForm::B2 ? ProjectionKind::Pi2dPlus : ProjectionKind::Pi2dMinus;
  const DGField2D pu = project_2d(kind, u, mesh, degree);
  const bool plus_trace = which == BForm::B2;

  const auto& ref = reference_element(degree);
  const int n = degree + 1;
  const auto& quad = gauss_rule(degree + 4);
  const int nq = quad.size();
  const int nx = mesh.num_cells_x();
  const int ny = mesh.num_cells_y();

  // eta and its first derivatives at a physical point, traced from cell (ci,cj).
  const auto eta = [&](int ci, int cj, double x, double y, int dx, int dy) {
    const double xi = 2.0 * (x - mesh.x().cell_center(ci)) / mesh.x().cell_width(ci);
    const double et = 2.0 * (y - mesh.y().cell_center(cj)) / mesh.y().cell_width(cj);
    return u(dx, dy, x, y) - pu.eval_ref(ci, cj, xi, et, dx, dy);
  };

  double worst = 0.0;
  for (int ci = 0; ci < nx; ++ci) {
    for (int cj = 0; cj < ny; ++cj) {
      // Use only elements whose traced neighbors physically exist: the
      // analytic data is not periodic, so wrapped neighbors are meaningless.
      if (plus_trace && (ci + 1 >= nx || cj + 1 >= ny)) continue;
      if (!plus_trace && (ci == 0 || cj == 0)) continue;

      const double hx = mesh.x().cell_width(ci);
      const double hy = mesh.y().cell_width(cj);
      const double xc = mesh.x().cell_center(ci);
      const double yc = mesh.y().cell_center(cj);
      const double xw = mesh.x().cell_left(ci), xe = mesh.x().cell_right(ci);
      const double ys = mesh.y().cell_left(cj), yn = mesh.y().cell_right(cj);
      const double jac = 0.25 * hx * hy;

      // Trace source cells per face.
      const int ce_x = plus_trace ? ci + 1 : ci;  // east face
      const int cw_x = plus_trace ? ci : ci - 1;  // west face
      const int cn_y = plus_trace ? cj + 1 : cj;  // north face
      const int cs_y = plus_trace ? cj : cj - 1;  // south face

      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          double bsum = 0.0;
          // Volume: eta * (q_xx + q_yy).
          for (int gx = 0; gx < nq; ++gx) {
            const double xi = quad.points[gx];
            const double x = xc + 0.5 * hx * xi;
            for (int gy = 0; gy < nq; ++gy) {
              const double et = quad.points[gy];
              const double y = yc + 0.5 * hy * et;
              const double lap =
                  std::pow(2.0 / hx, 2) * basis_deriv(ref, a, 2, xi) * legendre_eval(b, et).value +
                  std::pow(2.0 / hy, 2) * legendre_eval(a, xi).value * basis_deriv(ref, b, 2, et);
              bsum += jac * quad.weights[gx] * quad.weights[gy] * eta(ci, cj, x, y, 0, 0) * lap;
            }
          }
          // x-normal faces: -<eta, q_x n_x> + <eta_x n_x, q>.
          for (int g = 0; g < nq; ++g) {
            const double y = yc + 0.5 * hy * quad.points[g];
            const double w = 0.5 * hy * quad.weights[g];
            const double lb = legendre_eval(b, quad.points[g]).value;
            // East: n = +x, test traces from inside at xi = +1.
            bsum -= w * eta(ce_x, cj, xe, y, 0, 0) * (2.0 / hx) * basis_deriv(ref, a, 1, 1.0) * lb;
            bsum += w * eta(ce_x, cj, xe, y, 1, 0) * ref.endpoint_value(a, 0, true) * lb;
            // West: n = -x, test traces at xi = -1.
            bsum += w * eta(cw_x, cj, xw, y, 0, 0) * (2.0 / hx) * basis_deriv(ref, a, 1, -1.0) * lb;
            bsum -= w * eta(cw_x, cj, xw, y, 1, 0) * ref.endpoint_value(a, 0, false) * lb;
          }
          // y-normal faces.
          for (int g = 0; g < nq; ++g) {
            const double x = xc + 0.5 * hx * quad.points[g];
            const double w = 0.5 * hx * quad.weights[g];
            const double la = legendre_eval(a, quad.points[g]).value;
            bsum -= w * eta(ci, cn_y, x, yn, 0, 0) * (2.0 / hy) * basis_deriv(ref, b, 1, 1.0) * la;
            bsum += w * eta(ci, cn_y, x, yn, 0, 1) * ref.endpoint_value(b, 0, true) * la;
            bsum += w * eta(ci, cs_y, x, ys, 0, 0) * (2.0 / hy) * basis_deriv(ref, b, 1, -1.0) * la;
            bsum -= w * eta(ci, cs_y, x, ys, 0, 1) * ref.endpoint_value(b, 0, false) * la;
          }
          const double qnorm = std::sqrt(jac * ref.mass(a) * ref.mass(b));
          worst = std::max(worst, std::abs(bsum) / qnorm);
        }
      }
    }
  }
  return worst;
}

}  // namespace hodg
