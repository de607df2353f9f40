#include "hodg/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hodg/basis.hpp"

namespace hodg {

DGField1D::DGField1D(Mesh1D mesh, int degree)
    : mesh_(std::move(mesh)), degree_(degree), coeffs_(mesh_.num_cells() * (degree + 1), 0.0) {
  if (degree < 0) throw std::invalid_argument("DGField1D: degree must be >= 0");
}

void DGField1D::fill(double value) {
  for (int j = 0; j < mesh_.num_cells(); ++j) {
    coeff(j, 0) = value;
    for (int m = 1; m <= degree_; ++m) coeff(j, m) = 0.0;
  }
}

double DGField1D::eval_ref(int cell, double xi, int deriv) const {
  const auto& ref = reference_element(degree_);
  const int n = degree_ + 1;
  std::vector<double> work(n);
  const double* c = cell_coeffs(cell);
  if (deriv > 0) {
    ref.differentiate(c, work.data(), deriv);
    c = work.data();
  }
  double s = 0.0;
  for (int m = 0; m < n; ++m) s += c[m] * legendre_eval(m, xi).value;
  const double scale = std::pow(2.0 / mesh_.cell_width(cell), deriv);
  return s * scale;
}

int DGField1D::locate(double x) const {
  const auto& b = mesh_.boundaries();
  if (x < b.front() || x > b.back()) throw std::invalid_argument("DGField1D: x outside domain");
  const auto it = std::upper_bound(b.begin(), b.end(), x);
  int j = static_cast<int>(it - b.begin()) - 1;
  return std::min(j, mesh_.num_cells() - 1);
}

double DGField1D::evaluate(double x) const {
  for (double bx : mesh_.boundaries())
    if (x == bx)
      throw std::invalid_argument(
          "DGField1D::evaluate: x is a cell boundary; request an explicit side");
  const int j = locate(x);
  const double xi = 2.0 * (x - mesh_.cell_center(j)) / mesh_.cell_width(j);
  return eval_ref(j, xi);
}

double DGField1D::evaluate(double x, Side side) const {
  const auto& b = mesh_.boundaries();
  const int n = mesh_.num_cells();
  for (int i = 0; i < static_cast<int>(b.size()); ++i) {
    if (x == b[i]) {
      // Interface i (with the two domain endpoints both mapping to interface 0).
      const int f = i % n;
      const int j = (side == Side::Minus) ? (f + n - 1) % n : f;
      return eval_ref(j, side == Side::Minus ? 1.0 : -1.0);
    }
  }
  return evaluate(x);
}

TraceData1D::TraceData1D(int num_interfaces, int max_deriv)
    : n_(num_interfaces), max_deriv_(max_deriv), data_(num_interfaces * (max_deriv + 1) * 2, 0.0) {}

TraceData1D traces(const DGField1D& field, int max_deriv) {
  const auto& mesh = field.mesh();
  const auto& ref = reference_element(field.degree());
  const int n = mesh.num_cells();
  const int modes = field.num_modes();
  TraceData1D td(n, max_deriv);

  std::vector<double> dcoef(modes);
  for (int j = 0; j < n; ++j) {
    const double scale0 = 2.0 / mesh.cell_width(j);
    double scale = 1.0;
    for (int r = 0; r <= max_deriv; ++r) {
      ref.differentiate(field.cell_coeffs(j), dcoef.data(), r);
      double at_left = 0.0, at_right = 0.0;
      for (int m = 0; m < modes; ++m) {
        at_right += dcoef[m];
        at_left += (m % 2 == 0) ? dcoef[m] : -dcoef[m];
      }
      // Right endpoint of cell j feeds the minus trace of interface (j+1)%n;
      // left endpoint feeds the plus trace of interface j.
      td.left((j + 1) % n, r) = at_right * scale;
      td.right(j, r) = at_left * scale;
      scale *= scale0;
    }
  }
  return td;
}

namespace {

// Sampling offsets for the Linf estimate: 4 equispaced interior points.
constexpr double kInteriorSamples[4] = {-0.6, -0.2, 0.2, 0.6};

}  // namespace

double norm(const DGField1D& field, NormKind kind) {
  const auto& mesh = field.mesh();
  const int k = field.degree();
  const auto& quad = gauss_rule(k + 3);

  if (kind == NormKind::Linf) {
    double m = 0.0;
    for (int j = 0; j < mesh.num_cells(); ++j) {
      for (int g = 0; g < quad.size(); ++g)
        m = std::max(m, std::abs(field.eval_ref(j, quad.points[g])));
      for (double xi : kInteriorSamples) m = std::max(m, std::abs(field.eval_ref(j, xi)));
      m = std::max(m, std::abs(field.eval_ref(j, -1.0)));
      m = std::max(m, std::abs(field.eval_ref(j, 1.0)));
    }
    return m;
  }

  double acc = 0.0;
  for (int j = 0; j < mesh.num_cells(); ++j) {
    const double half_h = 0.5 * mesh.cell_width(j);
    for (int g = 0; g < quad.size(); ++g) {
      const double v = field.eval_ref(j, quad.points[g]);
      acc += half_h * quad.weights[g] * (kind == NormKind::L1 ? std::abs(v) : v * v);
    }
  }
  return kind == NormKind::L1 ? acc : std::sqrt(acc);
}

double norm_modal_l2(const DGField1D& field) {
  const auto& mesh = field.mesh();
  double acc = 0.0;
  for (int j = 0; j < mesh.num_cells(); ++j) {
    const double half_h = 0.5 * mesh.cell_width(j);
    for (int m = 0; m < field.num_modes(); ++m) {
      const double c = field.coeff(j, m);
      acc += half_h * c * c * 2.0 / (2 * m + 1);
    }
  }
  return std::sqrt(acc);
}

DGField1D derivative(const DGField1D& field, int order) {
  const auto& ref = reference_element(field.degree());
  DGField1D out(field.mesh(), field.degree());
  for (int j = 0; j < field.mesh().num_cells(); ++j) {
    ref.differentiate(field.cell_coeffs(j), out.cell_coeffs(j), order);
    const double scale = std::pow(2.0 / field.mesh().cell_width(j), order);
    for (int m = 0; m < field.num_modes(); ++m) out.coeff(j, m) *= scale;
  }
  return out;
}

double inner_product(const DGField1D& a, const DGField1D& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner_product: size mismatch");
  const auto& mesh = a.mesh();
  double acc = 0.0;
  for (int j = 0; j < mesh.num_cells(); ++j) {
    const double half_h = 0.5 * mesh.cell_width(j);
    for (int m = 0; m < a.num_modes(); ++m)
      acc += half_h * a.coeff(j, m) * b.coeff(j, m) * 2.0 / (2 * m + 1);
  }
  return acc;
}

DGField2D::DGField2D(Mesh2D mesh, int degree)
    : mesh_(std::move(mesh)),
      degree_(degree),
      coeffs_(static_cast<std::size_t>(mesh_.num_cells_x()) * mesh_.num_cells_y() *
                  (degree + 1) * (degree + 1),
              0.0) {
  if (degree < 0) throw std::invalid_argument("DGField2D: degree must be >= 0");
}

void DGField2D::fill(double value) {
  std::fill(coeffs_.begin(), coeffs_.end(), 0.0);
  for (int i = 0; i < mesh_.num_cells_x(); ++i)
    for (int j = 0; j < mesh_.num_cells_y(); ++j) coeff(i, j, 0, 0) = value;
}

double DGField2D::eval_ref(int ci, int cj, double xi, double eta, int dx, int dy) const {
  const auto& ref = reference_element(degree_);
  const int n = degree_ + 1;
  const double* c = cell_coeffs(ci, cj);

  // Differentiate in x (rows) then in y (columns); both are modal-exact.
  std::vector<double> row(n), drow(n), ax(n * n), work(n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) row[a] = c[a * n + b];
    ref.differentiate(row.data(), drow.data(), dx);
    for (int a = 0; a < n; ++a) ax[a * n + b] = drow[a];
  }
  double s = 0.0;
  for (int a = 0; a < n; ++a) {
    ref.differentiate(ax.data() + a * n, work.data(), dy);
    double sy = 0.0;
    for (int b = 0; b < n; ++b) sy += work[b] * legendre_eval(b, eta).value;
    s += sy * legendre_eval(a, xi).value;
  }
  const double sx = std::pow(2.0 / mesh_.x().cell_width(ci), dx);
  const double sy = std::pow(2.0 / mesh_.y().cell_width(cj), dy);
  return s * sx * sy;
}

double DGField2D::evaluate(double x, double y) const {
  for (double bx : mesh_.x().boundaries())
    if (x == bx)
      throw std::invalid_argument("DGField2D::evaluate: x on a face; request explicit sides");
  for (double by : mesh_.y().boundaries())
    if (y == by)
      throw std::invalid_argument("DGField2D::evaluate: y on a face; request explicit sides");
  const auto& bx = mesh_.x().boundaries();
  const auto& by = mesh_.y().boundaries();
  const int ci = std::min<int>(std::upper_bound(bx.begin(), bx.end(), x) - bx.begin() - 1,
                               mesh_.num_cells_x() - 1);
  const int cj = std::min<int>(std::upper_bound(by.begin(), by.end(), y) - by.begin() - 1,
                               mesh_.num_cells_y() - 1);
  const double xi = 2.0 * (x - mesh_.x().cell_center(ci)) / mesh_.x().cell_width(ci);
  const double eta = 2.0 * (y - mesh_.y().cell_center(cj)) / mesh_.y().cell_width(cj);
  return eval_ref(ci, cj, xi, eta);
}

double DGField2D::evaluate(double x, double y, Side sx, Side sy) const {
  const int nx = mesh_.num_cells_x();
  const int ny = mesh_.num_cells_y();
  const auto& bx = mesh_.x().boundaries();
  const auto& by = mesh_.y().boundaries();

  int ci = -1, cj = -1;
  double xi = 0.0, eta = 0.0;
  for (int i = 0; i < static_cast<int>(bx.size()); ++i)
    if (x == bx[i]) {
      const int f = i % nx;
      ci = (sx == Side::Minus) ? (f + nx - 1) % nx : f;
      xi = (sx == Side::Minus) ? 1.0 : -1.0;
      break;
    }
  for (int j = 0; j < static_cast<int>(by.size()); ++j)
    if (y == by[j]) {
      const int f = j % ny;
      cj = (sy == Side::Minus) ? (f + ny - 1) % ny : f;
      eta = (sy == Side::Minus) ? 1.0 : -1.0;
      break;
    }
  if (ci < 0) {
    ci = std::min<int>(std::upper_bound(bx.begin(), bx.end(), x) - bx.begin() - 1, nx - 1);
    xi = 2.0 * (x - mesh_.x().cell_center(ci)) / mesh_.x().cell_width(ci);
  }
  if (cj < 0) {
    cj = std::min<int>(std::upper_bound(by.begin(), by.end(), y) - by.begin() - 1, ny - 1);
    eta = 2.0 * (y - mesh_.y().cell_center(cj)) / mesh_.y().cell_width(cj);
  }
  return eval_ref(ci, cj, xi, eta);
}

FaceTraces2D::FaceTraces2D(int n_faces, int n_tangential, int max_deriv, int modes)
    : nt_(n_tangential),
      max_deriv_(max_deriv),
      modes_(modes),
      data_(static_cast<std::size_t>(n_faces) * n_tangential * (max_deriv + 1) * 2 * modes, 0.0) {}

namespace {

// Traces along the x-normal faces: for each cell and derivative order r, the
// tangential modal coefficients of d^r u/dx^r at the two vertical edges.
FaceTraces2D face_traces(const DGField2D& field, int max_deriv, bool x_normal) {
  const auto& mx = field.mesh().x();
  const auto& my = field.mesh().y();
  const int nx = mx.num_cells();
  const int ny = my.num_cells();
  const int n = field.num_modes();
  const auto& ref = reference_element(field.degree());

  const int n_faces = x_normal ? nx : ny;
  const int n_tang = x_normal ? ny : nx;
  FaceTraces2D td(n_faces, n_tang, max_deriv, n);

  std::vector<double> line(n), dline(n);
  for (int ci = 0; ci < nx; ++ci) {
    for (int cj = 0; cj < ny; ++cj) {
      const double* c = field.cell_coeffs(ci, cj);
      const int normal_cell = x_normal ? ci : cj;
      const int tang_cell = x_normal ? cj : ci;
      const int n_normal = x_normal ? nx : ny;
      const double width = x_normal ? mx.cell_width(ci) : my.cell_width(cj);

      double scale = 1.0;
      for (int r = 0; r <= max_deriv; ++r) {
        // For each tangential mode, differentiate the normal-direction
        // coefficient line and evaluate at the two ends.
        for (int t = 0; t < n; ++t) {
          for (int m = 0; m < n; ++m) line[m] = x_normal ? c[m * n + t] : c[t * n + m];
          ref.differentiate(line.data(), dline.data(), r);
          double lo = 0.0, hi = 0.0;
          for (int m = 0; m < n; ++m) {
            hi += dline[m];
            lo += (m % 2 == 0) ? dline[m] : -dline[m];
          }
          // hi: trace at the cell's high face -> minus side of face normal_cell+1.
          td.left((normal_cell + 1) % n_normal, tang_cell, r)[t] = hi * scale;
          td.right(normal_cell, tang_cell, r)[t] = lo * scale;
        }
        scale *= 2.0 / width;
      }
    }
  }
  return td;
}

}  // namespace

FaceTraces2D traces_x(const DGField2D& field, int max_deriv) {
  return face_traces(field, max_deriv, true);
}

FaceTraces2D traces_y(const DGField2D& field, int max_deriv) {
  return face_traces(field, max_deriv, false);
}

double norm(const DGField2D& field, NormKind kind) {
  const auto& mx = field.mesh().x();
  const auto& my = field.mesh().y();
  const int k = field.degree();
  const auto& quad = gauss_rule(k + 3);

  if (kind == NormKind::Linf) {
    double m = 0.0;
    std::vector<double> pts(quad.points);
    pts.insert(pts.end(), {-1.0, -0.6, -0.2, 0.2, 0.6, 1.0});
    for (int ci = 0; ci < mx.num_cells(); ++ci)
      for (int cj = 0; cj < my.num_cells(); ++cj)
        for (double xi : pts)
          for (double eta : pts) m = std::max(m, std::abs(field.eval_ref(ci, cj, xi, eta)));
    return m;
  }

  double acc = 0.0;
  for (int ci = 0; ci < mx.num_cells(); ++ci) {
    for (int cj = 0; cj < my.num_cells(); ++cj) {
      const double jac = 0.25 * mx.cell_width(ci) * my.cell_width(cj);
      for (int gx = 0; gx < quad.size(); ++gx)
        for (int gy = 0; gy < quad.size(); ++gy) {
          const double v = field.eval_ref(ci, cj, quad.points[gx], quad.points[gy]);
          acc += jac * quad.weights[gx] * quad.weights[gy] *
                 (kind == NormKind::L1 ? std::abs(v) : v * v);
        }
    }
  }
  return kind == NormKind::L1 ? acc : std::sqrt(acc);
}

double inner_product(const DGField2D& a, const DGField2D& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner_product: size mismatch");
  const auto& mx = a.mesh().x();
  const auto& my = a.mesh().y();
  const int n = a.num_modes();
  double acc = 0.0;
  for (int ci = 0; ci < mx.num_cells(); ++ci)
    for (int cj = 0; cj < my.num_cells(); ++cj) {
      const double jac = 0.25 * mx.cell_width(ci) * my.cell_width(cj);
      const double* ca = a.cell_coeffs(ci, cj);
      const double* cb = b.cell_coeffs(ci, cj);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          acc += jac * ca[p * n + q] * cb[p * n + q] * (2.0 / (2 * p + 1)) * (2.0 / (2 * q + 1));
    }
  return acc;
}

}  // namespace hodg
