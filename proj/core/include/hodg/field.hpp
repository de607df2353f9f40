#pragma once

#include <vector>

#include "hodg/mesh.hpp"

namespace hodg {

enum class Side { Minus, Plus };
enum class NormKind { L1, L2, Linf };

/// Piecewise polynomial (modal Legendre coefficients per cell) on a periodic
/// 1D mesh. Value semantics; evaluation inside cell j uses only row j.
class DGField1D {
 public:
  DGField1D(Mesh1D mesh, int degree);

  int degree() const { return degree_; }
  int num_modes() const { return degree_ + 1; }
  const Mesh1D& mesh() const { return mesh_; }

  double coeff(int cell, int mode) const { return coeffs_[cell * (degree_ + 1) + mode]; }
  double& coeff(int cell, int mode) { return coeffs_[cell * (degree_ + 1) + mode]; }
  const double* cell_coeffs(int cell) const { return coeffs_.data() + cell * (degree_ + 1); }
  double* cell_coeffs(int cell) { return coeffs_.data() + cell * (degree_ + 1); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::vector<double>& coeffs() { return coeffs_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  /// d-th derivative at the reference coordinate xi of cell `cell`.
  double eval_ref(int cell, double xi, int deriv = 0) const;

  /// Point evaluation. At a cell boundary the one-sided limits differ, so a
  /// side must be requested explicitly; the two-argument overload throws
  /// std::invalid_argument there.
  double evaluate(double x) const;
  double evaluate(double x, Side side) const;

  void fill(double value);

 private:
  int locate(double x) const;

  Mesh1D mesh_;
  int degree_;
  std::vector<double> coeffs_;
};

/// One-sided interface limits of a field and its derivatives. Interface f is
/// the left face of cell f; periodic wraparound identifies interface 0 with
/// the right end of the domain.
class TraceData1D {
 public:
  TraceData1D(int num_interfaces, int max_deriv);

  int num_interfaces() const { return n_; }
  int max_deriv() const { return max_deriv_; }

  /// Limit from the left cell (the paper's minus trace) of the r-th derivative.
  double left(int f, int r) const { return data_[(f * (max_deriv_ + 1) + r) * 2]; }
  /// Limit from the right cell (plus trace).
  double right(int f, int r) const { return data_[(f * (max_deriv_ + 1) + r) * 2 + 1]; }
  double jump(int f, int r) const { return right(f, r) - left(f, r); }
  double average(int f, int r) const { return 0.5 * (right(f, r) + left(f, r)); }

  double& left(int f, int r) { return data_[(f * (max_deriv_ + 1) + r) * 2]; }
  double& right(int f, int r) { return data_[(f * (max_deriv_ + 1) + r) * 2 + 1]; }

 private:
  int n_;
  int max_deriv_;
  std::vector<double> data_;
};

/// One-sided limits of the field and its derivatives up to max_deriv at every
/// interface, with periodic wraparound. Requires max_deriv <= degree is NOT
/// enforced: higher derivatives of a degree-k polynomial are simply zero.
TraceData1D traces(const DGField1D& field, int max_deriv);

/// L1/L2 via (k+3)-point element quadrature; Linf via dense sampling
/// (quadrature points, both cell endpoints, 4 equispaced interior points).
double norm(const DGField1D& field, NormKind kind);

/// Exact L2 norm from the modal coefficients (Parseval on the Legendre basis).
double norm_modal_l2(const DGField1D& field);

/// Cellwise derivative of the piecewise polynomial (exact modal operation).
DGField1D derivative(const DGField1D& field, int order);

/// Exact L2 inner product of two fields on the same mesh/degree.
double inner_product(const DGField1D& a, const DGField1D& b);

/// Tensor-product modal field on a 2D Cartesian mesh (local space Q^k).
class DGField2D {
 public:
  DGField2D(Mesh2D mesh, int degree);

  int degree() const { return degree_; }
  int num_modes() const { return degree_ + 1; }
  const Mesh2D& mesh() const { return mesh_; }

  double coeff(int ci, int cj, int a, int b) const { return coeffs_[index(ci, cj, a, b)]; }
  double& coeff(int ci, int cj, int a, int b) { return coeffs_[index(ci, cj, a, b)]; }
  const double* cell_coeffs(int ci, int cj) const {
    return coeffs_.data() + (static_cast<std::size_t>(ci) * mesh_.num_cells_y() + cj) *
                                (degree_ + 1) * (degree_ + 1);
  }
  double* cell_coeffs(int ci, int cj) {
    return coeffs_.data() + (static_cast<std::size_t>(ci) * mesh_.num_cells_y() + cj) *
                                (degree_ + 1) * (degree_ + 1);
  }
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::vector<double>& coeffs() { return coeffs_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  /// Mixed derivative d^(dx+dy)/dx^dx dy^dy at reference coordinates of a cell.
  double eval_ref(int ci, int cj, double xi, double eta, int dx = 0, int dy = 0) const;

  double evaluate(double x, double y) const;
  double evaluate(double x, double y, Side sx, Side sy) const;

  void fill(double value);

 private:
  std::size_t index(int ci, int cj, int a, int b) const {
    return ((static_cast<std::size_t>(ci) * mesh_.num_cells_y() + cj) * (degree_ + 1) + a) *
               (degree_ + 1) +
           b;
  }

  Mesh2D mesh_;
  int degree_;
  std::vector<double> coeffs_;
};

/// Traces on the faces orthogonal to one coordinate direction. For x-faces,
/// face (fi, j) is the west face of cell (fi, j); left/right store the modal
/// coefficients (in the tangential variable) of the r-th normal derivative
/// traced from the west/east cell. Periodic wraparound in both directions.
class FaceTraces2D {
 public:
  FaceTraces2D(int n_faces, int n_tangential, int max_deriv, int modes);

  int max_deriv() const { return max_deriv_; }
  const double* left(int f, int t, int r) const { return data(f, t, r, 0); }
  const double* right(int f, int t, int r) const { return data(f, t, r, 1); }
  double* left(int f, int t, int r) { return data(f, t, r, 0); }
  double* right(int f, int t, int r) { return data(f, t, r, 1); }

 private:
  const double* data(int f, int t, int r, int side) const {
    return data_.data() + (((static_cast<std::size_t>(f) * nt_ + t) * (max_deriv_ + 1) + r) * 2 +
                           side) *
                              modes_;
  }
  double* data(int f, int t, int r, int side) {
    return const_cast<double*>(static_cast<const FaceTraces2D*>(this)->data(f, t, r, side));
  }

  int nt_;
  int max_deriv_;
  int modes_;
  std::vector<double> data_;
};

FaceTraces2D traces_x(const DGField2D& field, int max_deriv);
FaceTraces2D traces_y(const DGField2D& field, int max_deriv);

double norm(const DGField2D& field, NormKind kind);
double inner_product(const DGField2D& a, const DGField2D& b);

}  // namespace hodg
