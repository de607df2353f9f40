#pragma once

#include <vector>

namespace hodg {

struct Interval {
  double a = 0.0;
  double b = 1.0;
  double length() const { return b - a; }
};

/// Periodic 1D partition of an interval. Interfaces are indexed 0..N-1 with
/// interface f at the left face of cell f; interface 0 is the domain
/// boundary, which is identified with the right face of the last cell.
class Mesh1D {
 public:
  /// Uniform cells, each interior boundary optionally shifted by a
  /// deterministic pseudo-random amount in [-perturbation*h, perturbation*h].
  /// N >= 2; perturbation in [0, 0.5) or the cells could invert.
  static Mesh1D build(int n_cells, Interval domain, double perturbation = 0.0,
                      unsigned seed = 20250607u);

  /// Rebuild a mesh from an explicit strictly increasing boundary list
  /// (exact round-trip of dumped fields, including perturbed meshes).
  static Mesh1D restore(std::vector<double> boundaries);

  int num_cells() const { return static_cast<int>(boundaries_.size()) - 1; }
  double boundary(int i) const { return boundaries_[i]; }
  const std::vector<double>& boundaries() const { return boundaries_; }

  double cell_left(int j) const { return boundaries_[j]; }
  double cell_right(int j) const { return boundaries_[j + 1]; }
  double cell_center(int j) const { return 0.5 * (boundaries_[j] + boundaries_[j + 1]); }
  double cell_width(int j) const { return boundaries_[j + 1] - boundaries_[j]; }

  double h_max() const { return h_max_; }
  double h_min() const { return h_min_; }
  double regularity_ratio() const { return h_max_ / h_min_; }
  bool uniform() const { return uniform_; }

  Interval domain() const { return {boundaries_.front(), boundaries_.back()}; }

  int num_interfaces() const { return num_cells(); }
  int left_cell(int f) const { return (f + num_cells() - 1) % num_cells(); }
  int right_cell(int f) const { return f; }
  double interface_x(int f) const { return boundaries_[f]; }

 private:
  std::vector<double> boundaries_;
  double h_max_ = 0.0;
  double h_min_ = 0.0;
  bool uniform_ = true;
};

/// Tensor product of two periodic 1D partitions; element (i,j) = I_i x J_j.
class Mesh2D {
 public:
  Mesh2D(Mesh1D x_mesh, Mesh1D y_mesh);
  static Mesh2D build(int nx, int ny, Interval dx, Interval dy,
                      double perturbation = 0.0, unsigned seed = 20250607u);

  const Mesh1D& x() const { return x_; }
  const Mesh1D& y() const { return y_; }
  int num_cells_x() const { return x_.num_cells(); }
  int num_cells_y() const { return y_.num_cells(); }
  double h_max() const;

 private:
  Mesh1D x_;
  Mesh1D y_;
};

}  // namespace hodg
