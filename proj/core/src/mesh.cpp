#include "hodg/mesh.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace hodg {

Mesh1D Mesh1D::build(int n_cells, Interval domain, double perturbation, unsigned seed) {
  if (n_cells < 2) throw std::invalid_argument("Mesh1D: need at least 2 cells");
  if (domain.length() <= 0.0) throw std::invalid_argument("Mesh1D: empty domain");
  if (perturbation < 0.0 || perturbation >= 0.5)
    throw std::invalid_argument("Mesh1D: perturbation must lie in [0, 0.5)");

  Mesh1D mesh;
  mesh.boundaries_.resize(n_cells + 1);
  const double h = domain.length() / n_cells;
  for (int i = 0; i <= n_cells; ++i) mesh.boundaries_[i] = domain.a + i * h;
  mesh.boundaries_.back() = domain.b;

  if (perturbation > 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> shift(-perturbation * h, perturbation * h);
    for (int i = 1; i < n_cells; ++i) mesh.boundaries_[i] += shift(rng);
    mesh.uniform_ = false;
  }

  mesh.h_max_ = 0.0;
  mesh.h_min_ = domain.length();
  for (int j = 0; j < n_cells; ++j) {
    const double hj = mesh.cell_width(j);
    if (hj <= 0.0) throw std::runtime_error("Mesh1D: inverted cell");
    mesh.h_max_ = std::max(mesh.h_max_, hj);
    mesh.h_min_ = std::min(mesh.h_min_, hj);
  }
  return mesh;
}

Mesh1D Mesh1D::restore(std::vector<double> boundaries) {
  if (boundaries.size() < 3) throw std::invalid_argument("Mesh1D::restore: need at least 2 cells");
  Mesh1D mesh;
  mesh.boundaries_ = std::move(boundaries);
  const int n = mesh.num_cells();
  mesh.h_max_ = 0.0;
  mesh.h_min_ = mesh.boundaries_.back() - mesh.boundaries_.front();
  mesh.uniform_ = true;
  const double h0 = mesh.cell_width(0);
  for (int j = 0; j < n; ++j) {
    const double hj = mesh.cell_width(j);
    if (hj <= 0.0) throw std::invalid_argument("Mesh1D::restore: boundaries not increasing");
    mesh.h_max_ = std::max(mesh.h_max_, hj);
    mesh.h_min_ = std::min(mesh.h_min_, hj);
    if (hj != h0) mesh.uniform_ = false;
  }
  return mesh;
}

Mesh2D::Mesh2D(Mesh1D x_mesh, Mesh1D y_mesh) : x_(std::move(x_mesh)), y_(std::move(y_mesh)) {}

Mesh2D Mesh2D::build(int nx, int ny, Interval dx, Interval dy, double perturbation,
                     unsigned seed) {
  return Mesh2D(Mesh1D::build(nx, dx, perturbation, seed),
                Mesh1D::build(ny, dy, perturbation, seed + 1));
}

double Mesh2D::h_max() const { return std::max(x_.h_max(), y_.h_max()); }

}  // namespace hodg
