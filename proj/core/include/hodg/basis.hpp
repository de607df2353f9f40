#pragma once

#include <vector>

namespace hodg {

/// Value and first derivative of the Legendre polynomial L_m at xi in [-1,1].
struct LegendreEval {
  double value;
  double derivative;
};

/// Evaluates L_m and L_m' by the three-term recurrence. Total for m >= 0.
LegendreEval legendre_eval(int m, double xi);

/// Gauss-Legendre rule on [-1,1], exact for polynomials of degree 2*n-1.
struct QuadRule {
  std::vector<double> points;   // strictly increasing abscissae in (-1,1)
  std::vector<double> weights;  // positive, sum to 2

  int size() const { return static_cast<int>(points.size()); }
};

/// Nodes/weights by Newton iteration on L_n (tolerance 1e-15, Chebyshev
/// starting guesses). Throws std::invalid_argument for n_pts < 1.
/// Results are cached; the returned reference stays valid for the process
/// lifetime and is immutable.
const QuadRule& gauss_rule(int n_pts);

/// Modal Legendre reference element on [-1,1] for polynomial degree k.
///
/// The local mass matrix is diagonal with entries 2/(2m+1); derivatives act
/// on modal coefficients through exact integer matrices, so repeated
/// differentiation of polynomial data is exact.
class ReferenceElement {
 public:
  explicit ReferenceElement(int degree);

  int degree() const { return degree_; }
  int num_modes() const { return degree_ + 1; }

  /// Diagonal mass entry \int L_m^2 = 2/(2m+1).
  double mass(int m) const { return 2.0 / (2 * m + 1); }

  /// Modal derivative matrix power: out = D^order * in (reference variable).
  /// D^order vanishes identically for order > degree.
  void differentiate(const double* in, double* out, int order) const;

  /// L_m^{(deriv)} at xi = +1 (right) or -1 (left).
  double endpoint_value(int m, int deriv, bool right) const;

  /// Row-major (k+1)x(k+1) matrix of D^order (order <= degree; higher orders
  /// are the zero matrix and may not be requested through this accessor).
  const std::vector<double>& deriv_matrix(int order) const;

 private:
  int degree_;
  std::vector<std::vector<double>> dpow_;      // dpow_[r] = D^r, r = 0..degree
  std::vector<std::vector<double>> end_right_; // [deriv][m] = L_m^{(deriv)}(+1)
  std::vector<std::vector<double>> end_left_;  // [deriv][m] = L_m^{(deriv)}(-1)
};

/// Shared, immutable reference element for the given degree.
const ReferenceElement& reference_element(int degree);

}  // namespace hodg
