#include "hodg/basis.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace hodg {

LegendreEval legendre_eval(int m, double xi) {
  if (m < 0) throw std::invalid_argument("legendre_eval: m must be >= 0");
  if (m == 0) return {1.0, 0.0};
  double pm1 = 1.0;  // L_0
  double p = xi;     // L_1
  for (int n = 1; n < m; ++n) {
    const double pn1 = ((2 * n + 1) * xi * p - n * pm1) / (n + 1);
    pm1 = p;
    p = pn1;
  }
  // (1-xi^2) L_m' = m (L_{m-1} - xi L_m); closed form at the endpoints.
  double dp;
  if (std::abs(1.0 - xi * xi) < 1e-14) {
    dp = 0.5 * m * (m + 1);
    if (xi < 0.0 && m % 2 == 0) dp = -dp;
  } else {
    dp = m * (pm1 - xi * p) / (1.0 - xi * xi);
  }
  return {p, dp};
}

namespace {

QuadRule compute_gauss_rule(int n) {
  QuadRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  // Find the n roots of L_n by Newton iteration from Chebyshev guesses.
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_eval(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre_eval(n, x);
    (void)p;
    rule.points[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  // Enforce exact symmetry of the computed rule.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double xm = 0.5 * (rule.points[j] - rule.points[i]);
    rule.points[i] = -xm;
    rule.points[j] = xm;
    const double wm = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = rule.weights[j] = wm;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

}  // namespace

const QuadRule& gauss_rule(int n_pts) {
  if (n_pts < 1) throw std::invalid_argument("gauss_rule: n_pts must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n_pts];
  if (!slot) slot = std::make_unique<QuadRule>(compute_gauss_rule(n_pts));
  return *slot;
}

ReferenceElement::ReferenceElement(int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("ReferenceElement: degree must be >= 0");
  const int n = degree + 1;

  // First-derivative matrix in modal space: L_b' = sum_{a<b, b-a odd} (2a+1) L_a.
  std::vector<double> d(n * n, 0.0);
  for (int b = 0; b < n; ++b)
    for (int a = b - 1; a >= 0; a -= 2) d[a * n + b] = 2 * a + 1;

  dpow_.resize(degree + 1);
  dpow_[0].assign(n * n, 0.0);
  for (int i = 0; i < n; ++i) dpow_[0][i * n + i] = 1.0;
  for (int r = 1; r <= degree; ++r) {
    dpow_[r].assign(n * n, 0.0);
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        if (d[a * n + c] == 0.0) continue;
        for (int b = 0; b < n; ++b)
          dpow_[r][a * n + b] += d[a * n + c] * dpow_[r - 1][c * n + b];
      }
  }

  // Endpoint rows L_m^{(r)}(+-1) = (D^r e_m) evaluated with L_a(1) = 1,
  // L_a(-1) = (-1)^a.
  end_right_.resize(degree + 1);
  end_left_.resize(degree + 1);
  for (int r = 0; r <= degree; ++r) {
    end_right_[r].assign(n, 0.0);
    end_left_[r].assign(n, 0.0);
    for (int m = 0; m < n; ++m) {
      double right = 0.0, left = 0.0;
      for (int a = 0; a < n; ++a) {
        const double c = dpow_[r][a * n + m];
        right += c;
        left += (a % 2 == 0) ? c : -c;
      }
      end_right_[r][m] = right;
      end_left_[r][m] = left;
    }
  }
}

void ReferenceElement::differentiate(const double* in, double* out, int order) const {
  const int n = degree_ + 1;
  if (order > degree_) {
    for (int a = 0; a < n; ++a) out[a] = 0.0;
    return;
  }
  const auto& m = dpow_[order];
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int b = 0; b < n; ++b) s += m[a * n + b] * in[b];
    out[a] = s;
  }
}

double ReferenceElement::endpoint_value(int m, int deriv, bool right) const {
  if (deriv > degree_) return 0.0;
  return right ? end_right_[deriv][m] : end_left_[deriv][m];
}

const std::vector<double>& ReferenceElement::deriv_matrix(int order) const {
  if (order > degree_)
    throw std::out_of_range("ReferenceElement::deriv_matrix: order exceeds degree");
  return dpow_[order];
}

const ReferenceElement& reference_element(int degree) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<ReferenceElement>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[degree];
  if (!slot) slot = std::make_unique<ReferenceElement>(degree);
  return *slot;
}

}  // namespace hodg
