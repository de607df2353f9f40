#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hodg/basis.hpp"

using namespace hodg;

namespace {

// Independent oracle: Legendre value by the bare three-term recurrence.
double legendre_oracle(int m, double x) {
  if (m == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int n = 1; n < m; ++n) {
    const double p2 = ((2 * n + 1) * x * p1 - n * p0) / (n + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// Oracle: root of L_2 in (0,1) by bisection.
double l2_root_by_bisection() {
  double lo = 0.1, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (legendre_oracle(2, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double integrate(const QuadRule& q, double (*f)(double)) {
  double s = 0.0;
  for (int g = 0; g < q.size(); ++g) s += q.weights[g] * f(q.points[g]);
  return s;
}

}  // namespace

TEST_CASE("legendre_eval basics") {
  CHECK(legendre_eval(0, 0.7).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(legendre_eval(0, 0.7).derivative == doctest::Approx(0.0).epsilon(1e-15));
  for (int k = 1; k <= 8; ++k) CHECK(legendre_eval(k, 1.0).value == doctest::Approx(1.0));

  // L_3(0.5) = (5 x^3 - 3 x)/2 = -0.4375, cross-checked against the oracle.
  CHECK(legendre_oracle(3, 0.5) == doctest::Approx(-0.4375).epsilon(1e-15));
  CHECK(legendre_eval(3, 0.5).value == doctest::Approx(-0.4375).epsilon(1e-14));

  // Derivative against the recurrence identity at interior points.
  for (int m = 1; m <= 6; ++m) {
    const double x = 0.3;
    const double expected = m * (legendre_oracle(m - 1, x) - x * legendre_oracle(m, x)) /
                            (1.0 - x * x);
    CHECK(legendre_eval(m, x).derivative == doctest::Approx(expected).epsilon(1e-13));
  }
  // Endpoint derivative L_m'(1) = m(m+1)/2.
  CHECK(legendre_eval(4, 1.0).derivative == doctest::Approx(10.0));
  CHECK(legendre_eval(5, -1.0).derivative == doctest::Approx(15.0));

  CHECK_THROWS_AS(legendre_eval(-1, 0.0), std::invalid_argument);
}

TEST_CASE("gauss_rule nodes and weights") {
  const auto& one = gauss_rule(1);
  CHECK(one.points[0] == doctest::Approx(0.0));
  CHECK(one.weights[0] == doctest::Approx(2.0));

  const auto& two = gauss_rule(2);
  const double root = l2_root_by_bisection();
  CHECK(root == doctest::Approx(0.5773502691896257).epsilon(1e-14));
  CHECK(two.points[1] == doctest::Approx(root).epsilon(1e-14));
  CHECK(two.points[0] == doctest::Approx(-root).epsilon(1e-14));

  // Analytic integral of x^4 over [-1,1] is 2/5.
  CHECK(integrate(gauss_rule(3), [](double x) { return x * x * x * x; }) ==
        doctest::Approx(0.4).epsilon(1e-14));

  CHECK_THROWS_AS(gauss_rule(0), std::invalid_argument);

  for (int n = 1; n <= 16; ++n) {
    const auto& q = gauss_rule(n);
    double wsum = 0.0;
    for (int g = 0; g < n; ++g) {
      CHECK(q.weights[g] > 0.0);
      if (g > 0) CHECK(q.points[g] > q.points[g - 1]);
      wsum += q.weights[g];
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("gauss_rule exactness up to degree 2n-1") {
  for (int n = 1; n <= 10; ++n) {
    const auto& q = gauss_rule(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int g = 0; g < n; ++g) s += q.weights[g] * std::pow(q.points[g], p);
      const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-14).scale(1.0));
    }
  }
}

TEST_CASE("legendre orthogonality through quadrature") {
  for (int k = 1; k <= 5; ++k) {
    const auto& q = gauss_rule(k + 1);
    for (int m = 0; m <= k; ++m) {
      for (int mp = 0; mp <= k; ++mp) {
        double s = 0.0;
        for (int g = 0; g < q.size(); ++g)
          s += q.weights[g] * legendre_eval(m, q.points[g]).value *
               legendre_eval(mp, q.points[g]).value;
        const double expected = (m == mp) ? 2.0 / (2 * m + 1) : 0.0;
        CHECK(std::abs(s - expected) < 1e-13);
      }
    }
  }
}

TEST_CASE("reference element derivative matrices are exact") {
  const ReferenceElement& ref = reference_element(3);

  // L_3' = 5 L_2 + L_0 (integer identity).
  const double e3[4] = {0.0, 0.0, 0.0, 1.0};
  double d[4];
  ref.differentiate(e3, d, 1);
  CHECK(d[0] == 1.0);
  CHECK(d[1] == 0.0);
  CHECK(d[2] == 5.0);
  CHECK(d[3] == 0.0);

  // xi^3 = (2 L_3 + 3 L_1)/5 has derivative 3 xi^2 = 2 L_2 + L_0 exactly.
  const double cubic[4] = {0.0, 0.6, 0.0, 0.4};
  ref.differentiate(cubic, d, 1);
  CHECK(d[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d[1] == 0.0);
  CHECK(d[2] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d[3] == 0.0);

  // Degree-exceeding derivatives vanish identically.
  ref.differentiate(cubic, d, 4);
  for (double v : d) CHECK(v == 0.0);

  // Mass diagonal and endpoint rows.
  for (int m = 0; m <= 3; ++m) {
    CHECK(ref.mass(m) == doctest::Approx(2.0 / (2 * m + 1)));
    CHECK(ref.endpoint_value(m, 0, true) == doctest::Approx(1.0));
    CHECK(ref.endpoint_value(m, 0, false) == doctest::Approx(m % 2 == 0 ? 1.0 : -1.0));
    CHECK(ref.endpoint_value(m, 1, true) == doctest::Approx(0.5 * m * (m + 1)));
  }
}
