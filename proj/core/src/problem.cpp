#include "hodg/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace hodg {

double ProblemSpec::pde_sign() const {
  if (order % 2 == 0) return (order / 2) % 2 == 0 ? 1.0 : -1.0;
  if (sign == SignConvention::PositiveOdd) return 1.0;
  return ((order - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
}

int ProblemSpec::min_degree() const {
  const int k = order % 2 == 0 ? order / 2 - 1 : (order - 3) / 2;
  return k < 0 ? 0 : k;
}

bool ProblemSpec::vhat_minus() const {
  const int half = (order - 1) / 2;
  const double dissipative_sign = half % 2 == 0 ? 1.0 : -1.0;
  return pde_sign() == dissipative_sign;
}

void ProblemSpec::validate() const {
  if (order < 2) throw std::invalid_argument("ProblemSpec: order must be >= 2");
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("ProblemSpec: dimension must be 1 or 2");
  if (dimension == 2 && order != 4)
    throw std::invalid_argument("ProblemSpec: only the fourth-order biharmonic is built in 2D");
  if (kind == NonlinearityKind::FourthB && order != 4)
    throw std::invalid_argument("ProblemSpec: b(u) nonlinearity applies to order 4 only");
  if (kind == NonlinearityKind::FifthF && order != 5)
    throw std::invalid_argument("ProblemSpec: f(v) nonlinearity applies to order 5 only");
  if (manufactured && !exact)
    throw std::invalid_argument("ProblemSpec: manufactured source needs an exact solution");
}

double ProblemSpec::source_value(double x, double t) const {
  if (!exact) throw std::invalid_argument("ProblemSpec: no exact solution available");
  const auto& u = *exact;
  const double ut = u.dt(x, t);

  switch (kind) {
    case NonlinearityKind::FourthB: {
      // (b(u) u_xx)_xx expanded by the product rule.
      const double u0 = u.deriv(0, x, t);
      const double u1 = u.deriv(1, x, t);
      const double u2 = u.deriv(2, x, t);
      const double u3 = u.deriv(3, x, t);
      const double u4 = u.deriv(4, x, t);
      return ut + fourth.ddb(u0) * u1 * u1 * u2 + fourth.db(u0) * u2 * u2 +
             2.0 * fourth.db(u0) * u1 * u3 + fourth.b(u0) * u4;
    }
    case NonlinearityKind::FifthF: {
      // f(u_xx)_xxx via the chain rule with v = u_xx.
      const double v = u.deriv(2, x, t);
      const double v1 = u.deriv(3, x, t);
      const double v2 = u.deriv(4, x, t);
      const double v3 = u.deriv(5, x, t);
      return ut + fifth.dddf(v) * v1 * v1 * v1 + 3.0 * fifth.ddf(v) * v1 * v2 + fifth.df(v) * v3;
    }
    case NonlinearityKind::Linear:
      return ut + pde_sign() * u.deriv(order, x, t);
  }
  return 0.0;
}

namespace {

ExactSolution1D decaying_sine() {
  // u = e^{-t} sin x; the m-th derivative shifts the phase by m pi/2.
  return {[](int m, double x, double t) { return std::exp(-t) * std::sin(x + 0.5 * M_PI * m); },
          [](double x, double t) { return -std::exp(-t) * std::sin(x); }};
}

ExactSolution1D traveling_sine(double speed) {
  return {[speed](int m, double x, double t) { return std::sin(x - speed * t + 0.5 * M_PI * m); },
          [speed](double x, double t) { return -speed * std::cos(x - speed * t); }};
}

}  // namespace

ProblemSpec example_problem(const std::string& id) {
  ProblemSpec p;
  p.id = id;
  if (id == "ex7.1") {
    p.order = 4;
    p.exact = decaying_sine();
  } else if (id == "ex7.2") {
    p.order = 5;
    p.sign = SignConvention::PositiveOdd;
    p.exact = traveling_sine(1.0);
  } else if (id == "ex7.3") {
    p.order = 4;
    p.kind = NonlinearityKind::FourthB;
    p.fourth = {[](double u) { return u * u; }, [](double u) { return 2.0 * u; },
                [](double) { return 2.0; }};
    p.exact = decaying_sine();
    p.manufactured = true;
  } else if (id == "ex7.4") {
    p.order = 5;
    p.sign = SignConvention::PositiveOdd;
    p.kind = NonlinearityKind::FifthF;
    p.fifth.flux.f = [](double v) { return v * v * v; };
    p.fifth.flux.antiderivative = [](double v) { return 0.25 * v * v * v * v; };
    p.fifth.df = [](double v) { return 3.0 * v * v; };
    p.fifth.ddf = [](double v) { return 6.0 * v; };
    p.fifth.dddf = [](double) { return 6.0; };
    p.exact = traveling_sine(1.0);
    p.manufactured = true;
  } else if (id == "ex7.5") {
    p.order = 4;
    p.dimension = 2;
    p.exact2d = ExactSolution2D{
        [](int dx, int dy, double x, double y, double t) {
          return std::exp(-4.0 * t) * std::sin(x + y + 0.5 * M_PI * (dx + dy));
        },
        [](double x, double y, double t) { return -4.0 * std::exp(-4.0 * t) * std::sin(x + y); }};
  } else {
    throw std::invalid_argument("unknown example problem '" + id + "'");
  }
  p.validate();
  return p;
}

ProblemSpec linear_problem(int order, SignConvention sign) {
  ProblemSpec p;
  p.order = order;
  p.sign = sign;
  p.id = "linear-n" + std::to_string(order);
  if (order % 2 == 0) {
    p.exact = decaying_sine();
  } else {
    const int half = (order - 1) / 2;
    const double speed = p.pde_sign() * (half % 2 == 0 ? 1.0 : -1.0);
    p.exact = traveling_sine(speed);
  }
  p.validate();
  return p;
}

}  // namespace hodg
