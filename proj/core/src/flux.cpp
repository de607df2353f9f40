#include "hodg/flux.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hodg {

void FluxConfig::validate() const {
  if (choice == AlternatingChoice::Theta && (theta < 0.0 || theta > 1.0))
    throw std::invalid_argument("FluxConfig: theta must lie in [0,1]");
  if (lf_alpha < 0.0) throw std::invalid_argument("FluxConfig: lf_alpha must be >= 0");
}

double FluxConfig::minus_weight(FluxFamily family, int level, int order_l) const {
  validate();
  // Aux weight per level; the solution family is tied to the aux side at the
  // paired level l-1-level so the pair always comes from opposite sides.
  const auto aux_weight = [this](int lv) -> double {
    switch (choice) {
      case AlternatingChoice::Choice1:
        return 1.0;
      case AlternatingChoice::Choice2:
        return 0.0;
      case AlternatingChoice::Choice3:
        return lv % 2 == 0 ? 1.0 : 0.0;
      case AlternatingChoice::Choice4:
        return lv % 2 == 0 ? 0.0 : 1.0;
      case AlternatingChoice::Theta:
        return theta;
    }
    return 1.0;
  };
  if (family == FluxFamily::Aux) return aux_weight(level);
  return 1.0 - aux_weight(order_l - 1 - level);
}

double FluxConfig::select(FluxFamily family, int level, int order_l, double minus,
                          double plus) const {
  const double w = minus_weight(family, level, order_l);
  if (w == 1.0) return minus;
  if (w == 0.0) return plus;
  return w * minus + (1.0 - w) * plus;
}

double select_trace(const FluxConfig& config, FluxFamily family, int level, int order_l,
                    double minus, double plus) {
  return config.select(family, level, order_l, minus, plus);
}

FluxConfig FluxConfig::parse(const std::string& spec) {
  FluxConfig config;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (token == "alt1")
      config.choice = AlternatingChoice::Choice1;
    else if (token == "alt2")
      config.choice = AlternatingChoice::Choice2;
    else if (token == "alt3")
      config.choice = AlternatingChoice::Choice3;
    else if (token == "alt4")
      config.choice = AlternatingChoice::Choice4;
    else if (token.rfind("theta:", 0) == 0) {
      config.choice = AlternatingChoice::Theta;
      config.theta = std::stod(token.substr(6));
    } else if (token == "upwind")
      config.monotone = MonotoneKind::UpwindMinus;
    else if (token.rfind("lf:", 0) == 0) {
      config.monotone = MonotoneKind::LaxFriedrichs;
      config.lf_alpha = std::stod(token.substr(3));
    } else if (token == "central")
      config.monotone = MonotoneKind::CentralConservative;
    else
      throw std::invalid_argument("unknown flux token '" + token + "'");
  }
  config.validate();
  return config;
}

std::string FluxConfig::to_string() const {
  std::string s;
  switch (choice) {
    case AlternatingChoice::Choice1: s = "alt1"; break;
    case AlternatingChoice::Choice2: s = "alt2"; break;
    case AlternatingChoice::Choice3: s = "alt3"; break;
    case AlternatingChoice::Choice4: s = "alt4"; break;
    case AlternatingChoice::Theta: s = "theta:" + std::to_string(theta); break;
  }
  switch (monotone) {
    case MonotoneKind::UpwindMinus: s += ",upwind"; break;
    case MonotoneKind::LaxFriedrichs: s += ",lf:" + std::to_string(lf_alpha); break;
    case MonotoneKind::CentralConservative: s += ",central"; break;
  }
  return s;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

ScalarFlux ScalarFlux::with_numeric_antiderivative(std::function<double(double)> f) {
  ScalarFlux s;
  s.f = f;
  s.antiderivative = [f](double v) {
    if (v == 0.0) return 0.0;
    const double a = 0.0, b = v;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, 1e-13, 40);
  };
  return s;
}

double monotone_flux(MonotoneKind kind, const ScalarFlux& flux, double alpha, double v_minus,
                     double v_plus) {
  switch (kind) {
    case MonotoneKind::UpwindMinus:
      return flux.f(v_minus);
    case MonotoneKind::LaxFriedrichs:
      return 0.5 * (flux.f(v_minus) + flux.f(v_plus)) - 0.5 * alpha * (v_plus - v_minus);
    case MonotoneKind::CentralConservative: {
      const double jump = v_plus - v_minus;
      if (std::abs(jump) < 1e-12 * (1.0 + std::abs(v_minus)))
        return flux.f(0.5 * (v_minus + v_plus));
      return (flux.antiderivative(v_plus) - flux.antiderivative(v_minus)) / jump;
    }
  }
  return 0.0;
}

double interface_dissipation(MonotoneKind kind, const ScalarFlux& flux, double alpha,
                             double v_minus, double v_plus) {
  const double fhat = monotone_flux(kind, flux, alpha, v_minus, v_plus);
  return flux.antiderivative(v_plus) - flux.antiderivative(v_minus) +
         fhat * (v_minus - v_plus);
}

}  // namespace hodg
