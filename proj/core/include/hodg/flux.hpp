#pragma once

#include <functional>
#include <string>

namespace hodg {

/// Which side each trace takes. The schemes carry two flux families: the
/// auxiliary-variable family (v/w and their derivatives, tilde/hat fluxes in
/// the time equation) and the solution family (u and its derivatives in the
/// auxiliary equations). Stability requires the paired levels to come from
/// opposite sides; the pairing for an order-l form matches aux level l-1-m
/// with solution level m.
enum class AlternatingChoice {
  Choice1,  // aux all minus, solution all plus
  Choice2,  // aux all plus, solution all minus
  Choice3,  // aux minus on even derivative levels, solution mirrored
  Choice4,  // mirror of Choice3
  Theta,    // aux: theta weight on minus; solution: theta weight on plus
};

enum class MonotoneKind { UpwindMinus, LaxFriedrichs, CentralConservative };

enum class FluxFamily { Aux, Solution };

/// Side of the first-order auxiliary flux v-hat in odd-order schemes. Auto
/// resolves against the problem's sign convention so the interface term stays
/// dissipative.
enum class UpwindSide { Auto, Minus, Plus };

struct FluxConfig {
  AlternatingChoice choice = AlternatingChoice::Choice1;
  double theta = 1.0;  // used when choice == Theta; 1 reproduces Choice1
  MonotoneKind monotone = MonotoneKind::UpwindMinus;
  double lf_alpha = 0.0;  // Lax-Friedrichs dissipation, >= 0
  UpwindSide vhat = UpwindSide::Auto;

  /// Weight on the minus-side trace for the given family and derivative
  /// level within an order-l form.
  double minus_weight(FluxFamily family, int level, int order_l) const;

  /// Single-valued numerical trace per the configured choice.
  double select(FluxFamily family, int level, int order_l, double minus, double plus) const;

  void validate() const;

  /// Parses comma-separated tokens: alt1..alt4, theta:<value>, upwind,
  /// lf:<alpha>, central. Unknown tokens raise std::invalid_argument.
  static FluxConfig parse(const std::string& spec);
  std::string to_string() const;
};

/// select_trace as a free operation over an explicit config.
double select_trace(const FluxConfig& config, FluxFamily family, int level, int order_l,
                    double minus, double plus);

/// Scalar flux function together with its antiderivative F (entropy
/// potential, F' = f). The antiderivative is required by the conservative
/// central flux and by the interface dissipation.
struct ScalarFlux {
  std::function<double(double)> f;
  std::function<double(double)> antiderivative;

  /// Builds the antiderivative by adaptive Simpson quadrature from 0 when no
  /// closed form is supplied.
  static ScalarFlux with_numeric_antiderivative(std::function<double(double)> f);
};

/// Monotone interface flux: UpwindMinus -> f(v-); LaxFriedrichs ->
/// mean(f) - alpha/2 [v]; CentralConservative -> (F(v+)-F(v-))/(v+-v-) with
/// the consistent limit f(v) under a relative jump threshold of 1e-12.
double monotone_flux(MonotoneKind kind, const ScalarFlux& flux, double alpha, double v_minus,
                     double v_plus);

/// Interface entropy production Theta = F(v+) - F(v-) + fhat (v- - v+);
/// nonnegative for monotone fluxes, identically zero for the conservative
/// central flux.
double interface_dissipation(MonotoneKind kind, const ScalarFlux& flux, double alpha,
                             double v_minus, double v_plus);

}  // namespace hodg
