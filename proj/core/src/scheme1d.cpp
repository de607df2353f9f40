#include "hodg/scheme1d.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodg/basis.hpp"
#include "hodg/projection.hpp"

namespace hodg {

namespace {

void check_degree(const ProblemSpec& problem, int degree) {
  const int need = problem.min_degree();
  if (degree < need)
    throw std::invalid_argument("scheme1d: order " + std::to_string(problem.order) +
                                " requires polynomial degree k >= " + std::to_string(need));
}

int quad_points(const SchemeOptions& opts, int degree) {
  return opts.quad_pts > 0 ? opts.quad_pts : degree + 2;
}

/// Single-valued numerical traces of `field` for one flux family: per
/// interface f and derivative level r < l, the configured blend of the two
/// one-sided limits.
std::vector<double> flux_values(const DGField1D& field, int l, FluxFamily family,
                                const FluxConfig& config) {
  const TraceData1D td = traces(field, l - 1);
  const int n = field.mesh().num_interfaces();
  std::vector<double> out(static_cast<std::size_t>(n) * l);
  for (int f = 0; f < n; ++f)
    for (int r = 0; r < l; ++r)
      out[f * l + r] = config.select(family, r, l, td.left(f, r), td.right(f, r));
  return out;
}

/// Ultra-weak form of order l: for every cell j and test mode b accumulates
///   A(j,b) = -(-1)^l (field, q^(l))_j
///            + sum_m (-1)^{m+1} [ flux^{l-1-m} q^{(m)} ]_{faces of j}
/// and writes out = base + scale * M^{-1} A. flux holds the single-valued
/// traces per interface and level (as from flux_values).
void add_ultraweak(const DGField1D& field, int l, const std::vector<double>& flux, double scale,
                   DGField1D& out) {
  const auto& mesh = field.mesh();
  const auto& ref = reference_element(field.degree());
  const int n_cells = mesh.num_cells();
  const int n = field.num_modes();
  const double vol_sign = (l % 2 == 0) ? -1.0 : 1.0;  // -(-1)^l

  std::vector<double> functional(n);
  for (int j = 0; j < n_cells; ++j) {
    const double h = mesh.cell_width(j);
    const double inv_h2 = 2.0 / h;
    const int face_l = j;                  // interface at the cell's left end
    const int face_r = (j + 1) % n_cells;  // interface at the right end

    // Volume term through the exact modal derivative matrices.
    std::fill(functional.begin(), functional.end(), 0.0);
    if (l <= field.degree()) {
      const auto& dl = ref.deriv_matrix(l);
      const double vol_scale = vol_sign * std::pow(inv_h2, l - 1);
      const double* c = field.cell_coeffs(j);
      for (int a = 0; a < n; ++a) {
        const double ca = c[a] * ref.mass(a) * vol_scale;
        if (ca == 0.0) continue;
        for (int b = 0; b < n; ++b) functional[b] += ca * dl[a * n + b];
      }
    }

    // Face terms: level l-1-m flux against the m-th test derivative.
    double test_scale = 1.0;
    for (int m = 0; m < l; ++m) {
      const double sgn = (m % 2 == 0) ? -1.0 : 1.0;  // (-1)^{m+1}
      const double fr = flux[face_r * l + (l - 1 - m)];
      const double fl = flux[face_l * l + (l - 1 - m)];
      for (int b = 0; b < n; ++b)
        functional[b] += sgn * test_scale *
                         (fr * ref.endpoint_value(b, m, true) - fl * ref.endpoint_value(b, m, false));
      test_scale *= inv_h2;
    }

    for (int b = 0; b < n; ++b) out.coeff(j, b) += scale * functional[b] / (0.5 * h * ref.mass(b));
  }
}

DGField1D ultraweak_solve(const DGField1D& field, int l, FluxFamily family,
                          const FluxConfig& config, double scale) {
  DGField1D out(field.mesh(), field.degree());
  add_ultraweak(field, l, flux_values(field, l, family, config), scale, out);
  return out;
}

ScalarFlux linear_flux() {
  ScalarFlux s;
  s.f = [](double v) { return v; };
  s.antiderivative = [](double v) { return 0.5 * v * v; };
  return s;
}

const ScalarFlux& problem_flux(const ProblemSpec& problem) {
  static const ScalarFlux identity = linear_flux();
  return problem.kind == NonlinearityKind::FifthF ? problem.fifth.flux : identity;
}

/// Quadrature projection of the pointwise product b(u_h) w_h onto V_h, with
/// the nonnegativity of b checked at the quadrature points.
DGField1D project_product(const ProblemSpec& problem, const DGField1D& u, const DGField1D& w,
                          int n_q) {
  const auto& mesh = u.mesh();
  const auto& quad = gauss_rule(n_q);
  const int n = u.num_modes();
  DGField1D v(mesh, u.degree());

  std::vector<double> ltab(quad.size() * n);
  for (int g = 0; g < quad.size(); ++g)
    for (int m = 0; m < n; ++m) ltab[g * n + m] = legendre_eval(m, quad.points[g]).value;

  for (int j = 0; j < mesh.num_cells(); ++j) {
    for (int g = 0; g < quad.size(); ++g) {
      double ug = 0.0, wg = 0.0;
      for (int m = 0; m < n; ++m) {
        ug += u.coeff(j, m) * ltab[g * n + m];
        wg += w.coeff(j, m) * ltab[g * n + m];
      }
      const double bg = problem.fourth.b(ug);
      if (bg < 0.0)
        throw std::runtime_error("scheme1d: b(u_h) < 0 at a quadrature point (cell " +
                                 std::to_string(j) + ")");
      const double pg = quad.weights[g] * bg * wg;
      for (int m = 0; m < n; ++m) v.coeff(j, m) += pg * ltab[g * n + m] * 0.5 * (2 * m + 1);
    }
  }
  return v;
}

/// Fifth-order middle equation: w = -M^{-1}[ (f(v), s_x) - fhat s^- + fhat s^+ ]
/// with a monotone interface flux evaluated from the one-sided limits of v.
DGField1D fifth_w_from_v(const ProblemSpec& problem, const DGField1D& v, const FluxConfig& config,
                         int n_q) {
  const auto& mesh = v.mesh();
  const auto& ref = reference_element(v.degree());
  const auto& quad = gauss_rule(n_q);
  const int n = v.num_modes();
  const int n_cells = mesh.num_cells();
  const ScalarFlux& flux = problem_flux(problem);

  const TraceData1D tv = traces(v, 0);
  std::vector<double> fhat(n_cells);
  for (int f = 0; f < n_cells; ++f)
    fhat[f] = monotone_flux(config.monotone, flux, config.lf_alpha, tv.left(f, 0), tv.right(f, 0));

  std::vector<double> ltab(quad.size() * n), dltab(quad.size() * n);
  for (int g = 0; g < quad.size(); ++g)
    for (int m = 0; m < n; ++m) {
      const auto e = legendre_eval(m, quad.points[g]);
      ltab[g * n + m] = e.value;
      dltab[g * n + m] = e.derivative;
    }

  DGField1D w(mesh, v.degree());
  std::vector<double> functional(n);
  for (int j = 0; j < n_cells; ++j) {
    std::fill(functional.begin(), functional.end(), 0.0);
    for (int g = 0; g < quad.size(); ++g) {
      double vg = 0.0;
      for (int m = 0; m < n; ++m) vg += v.coeff(j, m) * ltab[g * n + m];
      const double fg = quad.weights[g] * flux.f(vg);
      for (int b = 0; b < n; ++b) functional[b] -= fg * dltab[g * n + b];
    }
    const int face_l = j, face_r = (j + 1) % n_cells;
    for (int b = 0; b < n; ++b) {
      functional[b] += fhat[face_r] * ref.endpoint_value(b, 0, true) -
                       fhat[face_l] * ref.endpoint_value(b, 0, false);
      w.coeff(j, b) = functional[b] / (0.5 * mesh.cell_width(j) * ref.mass(b));
    }
  }
  return w;
}

bool resolved_vhat_minus(const ProblemSpec& problem, const FluxConfig& config) {
  if (config.vhat == UpwindSide::Auto) return problem.vhat_minus();
  return config.vhat == UpwindSide::Minus;
}

DGField1D odd_w_from_v(const DGField1D& v, bool take_minus) {
  const auto& mesh = v.mesh();
  const int n_cells = mesh.num_cells();
  const TraceData1D tv = traces(v, 0);
  std::vector<double> vhat(n_cells);
  for (int f = 0; f < n_cells; ++f) vhat[f] = take_minus ? tv.left(f, 0) : tv.right(f, 0);
  DGField1D w(mesh, v.degree());
  add_ultraweak(v, 1, vhat, -1.0, w);
  return w;
}

AuxFields solve_aux_fourth(const ProblemSpec& problem, const DGField1D& u,
                           const FluxConfig& config, const SchemeOptions& opts) {
  // (3.9): w_h = -M^{-1} A_2(u_h) with solution-family traces.
  DGField1D w = ultraweak_solve(u, 2, FluxFamily::Solution, config, -1.0);
  if (problem.kind == NonlinearityKind::FourthB) {
    DGField1D v = project_product(problem, u, w, quad_points(opts, u.degree()));
    return {std::move(w), std::move(v)};
  }
  return {std::move(w), std::nullopt};
}

AuxFields solve_aux_fifth(const ProblemSpec& problem, const DGField1D& u, const FluxConfig& config,
                          const SchemeOptions& opts) {
  DGField1D v = ultraweak_solve(u, 2, FluxFamily::Solution, config, -1.0);
  DGField1D w = fifth_w_from_v(problem, v, config, quad_points(opts, u.degree()));
  return {std::move(w), std::move(v)};
}

AuxFields solve_aux_general(const ProblemSpec& problem, const DGField1D& u,
                            const FluxConfig& config) {
  if (problem.kind != NonlinearityKind::Linear)
    throw std::invalid_argument("scheme1d: the general-order path is linear only");
  if (problem.order % 2 == 0) {
    const int l = problem.order / 2;
    DGField1D w = ultraweak_solve(u, l, FluxFamily::Solution, config, -1.0);
    return {std::move(w), std::nullopt};
  }
  const int l = (problem.order - 1) / 2;
  DGField1D v = ultraweak_solve(u, l, FluxFamily::Solution, config, -1.0);
  DGField1D w = odd_w_from_v(v, resolved_vhat_minus(problem, config));
  return {std::move(w), std::move(v)};
}

void add_source(const ProblemSpec& problem, double t, DGField1D& dudt) {
  if (!problem.manufactured) return;
  const DGField1D g = manufactured_source(problem, t, dudt.mesh(), dudt.degree());
  for (int i = 0; i < dudt.size(); ++i) dudt.coeffs()[i] += g.coeffs()[i];
}

}  // namespace

AuxFields solve_auxiliaries(const ProblemSpec& problem, const DGField1D& u,
                            const FluxConfig& config, const SchemeOptions& opts) {
  problem.validate();
  config.validate();
  check_degree(problem, u.degree());
  switch (problem.order) {
    case 4:
      return solve_aux_fourth(problem, u, config, opts);
    case 5:
      return solve_aux_fifth(problem, u, config, opts);
    default:
      return solve_aux_general(problem, u, config);
  }
}

Residual1D spatial_residual(const ProblemSpec& problem, const DGField1D& u,
                            const FluxConfig& config, double t, const SchemeOptions& opts) {
  problem.validate();
  config.validate();
  check_degree(problem, u.degree());

  if (problem.order == 4) {
    AuxFields aux = solve_aux_fourth(problem, u, config, opts);
    // (3.7): u_t = M^{-1} A_2(v_h) with aux-family traces; v = w linearly.
    const DGField1D& v = aux.v ? *aux.v : aux.w;
    DGField1D dudt = ultraweak_solve(v, 2, FluxFamily::Aux, config, 1.0);
    add_source(problem, t, dudt);
    return {std::move(dudt), std::move(aux)};
  }
  if (problem.order == 5) {
    AuxFields aux = solve_aux_fifth(problem, u, config, opts);
    DGField1D dudt = ultraweak_solve(aux.w, 2, FluxFamily::Aux, config, 1.0);
    add_source(problem, t, dudt);
    return {std::move(dudt), std::move(aux)};
  }
  return spatial_residual_general(problem, u, config, t, opts);
}

Residual1D spatial_residual_general(const ProblemSpec& problem, const DGField1D& u,
                                    const FluxConfig& config, double t,
                                    const SchemeOptions& opts) {
  (void)opts;
  problem.validate();
  config.validate();
  check_degree(problem, u.degree());

  AuxFields aux = solve_aux_general(problem, u, config);
  const bool even = problem.order % 2 == 0;
  const int l = even ? problem.order / 2 : (problem.order - 1) / 2;
  const double scale = even ? (l % 2 == 0 ? 1.0 : -1.0)  // (-1)^l
                            : problem.pde_sign();
  DGField1D dudt = ultraweak_solve(aux.w, l, FluxFamily::Aux, config, scale);
  add_source(problem, t, dudt);
  return {std::move(dudt), std::move(aux)};
}

DGField1D manufactured_source(const ProblemSpec& problem, double t, const Mesh1D& mesh,
                              int degree) {
  if (!problem.exact)
    throw std::invalid_argument("manufactured_source: problem has no exact solution");
  ScalarFunc1D g{[&problem, t](int deriv, double x) {
    if (deriv != 0) throw std::invalid_argument("manufactured_source: derivative not available");
    return problem.source_value(x, t);
  }};
  return project_1d(ProjectionKind::L2, g, mesh, degree);
}

double scheme_dissipation(const ProblemSpec& problem, const DGField1D& u, const Residual1D& r,
                          const FluxConfig& config, const SchemeOptions& opts) {
  if (problem.order == 4) {
    if (problem.kind == NonlinearityKind::Linear) {
      const double nw = norm_modal_l2(r.aux.w);
      return nw * nw;
    }
    // Quadrature integral of b(u_h) w_h^2 with the scheme's own rule.
    const auto& mesh = u.mesh();
    const auto& quad = gauss_rule(quad_points(opts, u.degree()));
    double acc = 0.0;
    for (int j = 0; j < mesh.num_cells(); ++j) {
      for (int g = 0; g < quad.size(); ++g) {
        const double ug = u.eval_ref(j, quad.points[g]);
        const double wg = r.aux.w.eval_ref(j, quad.points[g]);
        acc += 0.5 * mesh.cell_width(j) * quad.weights[g] * problem.fourth.b(ug) * wg * wg;
      }
    }
    return acc;
  }
  if (problem.order == 5) {
    const TraceData1D tv = traces(*r.aux.v, 0);
    const ScalarFlux& flux = problem_flux(problem);
    double acc = 0.0;
    for (int f = 0; f < tv.num_interfaces(); ++f)
      acc += interface_dissipation(config.monotone, flux, config.lf_alpha, tv.left(f, 0),
                                   tv.right(f, 0));
    return acc;
  }
  if (problem.order % 2 == 0) {
    const double nw = norm_modal_l2(r.aux.w);
    return nw * nw;
  }
  const TraceData1D tv = traces(*r.aux.v, 0);
  double acc = 0.0;
  for (int f = 0; f < tv.num_interfaces(); ++f) {
    const double jump = tv.jump(f, 0);
    acc += 0.5 * jump * jump;
  }
  const bool minus = resolved_vhat_minus(problem, config);
  return minus == problem.vhat_minus() ? acc : -acc;
}

}  // namespace hodg
