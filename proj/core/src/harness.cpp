#include "hodg/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hodg/basis.hpp"
#include "hodg/projection.hpp"

#ifndef HODG_GIT_REVISION
#define HODG_GIT_REVISION "unknown"
#endif

namespace hodg {

double empirical_order(double e_coarse, double e_fine, int n_coarse, int n_fine) {
  return std::log(e_coarse / e_fine) / std::log(static_cast<double>(n_fine) / n_coarse);
}

std::array<double, 3> error_norms(const DGField1D& u, const ExactSolution1D& exact, double t) {
  const auto& mesh = u.mesh();
  const int k = u.degree();
  const auto& quad = gauss_rule(k + 3);

  double l1 = 0.0, l2 = 0.0, linf = 0.0;
  const double samples[6] = {-1.0, -0.6, -0.2, 0.2, 0.6, 1.0};
  for (int j = 0; j < mesh.num_cells(); ++j) {
    const double xc = mesh.cell_center(j);
    const double half_h = 0.5 * mesh.cell_width(j);
    for (int g = 0; g < quad.size(); ++g) {
      const double x = xc + half_h * quad.points[g];
      const double e = u.eval_ref(j, quad.points[g]) - exact.deriv(0, x, t);
      l1 += half_h * quad.weights[g] * std::abs(e);
      l2 += half_h * quad.weights[g] * e * e;
      linf = std::max(linf, std::abs(e));
    }
    for (double xi : samples) {
      const double x = xc + half_h * xi;
      linf = std::max(linf, std::abs(u.eval_ref(j, xi) - exact.deriv(0, x, t)));
    }
  }
  return {l1, std::sqrt(l2), linf};
}

std::array<double, 3> error_norms(const DGField2D& u, const ExactSolution2D& exact, double t) {
  const auto& mx = u.mesh().x();
  const auto& my = u.mesh().y();
  const int k = u.degree();
  const auto& quad = gauss_rule(k + 3);

  std::vector<double> pts(quad.points);
  pts.insert(pts.end(), {-1.0, 1.0});

  double l1 = 0.0, l2 = 0.0, linf = 0.0;
  for (int ci = 0; ci < mx.num_cells(); ++ci) {
    const double xc = mx.cell_center(ci), hhx = 0.5 * mx.cell_width(ci);
    for (int cj = 0; cj < my.num_cells(); ++cj) {
      const double yc = my.cell_center(cj), hhy = 0.5 * my.cell_width(cj);
      for (int gx = 0; gx < quad.size(); ++gx) {
        for (int gy = 0; gy < quad.size(); ++gy) {
          const double x = xc + hhx * quad.points[gx];
          const double y = yc + hhy * quad.points[gy];
          const double e = u.eval_ref(ci, cj, quad.points[gx], quad.points[gy]) -
                           exact.deriv(0, 0, x, y, t);
          const double w = hhx * hhy * quad.weights[gx] * quad.weights[gy];
          l1 += w * std::abs(e);
          l2 += w * e * e;
        }
      }
      for (double xi : pts)
        for (double eta : pts) {
          const double x = xc + hhx * xi, y = yc + hhy * eta;
          linf = std::max(linf,
                          std::abs(u.eval_ref(ci, cj, xi, eta) - exact.deriv(0, 0, x, y, t)));
        }
    }
  }
  return {l1, std::sqrt(l2), linf};
}

DGField1D initial_condition(const ProblemSpec& problem, const Mesh1D& mesh, int degree) {
  if (!problem.exact) throw std::invalid_argument("initial_condition: no exact solution");
  const auto& exact = *problem.exact;
  ScalarFunc1D u0{[&exact](int d, double x) { return exact.deriv(d, x, 0.0); }};
  const ProjectionKind kind =
      (problem.order == 4 && degree >= 1) ? ProjectionKind::P1Plus : ProjectionKind::L2;
  return project_1d(kind, u0, mesh, degree);
}

DGField2D initial_condition_2d(const ProblemSpec& problem, const Mesh2D& mesh, int degree) {
  if (!problem.exact2d) throw std::invalid_argument("initial_condition_2d: no exact solution");
  const auto& exact = *problem.exact2d;
  ScalarFunc2D u0{[&exact](int dx, int dy, double x, double y) {
    return exact.deriv(dx, dy, x, y, 0.0);
  }};
  const ProjectionKind kind = degree >= 1 ? ProjectionKind::Pi2dPlus : ProjectionKind::L2;
  return project_2d(kind, u0, mesh, degree);
}

ProblemSpec resolve_problem(const StudyConfig& config) {
  if (config.problem == "custom") return linear_problem(config.custom_order, config.custom_sign);
  return example_problem(config.problem);
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt_err(double v) {
  std::ostringstream ss;
  ss << std::scientific << std::setprecision(2) << std::uppercase << v;
  return ss.str();
}

std::string fmt_order(double v) {
  if (std::isnan(v)) return "--";
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(2) << v;
  return ss.str();
}

/// Exact auxiliary targets per scheme: the fields the error theorems bound.
struct AuxExact {
  std::function<double(double, double)> w;
  std::function<double(double, double)> v;  // may be empty
};

AuxExact aux_exact(const ProblemSpec& problem) {
  const auto& e = *problem.exact;
  AuxExact ax;
  if (problem.order == 4) {
    if (problem.kind == NonlinearityKind::FourthB) {
      // v = b(u) u_xx; w = u_xx.
      ax.w = [&e](double x, double t) { return e.deriv(2, x, t); };
      ax.v = [&e, &problem](double x, double t) {
        return problem.fourth.b(e.deriv(0, x, t)) * e.deriv(2, x, t);
      };
    } else {
      ax.w = [&e](double x, double t) { return e.deriv(2, x, t); };
    }
    return ax;
  }
  if (problem.order == 5) {
    ax.v = [&e](double x, double t) { return e.deriv(2, x, t); };
    if (problem.kind == NonlinearityKind::FifthF) {
      // w = f(v)_x = f'(v) v_x.
      ax.w = [&e, &problem](double x, double t) {
        return problem.fifth.df(e.deriv(2, x, t)) * e.deriv(3, x, t);
      };
    } else {
      ax.w = [&e](double x, double t) { return e.deriv(3, x, t); };
    }
    return ax;
  }
  if (problem.order % 2 == 0) {
    const int l = problem.order / 2;
    ax.w = [&e, l](double x, double t) { return e.deriv(l, x, t); };
  } else {
    const int l = (problem.order - 1) / 2;
    ax.v = [&e, l](double x, double t) { return e.deriv(l, x, t); };
    ax.w = [&e, l](double x, double t) { return e.deriv(l + 1, x, t); };
  }
  return ax;
}

double field_l2_error(const DGField1D& f, const std::function<double(double, double)>& exact,
                      double t) {
  ExactSolution1D wrap{[&exact](int, double x, double tt) { return exact(x, tt); },
                       [](double, double) { return 0.0; }};
  return error_norms(f, wrap, t)[1];
}

nlohmann::json table_json(const ConvergenceTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json row;
    row["N"] = r.n;
    row["L1"] = r.error[0];
    row["L2"] = r.error[1];
    row["Linf"] = r.error[2];
    if (!std::isnan(r.order[1])) {
      row["L1_order"] = r.order[0];
      row["L2_order"] = r.order[1];
      row["Linf_order"] = r.order[2];
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

void ConvergenceTable::to_csv(std::ostream& out) const {
  const bool aux = !rows.empty() && rows.front().w_error.has_value();
  const bool aux_v = !rows.empty() && rows.front().v_error.has_value();
  out << "N,L1,order,L2,order,Linf,order";
  if (aux) out << ",w_L2,order";
  if (aux_v) out << ",v_L2,order";
  out << "\n";
  out << std::scientific << std::setprecision(10);
  for (const auto& r : rows) {
    const auto ord = [&](double v) -> std::string {
      if (std::isnan(v)) return "";
      std::ostringstream ss;
      ss << std::fixed << std::setprecision(4) << v;
      return ss.str();
    };
    out << r.n;
    for (int i = 0; i < 3; ++i) out << "," << r.error[i] << "," << ord(r.order[i]);
    if (aux) out << "," << *r.w_error << "," << ord(r.w_order.value_or(kNan));
    if (aux_v) out << "," << *r.v_error << "," << ord(r.v_order.value_or(kNan));
    out << "\n";
  }
}

void ConvergenceTable::to_text(std::ostream& out) const {
  const bool aux = !rows.empty() && rows.front().w_error.has_value();
  out << std::setw(6) << label << std::setw(10) << "N" << std::setw(12) << "L1" << std::setw(8)
      << "order" << std::setw(12) << "L2" << std::setw(8) << "order" << std::setw(12) << "Linf"
      << std::setw(8) << "order";
  if (aux) out << std::setw(12) << "w_L2" << std::setw(8) << "order";
  out << "\n";
  for (const auto& r : rows) {
    out << std::setw(6) << "" << std::setw(10) << r.n;
    for (int i = 0; i < 3; ++i)
      out << std::setw(12) << fmt_err(r.error[i]) << std::setw(8) << fmt_order(r.order[i]);
    if (aux)
      out << std::setw(12) << fmt_err(*r.w_error) << std::setw(8)
          << fmt_order(r.w_order.value_or(kNan));
    out << "\n";
  }
}

ConvergenceTable run_study(const StudyConfig& config) {
  if (config.meshes.size() < 1) throw std::invalid_argument("run_study: empty mesh ladder");
  for (std::size_t i = 1; i < config.meshes.size(); ++i)
    if (config.meshes[i] <= config.meshes[i - 1])
      throw std::invalid_argument("run_study: mesh ladder must be strictly increasing");

  const ProblemSpec problem = resolve_problem(config);
  const auto t_start = std::chrono::steady_clock::now();

  ConvergenceTable table;
  table.label = (problem.dimension == 2 ? "Q" : "P") + std::to_string(config.degree);

  SchemeOptions opts;
  opts.quad_pts = config.quad_pts;

  for (std::size_t level = 0; level < config.meshes.size(); ++level) {
    const int n = config.meshes[level];
    ErrorRow row;
    row.n = n;
    row.order = {kNan, kNan, kNan};
    try {
      if (problem.dimension == 1) {
        const Mesh1D mesh =
            Mesh1D::build(n, problem.domain, config.perturbation, config.seed + level);
        const DGField1D u0 = initial_condition(problem, mesh, config.degree);
        const IntegrateResult1D res =
            integrate(problem, u0, config.t_final, config.sdc, config.flux, opts);
        row.error = error_norms(res.u, *problem.exact, config.t_final);
        if (config.aux_errors) {
          const AuxExact ax = aux_exact(problem);
          row.w_error = field_l2_error(res.aux.w, ax.w, config.t_final);
          if (res.aux.v && ax.v) row.v_error = field_l2_error(*res.aux.v, ax.v, config.t_final);
        }
      } else {
        const Mesh2D mesh = Mesh2D::build(n, n, problem.domain, problem.domain,
                                          config.perturbation, config.seed + level);
        const DGField2D u0 = initial_condition_2d(problem, mesh, config.degree);
        const FluxChoice2D choice = config.flux.choice == AlternatingChoice::Choice2
                                        ? FluxChoice2D::AltMinusPlus
                                        : FluxChoice2D::AltPlusMinus;
        const IntegrateResult2D res = integrate_2d(u0, config.t_final, config.sdc, choice);
        row.error = error_norms(res.u, *problem.exact2d, config.t_final);
        if (config.aux_errors) {
          const auto& e = *problem.exact2d;
          ExactSolution2D lap{[&e](int, int, double x, double y, double t) {
                                return e.deriv(2, 0, x, y, t) + e.deriv(0, 2, x, y, t);
                              },
                              [](double, double, double) { return 0.0; }};
          row.w_error = error_norms(res.w, lap, config.t_final)[1];
        }
      }
    } catch (const std::exception& err) {
      throw std::runtime_error("run_study: level N = " + std::to_string(n) +
                               " failed: " + err.what());
    }

    if (level > 0) {
      const auto& prev = table.rows.back();
      for (int i = 0; i < 3; ++i)
        row.order[i] = empirical_order(prev.error[i], row.error[i], prev.n, row.n);
      if (row.w_error && prev.w_error)
        row.w_order = empirical_order(*prev.w_error, *row.w_error, prev.n, row.n);
      if (row.v_error && prev.v_error)
        row.v_order = empirical_order(*prev.v_error, *row.v_error, prev.n, row.n);
    }
    table.rows.push_back(row);
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  if (!config.out_csv.empty()) {
    std::ofstream out(config.out_csv);
    if (!out) throw std::runtime_error("run_study: cannot open " + config.out_csv);
    table.to_csv(out);
  }
  if (!config.out_manifest.empty()) {
    nlohmann::json manifest;
    manifest["problem"] = config.problem;
    manifest["degree"] = config.degree;
    manifest["meshes"] = config.meshes;
    manifest["flux"] = config.flux.to_string();
    manifest["t_final"] = config.t_final;
    manifest["perturbation"] = config.perturbation;
    manifest["seed"] = config.seed;
    manifest["sdc"] = {{"nodes", config.sdc.nodes},
                       {"sweeps", config.sdc.sweeps},
                       {"courant", config.sdc.courant},
                       {"dt_fixed", config.sdc.dt_fixed},
                       {"min_steps", config.sdc.min_steps}};
    manifest["config_hash"] =
        std::hash<std::string>{}(manifest.dump());  // hash of the canonical config
    manifest["wall_time_s"] = wall;
    manifest["commit"] = HODG_GIT_REVISION;
    manifest["rows"] = table_json(table);
    std::ofstream out(config.out_manifest);
    if (!out) throw std::runtime_error("run_study: cannot open " + config.out_manifest);
    out << manifest.dump(2) << "\n";
  }
  return table;
}

std::string report_to_json(const SuiteReport& report) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["passed"] = report.passed;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks)
    j["checks"].push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"value", c.value},
                           {"threshold", c.threshold}});
  return j.dump(2);
}

void energy_trace_to_csv(const std::vector<EnergySample>& trace, std::ostream& out) {
  out << "step,t,energy,dissipation_increment\n";
  out << std::scientific << std::setprecision(12);
  for (const auto& s : trace)
    out << s.step << "," << s.t << "," << s.energy << "," << s.dissipation_increment << "\n";
}

}  // namespace hodg
