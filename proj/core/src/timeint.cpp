#include "hodg/timeint.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "hodg/basis.hpp"

namespace hodg {

int SDCConfig::formal_order() const { return std::min(2 * nodes - 2, sweeps + 1); }

double SDCConfig::resolve_dt(double h, double t_final) const {
  if (t_final <= 0.0) throw std::invalid_argument("SDCConfig: t_final must be > 0");
  double base = dt_fixed > 0.0 ? dt_fixed : std::min(courant * h, t_final / min_steps);
  if (base <= 0.0) throw std::invalid_argument("SDCConfig: step policy yields no positive step");
  const int n = std::max(1, static_cast<int>(std::ceil(t_final / base - 1e-12)));
  return t_final / n;
}

namespace {

using Vec = std::vector<double>;

double vec_norm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool has_nan(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return true;
  return false;
}

std::vector<double> lobatto_nodes(int n) {
  switch (n) {
    case 2:
      return {0.0, 1.0};
    case 3:
      return {0.0, 0.5, 1.0};
    case 4: {
      const double c = 0.5 / std::sqrt(5.0);
      return {0.0, 0.5 - c, 0.5 + c, 1.0};
    }
    case 5: {
      const double c = 0.5 * std::sqrt(3.0 / 7.0);
      return {0.0, 0.5 - c, 0.5, 0.5 + c, 1.0};
    }
    case 6: {
      const double s7 = 2.0 * std::sqrt(7.0);
      const double a = 0.5 * std::sqrt((7.0 - s7) / 21.0);
      const double b = 0.5 * std::sqrt((7.0 + s7) / 21.0);
      return {0.0, 0.5 - b, 0.5 - a, 0.5 + a, 0.5 + b, 1.0};
    }
    default:
      throw std::invalid_argument("SDCConfig: nodes must be in 2..6");
  }
}

struct SdcTableau {
  std::vector<double> tau;               // collocation nodes on [0,1]
  std::vector<std::vector<double>> s;    // s[m][l] = int_{tau_m}^{tau_{m+1}} ell_l
  int substeps() const { return static_cast<int>(tau.size()) - 1; }
};

SdcTableau make_tableau(int nodes) {
  SdcTableau tb;
  tb.tau = lobatto_nodes(nodes);
  const int n = nodes;
  const auto& quad = gauss_rule(n + 2);

  const auto lagrange = [&](int l, double s) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      if (i == l) continue;
      p *= (s - tb.tau[i]) / (tb.tau[l] - tb.tau[i]);
    }
    return p;
  };

  tb.s.assign(n - 1, std::vector<double>(n, 0.0));
  for (int m = 0; m + 1 < n; ++m) {
    const double a = tb.tau[m], b = tb.tau[m + 1];
    for (int l = 0; l < n; ++l) {
      double v = 0.0;
      for (int g = 0; g < quad.size(); ++g)
        v += 0.5 * (b - a) * quad.weights[g] *
             lagrange(l, 0.5 * (a + b) + 0.5 * (b - a) * quad.points[g]);
      tb.s[m][l] = v;
    }
  }
  return tb;
}

struct SdcCallbacks {
  // out = f(u, t)
  std::function<void(const Vec&, double, Vec&)> rhs;
  // Solve u - a f(u, t) = r; u carries the initial guess.
  std::function<void(double a, double t, const Vec& r, Vec& u)> implicit_solve;
};

/// One SDC step from t0 to t0+dt: a backward-Euler (or forward-Euler) ladder
/// over the collocation nodes followed by correction sweeps against the
/// spectral integration matrix.
void sdc_step(const SdcTableau& tb, const SDCConfig& cfg, double t0, double dt, Vec& u,
              const SdcCallbacks& cb) {
  const int m_sub = tb.substeps();
  const int dim = static_cast<int>(u.size());
  const bool implicit = cfg.mode == SDCConfig::SweepMode::ImplicitEuler;

  std::vector<Vec> us(m_sub + 1, u), fs(m_sub + 1, Vec(dim));
  cb.rhs(us[0], t0, fs[0]);

  for (int m = 1; m <= m_sub; ++m) {
    const double a = dt * (tb.tau[m] - tb.tau[m - 1]);
    const double tm = t0 + dt * tb.tau[m];
    us[m] = us[m - 1];
    if (implicit) {
      cb.implicit_solve(a, tm, us[m - 1], us[m]);
    } else {
      for (int i = 0; i < dim; ++i) us[m][i] = us[m - 1][i] + a * fs[m - 1][i];
    }
    cb.rhs(us[m], tm, fs[m]);
  }

  const int max_sweeps = cfg.sweep_tol > 0.0 ? cfg.max_sweeps : cfg.sweeps;
  std::vector<Vec> fp(m_sub + 1, Vec(dim));
  Vec rhs(dim), prev_end(dim);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int m = 0; m <= m_sub; ++m) fp[m] = fs[m];
    prev_end = us[m_sub];

    for (int m = 1; m <= m_sub; ++m) {
      const double a = dt * (tb.tau[m] - tb.tau[m - 1]);
      const double tm = t0 + dt * tb.tau[m];
      for (int i = 0; i < dim; ++i) {
        double acc = us[m - 1][i];
        for (int l = 0; l <= m_sub; ++l) acc += dt * tb.s[m - 1][l] * fp[l][i];
        rhs[i] = acc;
      }
      if (implicit) {
        for (int i = 0; i < dim; ++i) rhs[i] -= a * fp[m][i];
        cb.implicit_solve(a, tm, rhs, us[m]);
      } else {
        for (int i = 0; i < dim; ++i) us[m][i] = rhs[i] + a * (fs[m - 1][i] - fp[m - 1][i]);
      }
      cb.rhs(us[m], tm, fs[m]);
    }

    if (cfg.sweep_tol > 0.0) {
      double inc = 0.0;
      for (int i = 0; i < dim; ++i) inc += (us[m_sub][i] - prev_end[i]) * (us[m_sub][i] - prev_end[i]);
      if (std::sqrt(inc) < cfg.sweep_tol) break;
    }
  }
  u = us[m_sub];
}

using SpMat = Eigen::SparseMatrix<double>;
using SpLU = Eigen::SparseLU<SpMat>;

SpMat to_eigen(const LinearOperator& op) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(op.values().size());
  for (int r = 0; r < op.dim(); ++r)
    for (int i = op.row_ptr()[r]; i < op.row_ptr()[r + 1]; ++i)
      trip.emplace_back(r, op.cols()[i], op.values()[i]);
  SpMat m(op.dim(), op.dim());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

/// Factorization cache: one sparse LU per distinct substep size a, reused
/// across every step of the integration.
class ImplicitLinearSolver {
 public:
  explicit ImplicitLinearSolver(const LinearOperator& op) : matrix_(to_eigen(op)) {}

  void solve(double a, const Vec& rhs, Vec& out) {
    auto& slot = cache_[a];
    if (!slot) {
      SpMat system = -a * matrix_;
      for (int i = 0; i < system.rows(); ++i) system.coeffRef(i, i) += 1.0;
      system.makeCompressed();
      slot = std::make_unique<SpLU>();
      slot->compute(system);
      if (slot->info() != Eigen::Success)
        throw std::runtime_error("timeint: sparse LU factorization failed");
    }
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), rhs.size());
    Eigen::VectorXd x = slot->solve(b);
    out.assign(x.data(), x.data() + x.size());
  }

  const SpMat& matrix() const { return matrix_; }

 private:
  SpMat matrix_;
  std::map<double, std::unique_ptr<SpLU>> cache_;
};

}  // namespace

void LinearOperator::apply(const double* x, double* y) const {
  for (int r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (int i = row_ptr_[r]; i < row_ptr_[r + 1]; ++i) s += vals_[i] * x[cols_[i]];
    y[r] = s;
  }
}

std::vector<double> LinearOperator::apply(const std::vector<double>& x) const {
  std::vector<double> y(rows_);
  apply(x.data(), y.data());
  return y;
}

LinearOperator LinearOperator::from_triplets(int dim, std::vector<std::array<double, 3>> t,
                                             int stencil) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });
  LinearOperator op;
  op.rows_ = dim;
  op.stencil_ = stencil;
  op.row_ptr_.assign(dim + 1, 0);
  for (const auto& e : t) ++op.row_ptr_[static_cast<int>(e[0]) + 1];
  for (int r = 0; r < dim; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
  op.cols_.resize(t.size());
  op.vals_.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    op.cols_[i] = static_cast<int>(t[i][1]);
    op.vals_[i] = t[i][2];
  }
  return op;
}

LinearOperator assemble_operator(const ProblemSpec& problem, const Mesh1D& mesh, int degree,
                                 const FluxConfig& config) {
  if (problem.kind != NonlinearityKind::Linear)
    throw std::invalid_argument("assemble_operator: problem must be linear");
  const int modes = degree + 1;
  const int n_cells = mesh.num_cells();
  const int dim = n_cells * modes;

  DGField1D probe(mesh, degree);
  // Manufactured sources are excluded: columns are residual differences
  // against the zero field.
  std::vector<double> base(dim, 0.0);
  if (problem.manufactured) {
    const Residual1D r0 = spatial_residual(problem, probe, config, 0.0);
    base = r0.dudt.coeffs();
  }

  std::vector<std::array<double, 3>> triplets;
  int stencil = 0;
  for (int col = 0; col < dim; ++col) {
    probe.coeffs()[col] = 1.0;
    const Residual1D r = spatial_residual(problem, probe, config, 0.0);
    probe.coeffs()[col] = 0.0;
    const int col_cell = col / modes;
    for (int row = 0; row < dim; ++row) {
      const double v = r.dudt.coeffs()[row] - base[row];
      if (v != 0.0) {
        triplets.push_back({static_cast<double>(row), static_cast<double>(col), v});
        const int d = std::abs(row / modes - col_cell);
        stencil = std::max(stencil, std::min(d, n_cells - d));
      }
    }
  }
  return LinearOperator::from_triplets(dim, std::move(triplets), stencil);
}

LinearOperator assemble_operator_2d(const Mesh2D& mesh, int degree, FluxChoice2D choice) {
  const int modes = degree + 1;
  const int nx = mesh.num_cells_x();
  const int ny = mesh.num_cells_y();
  const int block = modes * modes;
  const int dim = nx * ny * block;
  constexpr int kReach = 2;  // two ultra-weak Laplacian hops

  // Stride coloring: seeds of one color are at least 2*kReach+1 cells apart
  // in each direction (wrapped), so their responses cannot overlap.
  const auto stride_for = [](int n) {
    for (int s = 2 * kReach + 1; s < n; ++s)
      if (n % s == 0) return s;
    return n;
  };
  const int sx = stride_for(nx);
  const int sy = stride_for(ny);

  DGField2D probe(mesh, degree);
  std::vector<std::array<double, 3>> triplets;
  int stencil = 0;

  const auto flat = [&](int ci, int cj, int local) {
    return (ci * ny + cj) * block + local;
  };

  for (int ox = 0; ox < sx; ++ox) {
    for (int oy = 0; oy < sy; ++oy) {
      for (int local = 0; local < block; ++local) {
        for (int ci = ox; ci < nx; ci += sx)
          for (int cj = oy; cj < ny; cj += sy) probe.coeffs()[flat(ci, cj, local)] = 1.0;

        const Residual2D r = spatial_residual_2d(probe, choice);

        for (int ci = ox; ci < nx; ci += sx) {
          for (int cj = oy; cj < ny; cj += sy) {
            const int col = flat(ci, cj, local);
            for (int di = -kReach; di <= kReach; ++di) {
              for (int dj = -kReach; dj <= kReach; ++dj) {
                const int ri = (ci + di + nx) % nx;
                const int rj = (cj + dj + ny) % ny;
                for (int rl = 0; rl < block; ++rl) {
                  const double v = r.dudt.coeffs()[flat(ri, rj, rl)];
                  if (v != 0.0) {
                    triplets.push_back(
                        {static_cast<double>(flat(ri, rj, rl)), static_cast<double>(col), v});
                    stencil = std::max({stencil, std::abs(di), std::abs(dj)});
                  }
                }
              }
            }
            probe.coeffs()[col] = 0.0;
          }
        }
      }
    }
  }
  return LinearOperator::from_triplets(dim, std::move(triplets), stencil);
}

namespace {

struct StepLoop {
  int n_steps;
  double dt;
};

StepLoop plan_steps(const SDCConfig& sdc, double h, double t_final) {
  const double dt = sdc.resolve_dt(h, t_final);
  return {static_cast<int>(std::lround(t_final / dt)), dt};
}

}  // namespace

IntegrateResult1D integrate(const ProblemSpec& problem, const DGField1D& u0, double t_final,
                            const SDCConfig& sdc, const FluxConfig& flux,
                            const SchemeOptions& opts) {
  problem.validate();
  const auto& mesh = u0.mesh();
  const int degree = u0.degree();
  const auto [n_steps, dt] = plan_steps(sdc, mesh.h_max(), t_final);
  const SdcTableau tableau = make_tableau(sdc.nodes);
  const bool linear = problem.kind == NonlinearityKind::Linear;

  const auto energy_of = [&](const Vec& c) {
    double acc = 0.0;
    for (int j = 0; j < mesh.num_cells(); ++j)
      for (int m = 0; m <= degree; ++m) {
        const double v = c[j * (degree + 1) + m];
        acc += 0.5 * mesh.cell_width(j) * v * v * 2.0 / (2 * m + 1);
      }
    return acc;
  };

  const auto residual_of = [&](const Vec& c, double t, Vec& out) {
    DGField1D u(mesh, degree);
    u.coeffs() = c;
    out = spatial_residual(problem, u, flux, t, opts).dudt.coeffs();
  };

  IntegrateResult1D result{DGField1D(mesh, degree), {DGField1D(mesh, degree)}, {}, 0, 0};
  Vec state = u0.coeffs();

  SdcCallbacks cb;
  std::unique_ptr<ImplicitLinearSolver> lin;
  std::unique_ptr<LinearOperator> op;

  if (linear) {
    op = std::make_unique<LinearOperator>(assemble_operator(problem, mesh, degree, flux));
    lin = std::make_unique<ImplicitLinearSolver>(*op);
    const bool sourced = problem.manufactured;
    cb.rhs = [&, sourced](const Vec& c, double t, Vec& out) {
      out = op->apply(c);
      if (sourced) {
        const DGField1D g = manufactured_source(problem, t, mesh, degree);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += g.coeffs()[i];
      }
    };
    cb.implicit_solve = [&, sourced](double a, double t, const Vec& rhs, Vec& u) {
      if (sourced) {
        Vec r = rhs;
        const DGField1D g = manufactured_source(problem, t, mesh, degree);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += a * g.coeffs()[i];
        lin->solve(a, r, u);
      } else {
        lin->solve(a, rhs, u);
      }
    };
  }

  // Nonlinear path: the Jacobian is probed at the step start and reused for
  // every Newton solve within the step (modified Newton).
  struct NewtonContext {
    SpMat jac;  // dR/du
    std::map<double, std::unique_ptr<SpLU>> factors;
  } newton;

  const auto probe_jacobian = [&](const Vec& c, double t) {
    const int dim = static_cast<int>(c.size());
    Vec base(dim), pert(dim);
    residual_of(c, t, base);
    std::vector<Eigen::Triplet<double>> trip;
    Vec work = c;
    for (int col = 0; col < dim; ++col) {
      const double eps = 1.49e-8 * (1.0 + std::abs(c[col]));
      work[col] = c[col] + eps;
      residual_of(work, t, pert);
      work[col] = c[col];
      for (int row = 0; row < dim; ++row) {
        const double v = (pert[row] - base[row]) / eps;
        if (v != 0.0) trip.emplace_back(row, col, v);
      }
    }
    newton.jac.resize(dim, dim);
    newton.jac.setFromTriplets(trip.begin(), trip.end());
    newton.factors.clear();
  };

  long newton_iters = 0;
  int current_step = 0;
  if (!linear) {
    cb.rhs = residual_of;
    cb.implicit_solve = [&](double a, double t, const Vec& rhs, Vec& u) {
      auto& slot = newton.factors[a];
      if (!slot) {
        SpMat system = -a * newton.jac;
        for (int i = 0; i < system.rows(); ++i) system.coeffRef(i, i) += 1.0;
        system.makeCompressed();
        slot = std::make_unique<SpLU>();
        slot->compute(system);
        if (slot->info() != Eigen::Success)
          throw std::runtime_error("timeint: Newton matrix factorization failed");
      }
      const int dim = static_cast<int>(u.size());
      Vec f(dim), g(dim);
      for (int it = 0; it < sdc.newton_max_iter; ++it) {
        cb.rhs(u, t, f);
        double gnorm = 0.0;
        for (int i = 0; i < dim; ++i) {
          g[i] = u[i] - a * f[i] - rhs[i];
          gnorm += g[i] * g[i];
        }
        gnorm = std::sqrt(gnorm);
        ++newton_iters;
        if (gnorm <= sdc.newton_tol) return;
        Eigen::Map<const Eigen::VectorXd> gv(g.data(), dim);
        Eigen::VectorXd delta = slot->solve(gv);
        double dnorm = 0.0, unorm = 0.0;
        for (int i = 0; i < dim; ++i) {
          u[i] -= delta[i];
          dnorm += delta[i] * delta[i];
          unorm += u[i] * u[i];
        }
        // Increment at round-off: accept (the residual floor can sit just
        // above a tight absolute tolerance at fine meshes).
        if (std::sqrt(dnorm) <= 1e-14 * (1.0 + std::sqrt(unorm))) return;
      }
      throw std::runtime_error("timeint: Newton failed to converge at step " +
                               std::to_string(current_step) + ", t = " + std::to_string(t));
    };
  }

  double energy_prev = energy_of(state);
  result.energy_trace.push_back({0, 0.0, energy_prev, 0.0});
  for (int step = 0; step < n_steps; ++step) {
    current_step = step;
    const double t0 = step * dt;
    if (!linear) probe_jacobian(state, t0);
    sdc_step(tableau, sdc, t0, dt, state, cb);
    if (has_nan(state))
      throw std::runtime_error("timeint: NaN detected at step " + std::to_string(step + 1) +
                               ", t = " + std::to_string(t0 + dt));
    const double energy = energy_of(state);
    result.energy_trace.push_back({step + 1, t0 + dt, energy, energy_prev - energy});
    energy_prev = energy;
  }

  result.steps = n_steps;
  result.newton_iterations = newton_iters;
  result.u.coeffs() = state;
  result.aux = solve_auxiliaries(problem, result.u, flux, opts);
  return result;
}

IntegrateResult2D integrate_2d(const DGField2D& u0, double t_final, const SDCConfig& sdc,
                               FluxChoice2D choice) {
  const auto& mesh = u0.mesh();
  const int degree = u0.degree();
  const auto [n_steps, dt] = plan_steps(sdc, mesh.h_max(), t_final);
  const SdcTableau tableau = make_tableau(sdc.nodes);

  LinearOperator op = assemble_operator_2d(mesh, degree, choice);
  ImplicitLinearSolver lin(op);

  const auto energy_of = [&](const Vec& c) {
    DGField2D u(mesh, degree);
    u.coeffs() = c;
    return inner_product(u, u);
  };

  SdcCallbacks cb;
  cb.rhs = [&](const Vec& c, double, Vec& out) { out = op.apply(c); };
  cb.implicit_solve = [&](double a, double, const Vec& rhs, Vec& u) { lin.solve(a, rhs, u); };

  IntegrateResult2D result{DGField2D(mesh, degree), DGField2D(mesh, degree), {}, 0};
  Vec state = u0.coeffs();
  double energy_prev = energy_of(state);
  result.energy_trace.push_back({0, 0.0, energy_prev, 0.0});
  for (int step = 0; step < n_steps; ++step) {
    sdc_step(tableau, sdc, step * dt, dt, state, cb);
    if (has_nan(state))
      throw std::runtime_error("timeint: NaN detected at step " + std::to_string(step + 1));
    const double energy = energy_of(state);
    result.energy_trace.push_back({step + 1, (step + 1) * dt, energy, energy_prev - energy});
    energy_prev = energy;
  }

  result.steps = n_steps;
  result.u.coeffs() = state;
  result.w = spatial_residual_2d(result.u, choice).w;
  return result;
}

double sdc_scalar_decay(double lambda, double t_final, double dt_in, const SDCConfig& sdc) {
  const SdcTableau tableau = make_tableau(sdc.nodes);
  const int n = std::max(1, static_cast<int>(std::lround(t_final / dt_in)));
  const double dt = t_final / n;

  SdcCallbacks cb;
  cb.rhs = [lambda](const Vec& u, double, Vec& out) { out[0] = lambda * u[0]; };
  cb.implicit_solve = [lambda](double a, double, const Vec& rhs, Vec& u) {
    u[0] = rhs[0] / (1.0 - a * lambda);
  };

  Vec u{1.0};
  for (int step = 0; step < n; ++step) sdc_step(tableau, sdc, step * dt, dt, u, cb);
  return u[0];
}

}  // namespace hodg
