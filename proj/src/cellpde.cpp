#include "effham/cellpde.hpp"

#include <algorithm>
#include <cmath>

#include "effham/errors.hpp"

namespace effham {

namespace {

// Flux at one node for one axis: a = p + D^- u, b = p + D^+ u.
inline double node_flux(const Hamiltonian1D& H, double a, double b, NumericalFlux flux, double lf_alpha) {
  switch (flux) {
    case NumericalFlux::godunov:
      return H.godunov(a, b);
    case NumericalFlux::local_lax_friedrichs:
      return H.value(0.5 * (a + b)) - 0.5 * H.max_slope(std::min(a, b), std::max(a, b)) * (b - a);
    case NumericalFlux::lax_friedrichs:
    default:
      return H.value(0.5 * (a + b)) - 0.5 * lf_alpha * (b - a);
  }
}

struct AxisState {
  double alpha_cfl = 0.0;  // slope bound over the observed gradients (with margin)
  double alpha_lf = 0.0;   // LF coefficient: sampled range [-|p|-3, |p|+3] joined with observed
};

AxisState axis_bounds(const Hamiltonian1D& H, double p, double qmin, double qmax) {
  const double R = std::abs(p) + 3.0;
  const double lo = p + qmin, hi = p + qmax;
  AxisState s;
  s.alpha_cfl = 1.1 * H.max_slope(lo, hi) + 1e-12;
  s.alpha_lf = std::max(H.max_slope(-R, R), H.max_slope(lo, hi));
  return s;
}

double dt_for(double dx, double alpha_sum, double d, int dim) {
  const double adv = alpha_sum / dx;
  const double diff = 2.0 * d * dim / (dx * dx);
  return 0.5 / std::max({adv, diff, 1e-300});
}

struct MarchResult {
  double estimate;
  double drift;
  double T_used;
  GridSolution grid;
};

// Generic time march: `advance(u, dt_cap)` performs one step no larger than dt_cap and returns the dt used.
template <class Advance>
MarchResult march(GridSolution grid, const CellOptions& opt, Advance&& advance) {
  auto mean = [&] {
    double s = 0.0;
    for (double x : grid.field) s += x;
    return s / static_cast<double>(grid.field.size());
  };
  std::vector<double> marks{mean()};  // mean(u) at t = 0, 1, 2, ...
  double target = std::max(2.0, std::ceil(opt.T));
  double t = 0.0;
  long steps = 0;
  for (;;) {
    while (t < target - 1e-12) {
      const double next_mark = std::floor(t + 1e-12) + 1.0;
      const double dt = advance(grid, next_mark - t);
      t += dt;
      if (std::abs(t - next_mark) < 1e-12) {
        t = next_mark;
        const double m = mean();
        if (!std::isfinite(m)) throw numeric_error("cell problem march produced nonfinite values");
        marks.push_back(m);
      }
      if (++steps % 4096 == 0 && !std::isfinite(grid.field[0]))
        throw numeric_error("cell problem march produced nonfinite values");
    }
    const std::size_t k = marks.size() - 1;
    const double r1 = marks[k] - marks[k - 1];
    const double r0 = marks[k - 1] - marks[k - 2];
    const double drift = std::abs(r1 - r0);
    if (drift < opt.drift_tol || target * 2.0 > opt.T_max + 1e-9) {
      grid.time = t;
      return {-r1, drift, t, std::move(grid)};
    }
    target *= 2.0;
  }
}

MarchResult march_1d(const Hamiltonian1D& H, std::span<const double> vn, double p, int N, const CellOptions& opt) {
  const double dx = 1.0 / N;
  GridSolution grid;
  grid.dim = 1;
  grid.N = N;
  grid.field.assign(N, 0.0);
  std::vector<double> next(N), diff(N + 1);
  auto advance = [&](GridSolution& g, double dt_cap) {
    const auto& u = g.field;
    // diff[i + 1] = D^+ u at node i, diff[0] = D^- u at node 0
    double qmin = 0.0, qmax = 0.0;
    for (int i = 0; i < N; ++i) {
      const double q = ((i + 1 < N ? u[i + 1] : u[0]) - u[i]) / dx;
      diff[i + 1] = q;
      qmin = std::min(qmin, q);
      qmax = std::max(qmax, q);
    }
    diff[0] = diff[N];
    const AxisState ax = axis_bounds(H, p, qmin, qmax);
    const double dt = std::min(dt_for(dx, ax.alpha_cfl, opt.d, 1), dt_cap);
    const double visc = opt.d / dx;
    for (int i = 0; i < N; ++i) {
      const double a = diff[i], b = diff[i + 1];
      const double flux = node_flux(H, p + a, p + b, opt.flux, ax.alpha_lf);
      next[i] = u[i] - dt * (flux + vn[i] - visc * (b - a));
    }
    g.field.swap(next);
    g.dt = dt;
    return dt;
  };
  return march(std::move(grid), opt, advance);
}

MarchResult march_2d(const Hamiltonian2D& H, const std::function<double(double, double)>& V,
                     std::array<double, 2> p, int N, const CellOptions& opt) {
  const double dx = 1.0 / N;
  std::vector<double> vn(static_cast<std::size_t>(N) * N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) vn[j * N + i] = V(static_cast<double>(i) / N, static_cast<double>(j) / N);
  GridSolution grid;
  grid.dim = 2;
  grid.N = N;
  grid.field.assign(vn.size(), 0.0);
  std::vector<double> next(vn.size());
  auto at = [N](int i, int j) { return ((j + N) % N) * N + (i + N) % N; };
  auto advance = [&](GridSolution& g, double dt_cap) {
    const auto& u = g.field;
    double q1min = 0.0, q1max = 0.0, q2min = 0.0, q2max = 0.0;
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        const double q1 = (u[at(i + 1, j)] - u[at(i, j)]) / dx;
        const double q2 = (u[at(i, j + 1)] - u[at(i, j)]) / dx;
        q1min = std::min(q1min, q1);
        q1max = std::max(q1max, q1);
        q2min = std::min(q2min, q2);
        q2max = std::max(q2max, q2);
      }
    const AxisState a1 = axis_bounds(H.axis1, p[0], q1min, q1max);
    const AxisState a2 = axis_bounds(H.axis2, p[1], q2min, q2max);
    const double dt = std::min(dt_for(dx, a1.alpha_cfl + a2.alpha_cfl, opt.d, 2), dt_cap);
    const double visc = opt.d / (dx * dx);
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        const double u0 = u[at(i, j)];
        const double w = u[at(i - 1, j)], e = u[at(i + 1, j)], s = u[at(i, j - 1)], n = u[at(i, j + 1)];
        const double f1 = node_flux(H.axis1, p[0] + (u0 - w) / dx, p[0] + (e - u0) / dx, opt.flux, a1.alpha_lf);
        const double f2 = node_flux(H.axis2, p[1] + (u0 - s) / dx, p[1] + (n - u0) / dx, opt.flux, a2.alpha_lf);
        next[at(i, j)] = u0 - dt * (f1 + f2 + vn[at(i, j)] - visc * (w + e + s + n - 4.0 * u0));
      }
    g.field.swap(next);
    g.dt = dt;
    return dt;
  };
  return march(std::move(grid), opt, advance);
}

void check_options(const CellOptions& opt) {
  if (opt.N < 16) throw precondition_error("cell solver needs N >= 16");
  if (opt.T < 10.0) throw precondition_error("cell solver needs T >= 10");
  if (opt.d < 0.0) throw precondition_error("diffusion d must be >= 0");
}

}  // namespace

Hamiltonian2D quadratic_2d(double coef) {
  auto h = as_hamiltonian(QuasiConvexProfile::quadratic(coef));
  return {h, h};
}

double stable_dt(double dx, double alpha, double d) { return dt_for(dx, alpha, d, 1); }

std::vector<double> cell_step_1d(std::span<const double> u, std::span<const double> v_nodes,
                                 const Hamiltonian1D& H, double p, double d, double dt,
                                 NumericalFlux flux, double lf_alpha) {
  const int N = static_cast<int>(u.size());
  const double dx = 1.0 / N;
  std::vector<double> next(N);
  for (int i = 0; i < N; ++i) {
    const double um = u[(i + N - 1) % N], u0 = u[i], up = u[(i + 1) % N];
    const double f = node_flux(H, p + (u0 - um) / dx, p + (up - u0) / dx, flux, lf_alpha);
    next[i] = u0 - dt * (f + v_nodes[i] - d * (up - 2.0 * u0 + um) / (dx * dx));
  }
  return next;
}

NumericEstimate effective_H_numeric(const Hamiltonian1D& H, const Potential& V, double p, const CellOptions& opt) {
  check_options(opt);
  auto nodes = [&](int N) {
    std::vector<double> vn(N);
    for (int i = 0; i < N; ++i) vn[i] = V(static_cast<double>(i) / N);
    return vn;
  };
  MarchResult r = march_1d(H, nodes(opt.N), p, opt.N, opt);
  NumericEstimate out{r.estimate, r.drift, r.drift, r.T_used, std::move(r.grid)};
  if (opt.estimate_error) {
    const MarchResult fine = march_1d(H, nodes(2 * opt.N), p, 2 * opt.N, opt);
    out.error = 2.0 * std::abs(r.estimate - fine.estimate) + r.drift;
  }
  return out;
}

NumericEstimate effective_H_numeric_2d(const Hamiltonian2D& H, const std::function<double(double, double)>& V,
                                       std::array<double, 2> p, const CellOptions& opt) {
  check_options(opt);
  MarchResult r = march_2d(H, V, p, opt.N, opt);
  NumericEstimate out{r.estimate, r.drift, r.drift, r.T_used, std::move(r.grid)};
  if (opt.estimate_error) {
    const MarchResult fine = march_2d(H, V, p, 2 * opt.N, opt);
    out.error = 2.0 * std::abs(r.estimate - fine.estimate) + r.drift;
  }
  return out;
}

NumericEstimate effective_H_numeric_2d(const Hamiltonian2D& H, const FourierPotential& V,
                                       std::array<double, 2> p, const CellOptions& opt) {
  if (V.dim() != 2) throw precondition_error("2D cell solver needs a 2-dimensional potential");
  auto f = [&V](double x, double y) {
    const std::array<double, 2> pt{x, y};
    return V(std::span<const double>(pt));
  };
  return effective_H_numeric_2d(H, f, p, opt);
}

}  // namespace effham
