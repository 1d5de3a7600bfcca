#pragma once

#include "mrrk/problem.hpp"
#include "mrrk/stepper.hpp"
#include "mrrk/tableau.hpp"

#include <Eigen/QR>

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mrrk {

struct SolverConfig {
  double tol = 1e-13;            // scaled by 1 + ||G_target||_inf
  int max_iter = 50;             // Newton iterations
  double fallback_gmax = 0.1;    // half-width of the coarse search box
  int fallback_grid_points = 11; // points per axis of the coarse search
  bool allow_inexact = false;    // accept the best residual instead of aborting
  double branch_bound_coeff = 1.0;
};

struct NonConvergence : std::runtime_error {
  double best_residual;
  explicit NonConvergence(double r)
      : std::runtime_error("relaxation solver did not reach tolerance (best residual " +
                           std::to_string(r) + ")"),
        best_residual(r) {}
};

enum class RelaxMethod { newton, fallback };

struct RelaxedStep {
  Vec gamma;
  double Gamma = 0.0;
  Vec relaxed_state;
  double adjusted_dt = 0.0;
  Vec residual;
  int iterations = 0;
  RelaxMethod method_used = RelaxMethod::newton;
  bool converged = false;
  bool wrong_branch_warning = false;
};

using InvariantFn = std::function<Vec(const Vec&)>;
using InvariantJacFn = std::function<Mat(const Vec&)>;

namespace detail {

struct RelaxWork {
  const StepRecord& rec;
  const InvariantFn& G;
  const InvariantJacFn& dG;
  std::vector<int> sel;
  Vec target;  // selected components of G_target
  Mat D;       // m x l selected direction matrix
  double dt;

  Vec state(const Vec& g) const { return rec.baseline_update + dt * (D * g); }

  Vec residual(const Vec& g) const {
    Vec full = G(state(g));
    Vec r(sel.size());
    for (size_t i = 0; i < sel.size(); ++i) r[i] = full[sel[i]] - target[i];
    return r;
  }

  Mat jacobian(const Vec& g) const {
    Mat full = dG(state(g));
    Mat J(sel.size(), sel.size());
    for (size_t i = 0; i < sel.size(); ++i) J.row(i) = dt * (full.row(sel[i]) * D);
    return J;
  }
};

// Nelder-Mead on ||R||_2^2, dimension <= 3; refines the coarse grid winner.
inline Vec simplex_minimize(const RelaxWork& w, Vec g0, double radius, int iters) {
  const int n = static_cast<int>(g0.size());
  auto f = [&](const Vec& g) { return w.residual(g).squaredNorm(); };
  std::vector<Vec> pts(n + 1, g0);
  for (int i = 0; i < n; ++i) pts[i + 1][i] += radius;
  std::vector<double> fv(n + 1);
  for (int i = 0; i <= n; ++i) fv[i] = f(pts[i]);
  for (int it = 0; it < iters; ++it) {
    int hi = 0, lo = 0;
    for (int i = 1; i <= n; ++i) {
      if (fv[i] > fv[hi]) hi = i;
      if (fv[i] < fv[lo]) lo = i;
    }
    if (fv[hi] - fv[lo] < 1e-32 * (1 + fv[lo])) break;
    Vec centroid = Vec::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != hi) centroid += pts[i];
    centroid /= n;
    Vec refl = centroid + (centroid - pts[hi]);
    double fr = f(refl);
    if (fr < fv[lo]) {
      Vec exp_ = centroid + 2.0 * (centroid - pts[hi]);
      double fe = f(exp_);
      if (fe < fr) { pts[hi] = exp_; fv[hi] = fe; }
      else { pts[hi] = refl; fv[hi] = fr; }
    } else if (fr < fv[hi]) {
      pts[hi] = refl;
      fv[hi] = fr;
    } else {
      Vec con = centroid + 0.5 * (pts[hi] - centroid);
      double fc = f(con);
      if (fc < fv[hi]) { pts[hi] = con; fv[hi] = fc; }
      else {
        for (int i = 0; i <= n; ++i) {
          if (i == lo) continue;
          pts[i] = pts[lo] + 0.5 * (pts[i] - pts[lo]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }
  int lo = 0;
  for (int i = 1; i <= n; ++i)
    if (fv[i] < fv[lo]) lo = i;
  return pts[lo];
}

// Damped Newton with a rank-revealing linear solve. Functionally dependent
// invariants (the Kepler triple) make the Jacobian exactly singular while the
// system stays consistent; the complete orthogonal decomposition then yields
// the minimum-norm Gauss-Newton step, which keeps the iteration on the branch
// nearest gamma = 0.
inline void newton_path(const RelaxWork& w, Vec& best_g, double& best_r, int& iters, Vec g,
                        const SolverConfig& cfg, double floor_) {
  Vec r = w.residual(g);
  double rn = r.lpNorm<Eigen::Infinity>();
  if (rn < best_r) { best_g = g; best_r = rn; }
  int stall = 0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    if (best_r <= floor_) break;
    Mat J = w.jacobian(g);
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(J);
    cod.setThreshold(1e-13);
    Vec dg = cod.solve(-r);
    if (!dg.allFinite()) break;
    double alpha = 1.0;
    bool improved = false;
    Vec gn, rnv;
    for (int ls = 0; ls < 30; ++ls) {
      gn = g + alpha * dg;
      rnv = w.residual(gn);
      if (rnv.lpNorm<Eigen::Infinity>() < rn) { improved = true; break; }
      alpha *= 0.5;
    }
    ++iters;
    if (!improved) break;
    g = gn;
    r = rnv;
    rn = r.lpNorm<Eigen::Infinity>();
    if (rn < 0.9 * best_r) { best_g = g; best_r = rn; stall = 0; }
    else {
      if (rn < best_r) { best_g = g; best_r = rn; }
      if (++stall >= 4) break;
    }
  }
}

}  // namespace detail

/// Solves G(u_baseline + dt sum gamma_i d_i) = G_target over the selected
/// invariant components, with one direction per component. Damped Newton from
/// gamma = 0 first; a coarse-grid plus simplex search backs it up when Newton
/// stalls or its Jacobian degenerates, and the best of both is returned.
inline RelaxedStep solve_relaxation(const InvariantFn& G, const InvariantJacFn& dG,
                                    const StepRecord& rec, const Vec& G_target,
                                    std::vector<int> selector, const SolverConfig& cfg,
                                    int p_min = 1) {
  if (selector.empty())
    for (int i = 0; i < G_target.size(); ++i) selector.push_back(i);
  const int l = static_cast<int>(selector.size());
  if (static_cast<int>(rec.directions.size()) < l)
    throw std::invalid_argument("need one direction per enforced invariant");

  detail::RelaxWork w{rec, G, dG, selector, Vec(l),
                      Mat(rec.baseline_update.size(), l), rec.step_size};
  for (int i = 0; i < l; ++i) {
    w.target[i] = G_target[selector[i]];
    w.D.col(i) = rec.directions[i];
  }

  const double scale = 1.0 + w.target.lpNorm<Eigen::Infinity>();
  const double tol = cfg.tol * scale;
  const double floor_ = std::numeric_limits<double>::epsilon() * scale;

  RelaxedStep out;
  Vec best_g = Vec::Zero(l);
  double best_r = w.residual(best_g).lpNorm<Eigen::Infinity>();
  int iters = 0;

  detail::newton_path(w, best_g, best_r, iters, Vec::Zero(l), cfg, floor_);
  out.method_used = RelaxMethod::newton;

  if (best_r > tol) {
    // coarse grid over the configured box, then simplex, then polish
    Vec grid_g = best_g;
    double grid_r = best_r;
    const int n = std::max(cfg.fallback_grid_points, 2);
    std::vector<int> idx(l, 0);
    while (true) {
      Vec g(l);
      for (int i = 0; i < l; ++i)
        g[i] = -cfg.fallback_gmax + 2.0 * cfg.fallback_gmax * idx[i] / (n - 1);
      double r = w.residual(g).lpNorm<Eigen::Infinity>();
      if (r < grid_r) { grid_r = r; grid_g = g; }
      int i = 0;
      for (; i < l; ++i) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
      if (i == l) break;
    }
    Vec refined = detail::simplex_minimize(w, grid_g, cfg.fallback_gmax / (n - 1), 400);
    detail::newton_path(w, best_g, best_r, iters, refined, cfg, floor_);
    double rr = w.residual(refined).lpNorm<Eigen::Infinity>();
    if (rr < best_r) { best_r = rr; best_g = refined; }
    out.method_used = RelaxMethod::fallback;
  }

  out.converged = best_r <= tol;
  if (!out.converged && !cfg.allow_inexact) throw NonConvergence(best_r);

  out.gamma = best_g;
  out.Gamma = best_g.sum();
  out.relaxed_state = w.state(best_g);
  out.adjusted_dt = (1.0 + out.Gamma) * rec.step_size;
  out.residual = w.residual(best_g);
  out.iterations = iters;
  double bound = 10.0 * cfg.branch_bound_coeff * std::pow(rec.step_size, p_min - 1);
  out.wrong_branch_warning = best_g.lpNorm<Eigen::Infinity>() > bound;
  return out;
}

inline RelaxedStep solve_relaxation(const OdeProblem& problem, const StepRecord& rec,
                                    const Vec& G_target, const SolverConfig& cfg = {},
                                    std::vector<int> selector = {}, int p_min = 1) {
  return solve_relaxation(problem.invariants, problem.invariant_jacobian, rec, G_target,
                          std::move(selector), cfg, p_min);
}

struct RelaxedTrajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<Vec> gammas;
  std::vector<double> residuals;
  int wrong_branch_count = 0;
  int not_converged_count = 0;
};

/// Multiple-relaxation integration: each step advances time by (1+Gamma) dt
/// and stops at the first relaxed time at or beyond t_final (no truncation;
/// errors are measured at the actual relaxed times).
inline RelaxedTrajectory relaxed_integrate(const OdeProblem& problem, const EmbeddedSet& set,
                                           double dt, double t_final,
                                           std::vector<int> selector = {},
                                           const SolverConfig& cfg = {}) {
  if (selector.empty())
    for (int i = 0; i < problem.invariant_count(); ++i) selector.push_back(i);
  int p_min = set.orders[0];
  for (size_t k = 0; k < selector.size() && k < set.orders.size(); ++k)
    p_min = std::min(p_min, set.orders[k]);

  RelaxedTrajectory traj;
  double t = problem.initial_time;
  Vec u = problem.initial_state;
  traj.times.push_back(t);
  traj.states.push_back(u);
  while (t < t_final - 1e-12 * std::max(1.0, std::abs(t_final))) {
    StepRecord rec = explicit_step(problem, set, t, u, dt);
    RelaxedStep rel =
        solve_relaxation(problem.invariants, problem.invariant_jacobian, rec,
                         problem.invariants(u), selector, cfg, p_min);
    u = rel.relaxed_state;
    t += rel.adjusted_dt;
    traj.times.push_back(t);
    traj.states.push_back(u);
    traj.gammas.push_back(rel.gamma);
    traj.residuals.push_back(rel.residual.lpNorm<Eigen::Infinity>());
    traj.wrong_branch_count += rel.wrong_branch_warning ? 1 : 0;
    traj.not_converged_count += rel.converged ? 0 : 1;
  }
  return traj;
}

struct GammaScalingPoint {
  double dt;
  double gamma_max;
};

/// One relaxed step from the exact state at probe_time for each step size;
/// the caller fits the log-log slope of gamma_max against dt.
inline std::vector<GammaScalingPoint> gamma_scaling_probe(const OdeProblem& problem,
                                                          const EmbeddedSet& set,
                                                          const std::vector<double>& dts,
                                                          std::vector<int> selector = {},
                                                          SolverConfig cfg = {},
                                                          double probe_time = 0.0) {
  if (selector.empty())
    for (int i = 0; i < problem.invariant_count(); ++i) selector.push_back(i);
  cfg.allow_inexact = true;  // the probe records the best gamma even off-tolerance
  Vec u0 = problem.initial_state;
  double t0 = problem.initial_time;
  if (probe_time != problem.initial_time) {
    if (!problem.has_exact())
      throw std::invalid_argument("probe at a shifted time needs the exact solution");
    u0 = problem.exact(probe_time);
    t0 = probe_time;
  }
  int p_min = set.orders[0];
  for (size_t k = 0; k < selector.size() && k < set.orders.size(); ++k)
    p_min = std::min(p_min, set.orders[k]);
  std::vector<GammaScalingPoint> out;
  for (double dt : dts) {
    StepRecord rec = explicit_step(problem, set, t0, u0, dt);
    RelaxedStep rel = solve_relaxation(problem.invariants, problem.invariant_jacobian, rec,
                                       problem.invariants(u0), selector, cfg, p_min);
    out.push_back({dt, rel.gamma.lpNorm<Eigen::Infinity>()});
  }
  return out;
}

/// Least-squares slope of log(y) against log(x), ignoring non-positive y.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                           double y_floor = 0.0) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > y_floor)) continue;
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace mrrk
