#pragma once

#include "mrrk/problem.hpp"
#include "mrrk/tableau.hpp"

#include <stdexcept>
#include <vector>

namespace mrrk {

struct StepFailure : std::runtime_error {
  int stage;
  double time;
  Vec state;
  StepFailure(int stage_, double time_, Vec state_, const std::string& what_)
      : std::runtime_error("stage " + std::to_string(stage_) + " at t=" + std::to_string(time_) +
                           ": " + what_),
        stage(stage_),
        time(time_),
        state(std::move(state_)) {}
};

/// One step's worth of stage data: states, slopes, the direction vector d_k
/// of every weight vector in the set, and the baseline update u + dt d_1.
struct StepRecord {
  double start_time = 0.0;
  double step_size = 0.0;
  std::vector<Vec> stage_states;
  std::vector<Vec> stage_slopes;
  std::vector<Vec> directions;
  Vec baseline_update;
};

/// Explicit RK step evaluating each stage once and forming every direction
/// as a weight combination of the stored slopes; no further rhs evaluations.
inline StepRecord explicit_step(const OdeProblem& problem, const EmbeddedSet& set, double tn,
                                const Vec& un, double dt) {
  const int s = set.stage_count();
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j)
      if (set.A(i, j) != 0.0)
        throw std::invalid_argument(set.name + ": explicit stepping needs strictly lower A");
  if (!(dt > 0.0)) throw std::invalid_argument("step size must be positive");

  StepRecord rec;
  rec.start_time = tn;
  rec.step_size = dt;
  rec.stage_states.reserve(s);
  rec.stage_slopes.reserve(s);
  for (int i = 0; i < s; ++i) {
    Vec gi = un;
    for (int j = 0; j < i; ++j)
      if (set.A(i, j) != 0.0) gi += dt * set.A(i, j) * rec.stage_slopes[j];
    rec.stage_states.push_back(gi);
    try {
      rec.stage_slopes.push_back(problem.rhs(tn + set.c[i] * dt, gi));
    } catch (const std::exception& e) {
      throw StepFailure(i, tn, gi, e.what());
    }
  }
  for (int k = 0; k < set.count(); ++k) {
    Vec d = Vec::Zero(un.size());
    for (int j = 0; j < s; ++j)
      if (set.weights[k][j] != 0.0) d += set.weights[k][j] * rec.stage_slopes[j];
    rec.directions.push_back(std::move(d));
  }
  rec.baseline_update = un + dt * rec.directions[0];
  return rec;
}

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
};

/// Fixed-step integration with the set's first method; the final step is
/// truncated so the trajectory lands exactly on t_final.
inline Trajectory fixed_grid_integrate(const OdeProblem& problem, const EmbeddedSet& set, double dt,
                                       double t_final) {
  Trajectory traj;
  double t = problem.initial_time;
  Vec u = problem.initial_state;
  traj.times.push_back(t);
  traj.states.push_back(u);
  const double t_end = t_final;
  while (t < t_end - 1e-12 * std::max(1.0, std::abs(t_end))) {
    double h = std::min(dt, t_end - t);
    StepRecord rec = explicit_step(problem, set, t, u, h);
    u = rec.baseline_update;
    t += h;
    traj.times.push_back(t);
    traj.states.push_back(u);
  }
  return traj;
}

}  // namespace mrrk
