#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace mrrk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// An initial value problem with a vector of conserved quantities. All
/// callables are pure; instances are immutable value objects and safe to
/// share across threads.
struct OdeProblem {
  std::string name;
  int dimension = 0;
  std::function<Vec(double, const Vec&)> rhs;
  std::function<Vec(const Vec&)> invariants;
  std::function<Mat(const Vec&)> invariant_jacobian;  // l x m
  std::function<Vec(double)> exact;                   // empty when unavailable
  Vec initial_state;
  double initial_time = 0.0;

  bool has_exact() const { return static_cast<bool>(exact); }
  int invariant_count() const { return static_cast<int>(invariants(initial_state).size()); }
};

/// Wraps a problem so that right-hand-side evaluations are counted; used by
/// tests asserting the one-evaluation-per-stage property.
struct CountingProblem {
  OdeProblem problem;
  std::shared_ptr<long> rhs_evals = std::make_shared<long>(0);

  explicit CountingProblem(OdeProblem p) : problem(std::move(p)) {
    auto inner = problem.rhs;
    auto counter = rhs_evals;
    problem.rhs = [inner, counter](double t, const Vec& u) {
      ++*counter;
      return inner(t, u);
    };
  }

  long count() const { return *rhs_evals; }
};

/// Central finite difference of the invariant vector, for gradient checks.
inline Mat invariant_jacobian_fd(const OdeProblem& p, const Vec& u, double h = 1e-6) {
  Vec g0 = p.invariants(u);
  Mat J(g0.size(), u.size());
  for (int j = 0; j < u.size(); ++j) {
    Vec up = u, um = u;
    up[j] += h;
    um[j] -= h;
    J.col(j) = (p.invariants(up) - p.invariants(um)) / (2 * h);
  }
  return J;
}

}  // namespace mrrk
