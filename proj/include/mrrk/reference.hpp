#pragma once

#include "mrrk/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mrrk {

struct StepUnderflow : std::runtime_error {
  explicit StepUnderflow(double t)
      : std::runtime_error("reference solver step underflow at t=" + std::to_string(t)) {}
};

/// High-accuracy stand-in for an exact solution: adaptive Dormand-Prince 5(4)
/// with quartic dense output over the accepted steps. Construction integrates
/// the whole interval once; evaluation is immutable and shareable.
class ReferenceSolution {
 public:
  ReferenceSolution(const OdeProblem& problem, double t_final, double rtol = 1e-13,
                    double atol = 1e-13) {
    // working double precision cannot support tighter tolerances
    rtol_ = std::max(rtol, 1e-13);
    atol_ = std::max(atol, 1e-13);
    integrate(problem, t_final);
  }

  Vec operator()(double t) const {
    if (t < t0_ - 1e-12 || t > t1_ + 1e-12)
      throw std::out_of_range("reference solution queried outside its interval");
    t = std::clamp(t, t0_, t1_);
    size_t lo = 0, hi = steps_.size() - 1;
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (steps_[mid].t_end < t) lo = mid + 1;
      else hi = mid;
    }
    const Step& s = steps_[lo];
    double th = (t - s.t_start) / (s.t_end - s.t_start);
    double th1 = 1.0 - th;
    // contd5-style quartic: r1 + th (r2 + th1 (r3 + th (r4 + th1 r5)))
    return s.r1 + th * (s.r2 + th1 * (s.r3 + th * (s.r4 + th1 * s.r5)));
  }

  size_t accepted_steps() const { return steps_.size(); }
  size_t rejected_steps() const { return rejected_; }
  double t_begin() const { return t0_; }
  double t_end() const { return t1_; }

 private:
  struct Step {
    double t_start, t_end;
    Vec r1, r2, r3, r4, r5;
  };

  void integrate(const OdeProblem& p, double t_final) {
    // Dormand-Prince coefficients (FSAL form) and the dense-output weights.
    static const double a21 = 1.0 / 5, a31 = 3.0 / 40, a32 = 9.0 / 40, a41 = 44.0 / 45,
                        a42 = -56.0 / 15, a43 = 32.0 / 9, a51 = 19372.0 / 6561,
                        a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729,
                        a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656, a71 = 35.0 / 384,
                        a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static const double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    t0_ = p.initial_time;
    t1_ = t_final;
    double t = t0_;
    Vec y = p.initial_state;
    Vec k1 = p.rhs(t, y);

    // initial step from the scale of y and f
    double dy = std::max(y.lpNorm<Eigen::Infinity>(), 1e-8);
    double df = std::max(k1.lpNorm<Eigen::Infinity>(), 1e-8);
    double h = std::min(0.1 * dy / df, std::abs(t_final - t0_));
    h = std::max(h, 1e-10);

    while (t < t_final) {
      h = std::min(h, t_final - t);
      if (h < 1e-14 * std::max(1.0, std::abs(t))) throw StepUnderflow(t);

      Vec k2 = p.rhs(t + c2 * h, y + h * (a21 * k1));
      Vec k3 = p.rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
      Vec k4 = p.rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      Vec k5 = p.rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      Vec k6 = p.rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      Vec ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      Vec k7 = p.rhs(t + h, ynew);

      Vec errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      double err = 0.0;
      for (int i = 0; i < y.size(); ++i) {
        double sc = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(ynew[i]));
        err += (errv[i] / sc) * (errv[i] / sc);
      }
      err = std::sqrt(err / y.size());

      if (err <= 1.0) {
        Step s;
        s.t_start = t;
        s.t_end = t + h;
        Vec ydiff = ynew - y;
        Vec bspl = h * k1 - ydiff;
        s.r1 = y;
        s.r2 = ydiff;
        s.r3 = bspl;
        s.r4 = ydiff - h * k7 - bspl;
        s.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        steps_.push_back(std::move(s));
        t += h;
        y = ynew;
        k1 = k7;  // first-same-as-last
      } else {
        ++rejected_;
      }
      double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      h *= std::clamp(fac, 0.2, 5.0);
    }
    if (steps_.empty()) {
      Step s;
      s.t_start = t0_;
      s.t_end = t0_;
      s.r1 = y;
      s.r2 = s.r3 = s.r4 = s.r5 = Vec::Zero(y.size());
      steps_.push_back(std::move(s));
    }
  }

  double rtol_, atol_;
  double t0_ = 0.0, t1_ = 0.0;
  size_t rejected_ = 0;
  std::vector<Step> steps_;
};

inline ReferenceSolution solve_reference(const OdeProblem& problem, double t_final,
                                         double rtol = 1e-13, double atol = 1e-13) {
  return ReferenceSolution(problem, t_final, rtol, atol);
}

}  // namespace mrrk
