#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mrrk {

namespace detail {

inline double sech(double x) { return 1.0 / std::cosh(x); }

inline double soliton1(double x, double t, double b1) {
  double xi = std::sqrt(b1 / 2) * (x - 2 * b1 * t);
  double s = sech(xi);
  return b1 * s * s;
}

// Two-soliton closed form. The raw expression has a removable 0/0 at xi2 = 0
// (csch and coth poles cancel); within a small window it is replaced by the
// equivalent form multiplied through by tanh^2(xi2), which is regular there.
inline double soliton2(double x, double t, double b1, double b2, double sw = 1e-6) {
  double xi1 = std::sqrt(b1 / 2) * (x - 2 * b1 * t);
  double xi2 = std::sqrt(b2 / 2) * (x - 2 * b2 * t);
  double s1 = sech(xi1), t1 = std::tanh(xi1);
  if (std::abs(xi2) < sw) {
    double s2 = sech(xi2), t2 = std::tanh(xi2);
    double num = -2 * (b1 - b2) * (b2 * s2 * s2 + b1 * s1 * s1 * t2 * t2);
    double den = std::sqrt(2 * b1) * t1 * t2 - std::sqrt(2 * b2);
    return num / (den * den);
  }
  double csch2 = 1.0 / (std::sinh(xi2) * std::sinh(xi2));
  double coth2 = 1.0 / std::tanh(xi2);
  double num = -2 * (b1 - b2) * (b2 * csch2 + b1 * s1 * s1);
  double den = std::sqrt(2 * b1) * t1 - std::sqrt(2 * b2) * coth2;
  return num / (den * den);
}

// Three-soliton profile from the Wronskian of (cosh xi1, sinh xi2, cosh xi3),
// u = sum_i b_i sech^2(xi_i) + 2 (log W)'' with the cosh factors split off.
// The reduced Wronskian is a tanh polynomial bounded below by
// (k2-k1)(k3-k2)(k3-k1) > 0, so this form is regular on the whole line.
inline double soliton3(double x, double t, double b1, double b2, double b3) {
  double k1 = std::sqrt(b1 / 2), k2 = std::sqrt(b2 / 2), k3 = std::sqrt(b3 / 2);
  double xi1 = k1 * (x - 2 * b1 * t), xi2 = k2 * (x - 2 * b2 * t), xi3 = k3 * (x - 2 * b3 * t);
  double T1 = std::tanh(xi1), T2 = std::tanh(xi2), T3 = std::tanh(xi3);
  double s1 = sech(xi1) * sech(xi1), s2 = sech(xi2) * sech(xi2), s3 = sech(xi3) * sech(xi3);
  double b = (k1 * k1 - k2 * k2) * k3;
  double c = (k2 * k2 - k3 * k3) * k1;
  double W = (k3 * k3 - k1 * k1) * k2 + b * T2 * T3 + c * T1 * T2;
  double T1p = k1 * s1, T2p = k2 * s2, T3p = k3 * s3;
  double T1pp = -2 * k1 * T1 * T1p, T2pp = -2 * k2 * T2 * T2p, T3pp = -2 * k3 * T3 * T3p;
  double Wp = b * (T2p * T3 + T2 * T3p) + c * (T1p * T2 + T1 * T2p);
  double Wpp = b * (T2pp * T3 + 2 * T2p * T3p + T2 * T3pp) + c * (T1pp * T2 + 2 * T1p * T2p + T1 * T2pp);
  return b1 * s1 + b2 * s2 + b3 * s3 + 2 * (Wpp * W - Wp * Wp) / (W * W);
}

}  // namespace detail

/// Closed-form n-soliton evaluator with the fixed parameter choices
/// beta = (1), (0.5, 1), (0.4, 0.7, 1).
struct SolitonSolution {
  int count = 1;
  std::vector<double> betas;

  double operator()(double x, double t) const {
    switch (count) {
      case 1: return detail::soliton1(x, t, betas[0]);
      case 2: return detail::soliton2(x, t, betas[0], betas[1]);
      case 3: return detail::soliton3(x, t, betas[0], betas[1], betas[2]);
      default: throw std::invalid_argument("soliton count must be 1, 2, or 3");
    }
  }
};

inline SolitonSolution soliton(int n) {
  switch (n) {
    case 1: return {1, {1.0}};
    case 2: return {2, {0.5, 1.0}};
    case 3: return {3, {0.4, 0.7, 1.0}};
    default: throw std::invalid_argument("soliton count must be 1, 2, or 3");
  }
}

}  // namespace mrrk
