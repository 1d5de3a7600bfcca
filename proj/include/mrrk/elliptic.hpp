#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace mrrk {

struct JacobiElliptic {
  double sn, cn, dn;
};

/// Jacobi elliptic functions by the arithmetic-geometric-mean (descending
/// Landen) recursion. The second argument is the parameter m = k^2, matching
/// the sn(t, 0.51) convention of standard references.
inline JacobiElliptic jacobi_elliptic(double u, double m) {
  if (m < 0.0 || m >= 1.0) throw std::invalid_argument("jacobi_elliptic: parameter outside [0,1)");
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};

  constexpr int kmax = 40;
  std::array<double, kmax + 1> a{}, cc{};
  a[0] = 1.0;
  cc[0] = std::sqrt(m);
  double b = std::sqrt(1.0 - m);
  int n = 0;
  while (std::abs(cc[n]) > 1e-17 * std::abs(a[n]) && n < kmax) {
    a[n + 1] = 0.5 * (a[n] + b);
    cc[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i) {
    double s = std::clamp(cc[i] / a[i] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }
  double sn = std::sin(phi);
  double cn = std::cos(phi);
  double dn = std::sqrt(std::max(1.0 - m * sn * sn, 0.0));
  return {sn, cn, dn};
}

}  // namespace mrrk
