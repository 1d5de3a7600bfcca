#pragma once

#include "mrrk/elliptic.hpp"
#include "mrrk/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace mrrk {

/// Euler equations for a free rigid body, initial state (0, 1, 1), with the
/// two quadratic invariants and the sn/cn/dn closed-form solution.
inline OdeProblem rigid_body() {
  const double s = std::sqrt(1.51);
  const double alpha = 1.0 + 1.0 / s;
  const double beta = 1.0 - 0.51 / s;

  OdeProblem p;
  p.name = "rigid-body";
  p.dimension = 3;
  p.initial_state = (Vec(3) << 0.0, 1.0, 1.0).finished();
  p.rhs = [=](double, const Vec& u) {
    return (Vec(3) << (alpha - beta) * u[1] * u[2], (1.0 - alpha) * u[2] * u[0],
            (beta - 1.0) * u[0] * u[1])
        .finished();
  };
  p.invariants = [=](const Vec& u) {
    return (Vec(2) << u.squaredNorm(),
            u[0] * u[0] + beta * u[1] * u[1] + alpha * u[2] * u[2])
        .finished();
  };
  p.invariant_jacobian = [=](const Vec& u) {
    Mat J(2, 3);
    J << 2 * u[0], 2 * u[1], 2 * u[2], 2 * u[0], 2 * beta * u[1], 2 * alpha * u[2];
    return J;
  };
  p.exact = [=](double t) {
    auto j = jacobi_elliptic(t, 0.51);
    return (Vec(3) << s * j.sn, j.cn, j.dn).finished();
  };
  return p;
}

/// Bi-Hamiltonian 3D Lotka-Volterra system with parameters
/// (a, b, c, lambda, mu, nu) = (-1, -1, -1, 0, 1, -1) and the two Casimirs.
/// Invariants require strictly positive states.
inline OdeProblem lotka_volterra_3d() {
  OdeProblem p;
  p.name = "lotka-volterra";
  p.dimension = 3;
  p.initial_state = (Vec(3) << 1.0, 1.9, 0.5).finished();
  p.rhs = [](double, const Vec& u) {
    return (Vec(3) << u[0] * (-u[1] + u[2]), u[1] * (u[0] - u[2] + 1.0),
            u[2] * (-u[0] + u[1] - 1.0))
        .finished();
  };
  auto check_domain = [](const Vec& u) {
    if (u[0] <= 0.0 || u[1] <= 0.0 || u[2] <= 0.0)
      throw std::domain_error("lotka-volterra invariants need positive state");
  };
  p.invariants = [=](const Vec& u) {
    check_domain(u);
    // ab=1, b=-1, -a=1, nu=-1, mu=1
    return (Vec(2) << std::log(u[0]) + std::log(u[1]) + std::log(u[2]),
            u[0] + u[1] + u[2] - std::log(u[1]) - std::log(u[2]))
        .finished();
  };
  p.invariant_jacobian = [=](const Vec& u) {
    check_domain(u);
    Mat J(2, 3);
    J << 1 / u[0], 1 / u[1], 1 / u[2], 1.0, 1.0 - 1 / u[1], 1.0 - 1 / u[2];
    return J;
  };
  return p;
}

namespace detail {

inline void check_origin(double r2) {
  if (r2 <= 0.0) throw std::domain_error("two-body state at the origin");
}

}  // namespace detail

/// Kepler two-body problem, u = (q1, q2, p1, p2), eccentricity e in (0, 1).
/// Carries three invariants: Hamiltonian, angular momentum, and the norm of
/// the Laplace-Runge-Lenz vector. The closed-form solution solves Kepler's
/// equation for the eccentric anomaly (a = 1, period 2 pi).
inline OdeProblem kepler_two_body(double e = 0.5) {
  if (e <= 0.0 || e >= 1.0) throw std::invalid_argument("eccentricity must lie in (0,1)");
  OdeProblem p;
  p.name = "kepler";
  p.dimension = 4;
  p.initial_state = (Vec(4) << 1.0 - e, 0.0, 0.0, std::sqrt((1 + e) / (1 - e))).finished();
  p.rhs = [](double, const Vec& u) {
    double r2 = u[0] * u[0] + u[1] * u[1];
    detail::check_origin(r2);
    double g = 1.0 / (r2 * std::sqrt(r2));
    return (Vec(4) << u[2], u[3], -u[0] * g, -u[1] * g).finished();
  };
  p.invariants = [](const Vec& u) {
    double q1 = u[0], q2 = u[1], p1 = u[2], p2 = u[3];
    double r2 = q1 * q1 + q2 * q2;
    detail::check_origin(r2);
    double r = std::sqrt(r2);
    double H = 0.5 * (p1 * p1 + p2 * p2) - 1.0 / r;
    double L = q1 * p2 - q2 * p1;
    // Laplace-Runge-Lenz vector (p, 0) x (0, 0, L) - q/r, third component zero
    double V1 = p2 * L - q1 / r;
    double V2 = -p1 * L - q2 / r;
    return (Vec(3) << H, L, std::hypot(V1, V2)).finished();
  };
  p.invariant_jacobian = [](const Vec& u) {
    double q1 = u[0], q2 = u[1], p1 = u[2], p2 = u[3];
    double r2 = q1 * q1 + q2 * q2;
    detail::check_origin(r2);
    double r = std::sqrt(r2), r3 = r2 * r;
    double L = q1 * p2 - q2 * p1;
    double V1 = p2 * L - q1 / r;
    double V2 = -p1 * L - q2 / r;
    double A = std::hypot(V1, V2);
    if (A == 0.0) throw std::domain_error("Laplace-Runge-Lenz vector vanished (circular orbit)");
    Mat J(3, 4);
    J.row(0) << q1 / r3, q2 / r3, p1, p2;
    J.row(1) << p2, -p1, -q2, q1;
    Eigen::RowVector4d dV1, dV2;
    dV1 << p2 * p2 - q2 * q2 / r3, -p1 * p2 + q1 * q2 / r3, -p2 * q2, 2 * q1 * p2 - q2 * p1;
    dV2 << -p1 * p2 + q1 * q2 / r3, p1 * p1 - q1 * q1 / r3, 2 * q2 * p1 - q1 * p2, -p1 * q1;
    J.row(2) = (V1 * dV1 + V2 * dV2) / A;
    return J;
  };
  p.exact = [e](double t) {
    // Kepler's equation E - e sin E = t from perihelion, Newton iteration.
    double M = t;
    double E = M;
    for (int it = 0; it < 100; ++it) {
      double d = (E - e * std::sin(E) - M) / (1.0 - e * std::cos(E));
      E -= d;
      if (std::abs(d) < 1e-15) break;
    }
    double se = std::sin(E), ce = std::cos(E);
    double r = 1.0 - e * ce;
    double f = std::sqrt(1.0 - e * e);
    return (Vec(4) << ce - e, f * se, -se / r, f * ce / r).finished();
  };
  return p;
}

/// Perturbed Kepler problem with perturbation strength mu (default 0.005)
/// and eccentricity e (default 0.6). The Hamiltonian carries the printed
/// mu/(2 r^3) term; the force uses the matching gradient so that both
/// invariants are exactly conserved along the flow.
inline OdeProblem perturbed_kepler(double mu = 0.005, double e = 0.6) {
  if (e <= 0.0 || e >= 1.0) throw std::invalid_argument("eccentricity must lie in (0,1)");
  OdeProblem p;
  p.name = "perturbed-kepler";
  p.dimension = 4;
  p.initial_state = (Vec(4) << 1.0 - e, 0.0, 0.0, std::sqrt((1 + e) / (1 - e))).finished();
  p.rhs = [mu](double, const Vec& u) {
    double r2 = u[0] * u[0] + u[1] * u[1];
    detail::check_origin(r2);
    double r3 = r2 * std::sqrt(r2), r5 = r2 * r3;
    double g = 1.0 / r3 + 1.5 * mu / r5;
    return (Vec(4) << u[2], u[3], -u[0] * g, -u[1] * g).finished();
  };
  p.invariants = [mu](const Vec& u) {
    double q1 = u[0], q2 = u[1], p1 = u[2], p2 = u[3];
    double r2 = q1 * q1 + q2 * q2;
    detail::check_origin(r2);
    double r = std::sqrt(r2);
    return (Vec(2) << 0.5 * (p1 * p1 + p2 * p2) - 1.0 / r - 0.5 * mu / (r2 * r),
            q1 * p2 - q2 * p1)
        .finished();
  };
  p.invariant_jacobian = [mu](const Vec& u) {
    double q1 = u[0], q2 = u[1], p1 = u[2], p2 = u[3];
    double r2 = q1 * q1 + q2 * q2;
    detail::check_origin(r2);
    double r3 = r2 * std::sqrt(r2), r5 = r2 * r3;
    double g = 1.0 / r3 + 1.5 * mu / r5;
    Mat J(2, 4);
    J.row(0) << q1 * g, q2 * g, p1, p2;
    J.row(1) << p2, -p1, -q2, q1;
    return J;
  };
  return p;
}

}  // namespace mrrk
