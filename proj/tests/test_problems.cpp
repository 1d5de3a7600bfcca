#include <catch2/catch_amalgamated.hpp>

#include "mrrk/problems.hpp"
#include "mrrk/solitons.hpp"

#include <random>

using namespace mrrk;

namespace {

// random state in the physical domain of each problem
Vec random_state(std::mt19937& rng, const OdeProblem& p) {
  std::normal_distribution<double> n(0.0, 0.3);
  Vec u = p.initial_state;
  for (int i = 0; i < u.size(); ++i) u[i] += n(rng);
  if (p.name == "lotka-volterra")
    for (int i = 0; i < u.size(); ++i) u[i] = std::max(u[i], 0.05);
  return u;
}

}  // namespace

TEST_CASE("rigid body values") {
  auto p = rigid_body();
  Vec g0 = p.invariants(p.initial_state);
  REQUIRE(g0[0] == 2.0);
  REQUIRE(g0[1] == Catch::Approx(2.0 + 0.49 / std::sqrt(1.51)).margin(1e-15));
  REQUIRE((p.exact(0.0) - p.initial_state).lpNorm<Eigen::Infinity>() <= 1e-15);
}

TEST_CASE("jacobi elliptic identities and series") {
  for (double u : {1e-3, 1e-2, 0.3, 2.7, -11.4, 40.0}) {
    auto j = jacobi_elliptic(u, 0.51);
    REQUIRE(j.sn * j.sn + j.cn * j.cn == Catch::Approx(1.0).margin(1e-13));
    REQUIRE(j.dn * j.dn + 0.51 * j.sn * j.sn == Catch::Approx(1.0).margin(1e-13));
  }
  // small-argument series sn(u) = u - (1+m) u^3/6 + (1 + 14m + m^2) u^5/120
  double m = 0.51;
  for (double u : {1e-3, 5e-3, 2e-2}) {
    double series = u - (1 + m) * u * u * u / 6 + (1 + 14 * m + m * m) * std::pow(u, 5) / 120;
    REQUIRE(jacobi_elliptic(u, m).sn == Catch::Approx(series).margin(1e-12));
  }
}

TEST_CASE("lotka-volterra values and domain") {
  auto p = lotka_volterra_3d();
  Vec g0 = p.invariants(p.initial_state);
  REQUIRE(g0[0] == Catch::Approx(std::log(1.9) + std::log(0.5)).margin(1e-15));
  REQUIRE(g0[1] == Catch::Approx(3.4 - std::log(1.9) - std::log(0.5)).margin(1e-15));
  Vec bad = (Vec(3) << 1.0, -0.1, 0.5).finished();
  REQUIRE_THROWS_AS(p.invariants(bad), std::domain_error);
  REQUIRE_THROWS_AS(p.invariant_jacobian(bad), std::domain_error);
}

TEST_CASE("kepler two-body values") {
  auto p = kepler_two_body(0.5);
  Vec g0 = p.invariants(p.initial_state);
  REQUIRE(g0[0] == Catch::Approx(-0.5).margin(1e-15));
  REQUIRE(g0[1] == Catch::Approx(0.5 * std::sqrt(3.0)).margin(1e-15));
  REQUIRE(g0[2] == Catch::Approx(0.5).margin(1e-14));  // equals the eccentricity
  REQUIRE((p.exact(0.0) - p.initial_state).lpNorm<Eigen::Infinity>() <= 1e-14);
  Vec origin = Vec::Zero(4);
  REQUIRE_THROWS_AS(p.invariants(origin), std::domain_error);
}

TEST_CASE("perturbed kepler values and the mu -> 0 limit") {
  auto p = perturbed_kepler();
  Vec g0 = p.invariants(p.initial_state);
  REQUIRE(g0[0] == Catch::Approx(-0.5390625).margin(1e-15));
  REQUIRE(g0[1] == Catch::Approx(0.8).margin(1e-15));

  auto p0 = perturbed_kepler(0.0, 0.5);
  auto k = kepler_two_body(0.5);
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    Vec u = random_state(rng, k);
    REQUIRE((p0.rhs(0.0, u) - k.rhs(0.0, u)).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("invariant gradients match finite differences") {
  std::mt19937 rng(42);
  for (auto p : {rigid_body(), lotka_volterra_3d(), kepler_two_body(), perturbed_kepler()}) {
    for (int i = 0; i < 100; ++i) {
      Vec u = random_state(rng, p);
      Mat J = p.invariant_jacobian(u);
      Mat Jfd = invariant_jacobian_fd(p, u);
      double rel = (J - Jfd).lpNorm<Eigen::Infinity>() / (1 + J.lpNorm<Eigen::Infinity>());
      INFO(p.name);
      REQUIRE(rel <= 1e-6);
    }
  }
}

TEST_CASE("conservation identity grad(G)' f = 0 at random states") {
  std::mt19937 rng(43);
  for (auto p : {rigid_body(), lotka_volterra_3d(), kepler_two_body(), perturbed_kepler()}) {
    for (int i = 0; i < 100; ++i) {
      Vec u = random_state(rng, p);
      Vec gdotf = p.invariant_jacobian(u) * p.rhs(0.0, u);
      INFO(p.name);
      REQUIRE(gdotf.lpNorm<Eigen::Infinity>() <= 1e-10);
    }
  }
}

TEST_CASE("invariants along the exact solutions stay constant") {
  for (auto [p, horizon] : {std::pair{rigid_body(), 400.0}, std::pair{kepler_two_body(), 400.0}}) {
    Vec g0 = p.invariants(p.initial_state);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      double t = horizon * (i + 1) / 1000.0;
      worst = std::max(worst, (p.invariants(p.exact(t)) - g0).lpNorm<Eigen::Infinity>());
    }
    INFO(p.name);
    REQUIRE(worst <= 1e-12);
  }
}

TEST_CASE("soliton point values") {
  auto s1 = soliton(1);
  REQUIRE(s1(0.0, 0.0) == 1.0);
  double sech1 = 1.0 / std::cosh(1.0);
  REQUIRE(s1(std::sqrt(2.0), 0.0) == Catch::Approx(sech1 * sech1).margin(1e-15));
}

TEST_CASE("two-soliton discrete mass matches the analytic value") {
  auto s2 = soliton(2);
  int N = 1024;
  double xl = -80.0, xr = 80.0, dx = (xr - xl) / N;
  double mass = 0.0;
  for (int i = 0; i < N; ++i) mass += s2(xl + i * dx, -25.0);
  mass *= dx;
  double analytic = 2.0 * std::sqrt(2.0) * (std::sqrt(0.5) + 1.0);
  REQUIRE(mass == Catch::Approx(analytic).margin(1e-8));
}

TEST_CASE("soliton profiles are negligible at the domain boundaries") {
  // tightest case: the 1-soliton on [-20, 60] reaches 2.08e-12 at x = -20
  struct Case { int n; double xl, xr, t0, t1; };
  for (auto c : {Case{1, -20, 60, 0, 20}, Case{2, -80, 80, -25, 25}, Case{3, -130, 130, -50, 50}}) {
    auto s = soliton(c.n);
    for (double t : {0.0, c.t0, c.t1}) {
      INFO("n=" << c.n << " t=" << t);
      REQUIRE(std::abs(s(c.xl, t)) < 1e-11);
      REQUIRE(std::abs(s(c.xr, t)) < 1e-11);
    }
  }
  auto s1 = soliton(1);
  REQUIRE(std::abs(s1(-20.0, 0.0)) < 3e-12);
  for (int n : {2, 3}) {
    auto s = soliton(n);
    REQUIRE(std::abs(s(n == 2 ? -80.0 : -130.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("two-soliton is continuous across the csch singularity switch") {
  auto s2 = soliton(2);
  // xi2 = 0 along x = 2 t
  for (double t : {0.3, -7.0, 12.5}) {
    double xs = 2.0 * t;
    double at = s2(xs, t);
    for (double eps : {1e-7, 1e-9, 1e-11}) {
      REQUIRE(s2(xs + eps, t) == Catch::Approx(at).margin(1e-8));
      REQUIRE(s2(xs - eps, t) == Catch::Approx(at).margin(1e-8));
    }
  }
}

TEST_CASE("three-soliton separates into the expected humps") {
  auto s3 = soliton(3);
  // far before the interaction the profile is three sech^2 humps of heights
  // 1, 0.7, 0.4 near x = 2 beta t (phase-shifted by the interactions)
  double t = -50.0;
  double h1 = 0, h2 = 0, h3 = 0;
  for (double x = -130; x < 130; x += 0.01) {
    double v = s3(x, t);
    if (x < -90) h1 = std::max(h1, v);
    else if (x < -55) h2 = std::max(h2, v);
    else if (x < -20) h3 = std::max(h3, v);
  }
  REQUIRE(h1 == Catch::Approx(1.0).margin(1e-3));
  REQUIRE(h2 == Catch::Approx(0.7).margin(1e-3));
  REQUIRE(h3 == Catch::Approx(0.4).margin(1e-3));
}
