#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vmdg/errors.hpp"
#include "vmdg/solvers.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace vmdg;

TEST_CASE("identity operator converges in one iteration") {
  std::vector<double> b = {1.0, -2.0, 3.0};
  std::vector<double> x(3, 0.0);
  auto apply = [](std::span<const double> in, std::span<double> out) {
    std::copy(in.begin(), in.end(), out.begin());
  };
  KrylovConfig cfg;
  auto rep = gmres(apply, b, x, cfg);
  CHECK(rep.converged);
  CHECK(rep.iterations == 1);
  for (int i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-14));
}

TEST_CASE("3x3 SPD system against the hand-inverted matrix") {
  // A = [[2,1,0],[1,2,1],[0,1,2]], det 4, A^-1 = (1/4)[[3,-2,1],[-2,4,-2],[1,-2,3]]
  auto apply = [](std::span<const double> in, std::span<double> out) {
    out[0] = 2 * in[0] + in[1];
    out[1] = in[0] + 2 * in[1] + in[2];
    out[2] = in[1] + 2 * in[2];
  };
  std::vector<double> b = {1.0, 0.0, 0.0};
  std::vector<double> x(3, 0.0);
  KrylovConfig cfg;
  auto rep = gmres(apply, b, x, cfg);
  CHECK(rep.converged);
  CHECK(x[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(x[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("random well-conditioned system matches a dense direct solve") {
  const int n = 50;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) += 0.05 * dist(rng);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b(i) = dist(rng);

  auto apply = [&](std::span<const double> in, std::span<double> out) {
    Eigen::Map<const Eigen::VectorXd> vin(in.data(), n);
    Eigen::Map<Eigen::VectorXd> vout(out.data(), n);
    vout = A * vin;
  };
  std::vector<double> x(n, 0.0);
  KrylovConfig cfg;
  cfg.rtol = 1e-13;
  auto rep = gmres(apply, std::span<const double>(b.data(), n), x, cfg);
  CHECK(rep.converged);
  Eigen::VectorXd exact = A.partialPivLu().solve(b);
  for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(exact(i)).epsilon(1e-10));
}

TEST_CASE("residual history is non-increasing within a restart cycle") {
  const int n = 40;
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd A = 2.0 * Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) += 0.3 * dist(rng);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b(i) = dist(rng);
  auto apply = [&](std::span<const double> in, std::span<double> out) {
    Eigen::Map<const Eigen::VectorXd> vin(in.data(), n);
    Eigen::Map<Eigen::VectorXd> vout(out.data(), n);
    vout = A * vin;
  };
  std::vector<double> x(n, 0.0);
  KrylovConfig cfg;
  cfg.restart = 60; // single cycle
  auto rep = gmres(apply, std::span<const double>(b.data(), n), x, cfg);
  CHECK(rep.converged);
  for (size_t i = 1; i < rep.residual_history.size(); ++i)
    CHECK(rep.residual_history[i] <= rep.residual_history[i - 1] * (1.0 + 1e-12));
}

TEST_CASE("max-iteration exhaustion reports failure") {
  auto apply = [](std::span<const double> in, std::span<double> out) {
    // rotation-ish operator that GMRES cannot crack in 2 iterations
    out[0] = in[1];
    out[1] = in[2];
    out[2] = in[3];
    out[3] = in[0];
  };
  std::vector<double> b = {1.0, 2.0, 3.0, 4.0};
  std::vector<double> x(4, 0.0);
  KrylovConfig cfg;
  cfg.max_iters = 2;
  cfg.restart = 2;
  auto rep = gmres(apply, b, x, cfg);
  CHECK(!rep.converged);
  CHECK_THROWS_AS(gmres_or_throw(apply, b, x, cfg, "test system"), SolverError);
}

TEST_CASE("newton: linear residual solved in one iteration") {
  auto residual = [](std::span<const double> u, std::span<double> r) {
    r[0] = 3.0 * u[0] - u[1] - 1.0;
    r[1] = u[0] + 2.0 * u[1] - 4.0;
  };
  std::vector<double> u = {10.0, -10.0};
  NewtonConfig ncfg;
  ncfg.tol = 1e-10;
  KrylovConfig kcfg;
  auto rep = newton_krylov(residual, u, ncfg, kcfg, "linear system");
  CHECK(rep.converged);
  // One Newton iteration up to the Krylov forcing, a couple at most.
  CHECK(rep.newton_iterations <= 2);
  CHECK(u[0] == doctest::Approx(6.0 / 7.0).epsilon(1e-8));
  CHECK(u[1] == doctest::Approx(11.0 / 7.0).epsilon(1e-8));
}

TEST_CASE("newton: u - c converges in one step") {
  auto residual = [](std::span<const double> u, std::span<double> r) { r[0] = u[0] - 2.5; };
  std::vector<double> u = {0.0};
  NewtonConfig ncfg;
  KrylovConfig kcfg;
  auto rep = newton_krylov(residual, u, ncfg, kcfg, "shift");
  CHECK(rep.converged);
  CHECK(u[0] == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("newton: scalar u^2 = 4") {
  auto residual = [](std::span<const double> u, std::span<double> r) { r[0] = u[0] * u[0] - 4.0; };
  std::vector<double> u = {3.0};
  NewtonConfig ncfg;
  KrylovConfig kcfg;
  auto rep = newton_krylov(residual, u, ncfg, kcfg, "sqrt");
  CHECK(rep.converged);
  CHECK(u[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("newton: 2d product system") {
  auto residual = [](std::span<const double> u, std::span<double> r) {
    r[0] = u[0] + u[1] - 3.0;
    r[1] = u[0] * u[1] - 2.0;
  };
  std::vector<double> u = {2.5, 0.5};
  NewtonConfig ncfg;
  KrylovConfig kcfg;
  auto rep = newton_krylov(residual, u, ncfg, kcfg, "product system");
  CHECK(rep.converged);
  bool root_a = std::abs(u[0] - 2.0) < 1e-9 && std::abs(u[1] - 1.0) < 1e-9;
  bool root_b = std::abs(u[0] - 1.0) < 1e-9 && std::abs(u[1] - 2.0) < 1e-9;
  CHECK((root_a || root_b));
}

TEST_CASE("finite-difference directional derivative approximates the Jacobian") {
  // residual R(u) = (u0^2 + u1, u0 u1); J p computed analytically
  auto residual = [](std::span<const double> u, std::span<double> r) {
    r[0] = u[0] * u[0] + u[1];
    r[1] = u[0] * u[1];
  };
  std::vector<double> u = {1.3, -0.7};
  std::vector<double> p = {0.4, 0.9};
  std::vector<double> r0(2), r1(2);
  residual(u, r0);
  double sigma = std::sqrt(std::numeric_limits<double>::epsilon()) *
                 (1.0 + std::hypot(u[0], u[1])) / std::hypot(p[0], p[1]);
  std::vector<double> up = {u[0] + sigma * p[0], u[1] + sigma * p[1]};
  residual(up, r1);
  double fd0 = (r1[0] - r0[0]) / sigma;
  double fd1 = (r1[1] - r0[1]) / sigma;
  double exact0 = 2.0 * u[0] * p[0] + p[1];
  double exact1 = u[1] * p[0] + u[0] * p[1];
  CHECK(std::abs(fd0 - exact0) < 10.0 * sigma);
  CHECK(std::abs(fd1 - exact1) < 10.0 * sigma);
}
