#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "eulerkit/error.hpp"
#include "eulerkit/ivp.hpp"
#include "eulerkit/linode.hpp"
#include "support.hpp"

using namespace eulerkit;
using namespace eulerkit::linode;
using eulerkit::testing::Gen;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

// Reference for C y'' + B y' + A y = X by adaptive Runge-Kutta.
double ivp_second_order(double C, double B, double A, const Forcing& X, double x0, double y0, double yp0,
                        double x) {
  ivp::Options o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-12;
  auto rhs = [&](double t, const ivp::State& s) -> ivp::State {
    const double f = X ? X(t) : 0.0;
    return {s[1], (f - B * s[1] - A * s[0]) / C};
  };
  return ivp::dopri5(rhs, x0, {y0, yp0}, x, o).y[0];
}

// Cantilever deflection written out by hand.
double beam_closed_form(double K, double l, double A, double x) {
  const double u = x / K;
  return A * ((std::cos(u) + std::cosh(u)) - (std::sin(u) + std::sinh(u)) / beam_b(K, l));
}

}  // namespace

TEST_CASE("ConstCoeffODE validation") {
  CHECK_THROWS_AS(ConstCoeffODE({1.0}), InvalidInput);
  CHECK_THROWS_AS(ConstCoeffODE({1.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(ConstCoeffODE({NAN, 1.0}), InvalidInput);
  CHECK(ConstCoeffODE({1, 0, 1}).order() == 2);
}

TEST_CASE("characteristic polynomial copies the coefficients") {
  auto p = characteristic_polynomial(ConstCoeffODE({1, 0, 1}));
  CHECK(std::vector<double>(p.coeffs().begin(), p.coeffs().end()) == std::vector<double>{1, 0, 1});
  auto q = characteristic_polynomial(ConstCoeffODE({-1, 0, 0, 0, 1}));
  CHECK(q.degree() == 4);
  CHECK(q(1.0) == 0.0);
  CHECK(characteristic_polynomial(ConstCoeffODE({-3, 1}))(3.0) == 0.0);
}

TEST_CASE("solve_homogeneous: documented spans") {
  SUBCASE("y'' + y") {
    auto gs = solve_homogeneous(ConstCoeffODE({1, 0, 1}));
    CHECK(gs.free_constants() == 2);
    CHECK(gs.find_basis(0, 1, 0, false, 1e-12) >= 0);
    CHECK(gs.find_basis(0, 1, 0, true, 1e-12) >= 0);
  }
  SUBCASE("y'''' = y / K^4") {
    const double K = 1.7;
    auto gs = solve_homogeneous(ConstCoeffODE({-1, 0, 0, 0, std::pow(K, 4)}));
    CHECK(gs.free_constants() == 4);
    CHECK(gs.find_basis(1 / K, 0, 0, false) >= 0);
    CHECK(gs.find_basis(-1 / K, 0, 0, false) >= 0);
    CHECK(gs.find_basis(0, 1 / K, 0, false) >= 0);
    CHECK(gs.find_basis(0, 1 / K, 0, true) >= 0);
  }
  SUBCASE("y'' - 2y' + y") {
    auto gs = solve_homogeneous(ConstCoeffODE({1, -2, 1}));
    REQUIRE(gs.clusters().size() == 1);
    CHECK(gs.clusters()[0].multiplicity == 2);
    CHECK(gs.find_basis(1, 0, 0, false) >= 0);
    CHECK(gs.find_basis(1, 0, 1, false) >= 0);
  }
  CHECK_THROWS_AS(solve_homogeneous(ConstCoeffODE({1, 0, 1}, [](double) { return 1.0; })), InvalidInput);
}

TEST_CASE("fit_constants: documented examples") {
  SUBCASE("sin x") {
    auto gs = solve_homogeneous(ConstCoeffODE({1, 0, 1}));
    const std::vector<Condition> c{{0, 0.0, 0.0}, {1, 0.0, 1.0}};
    auto sol = fit_constants(gs, c);
    for (double x : grid(-3, 3, 13)) {
      CHECK(evaluate(sol, x, 0).derivatives[0] == doctest::Approx(std::sin(x)).epsilon(1e-13));
    }
    CHECK(sol.condition_number < 10);
    CHECK(sol.provenance == "y(0)=0; y'(0)=1");
  }
  SUBCASE("e^x from the double root") {
    auto gs = solve_homogeneous(ConstCoeffODE({1, -2, 1}));
    const std::vector<Condition> c{{0, 0.0, 1.0}, {1, 0.0, 1.0}};
    auto sol = fit_constants(gs, c);
    for (double x : grid(-2, 2, 9)) {
      CHECK(evaluate(sol, x, 0).derivatives[0] == doctest::Approx(std::exp(x)).epsilon(1e-12));
    }
  }
  SUBCASE("dependent conditions are named") {
    auto gs = solve_homogeneous(ConstCoeffODE({1, 0, 1}));
    const std::vector<Condition> c{{0, 0.0, 1.0}, {0, M_PI, 1.0}};
    try {
      fit_constants(gs, c);
      FAIL("expected SingularSystem");
    } catch (const SingularSystem& e) {
      CHECK(e.offending_conditions() == std::vector<int>{0, 1});
      CHECK(e.condition_number() > 1e12);
    }
  }
  SUBCASE("wrong number of conditions") {
    auto gs = solve_homogeneous(ConstCoeffODE({1, 0, 1}));
    const std::vector<Condition> c{{0, 0.0, 1.0}};
    CHECK_THROWS_AS(fit_constants(gs, c), InvalidInput);
  }
}

TEST_CASE("evaluate: documented examples") {
  auto osc = solve_homogeneous(ConstCoeffODE({1, 0, 1}));
  std::vector<double> c(2, 0.0);
  c[osc.find_basis(0, 1, 0, true)] = 1.0;
  auto e = evaluate(osc, c, 0.0, 1);
  CHECK(std::abs(e.derivatives[0]) < 1e-15);
  CHECK(e.derivatives[1] == doctest::Approx(1.0).epsilon(1e-15));

  const double K = 2.0;
  auto beam = solve_homogeneous(ConstCoeffODE({-1, 0, 0, 0, std::pow(K, 4)}));
  std::vector<double> cb(4, 0.0);
  cb[beam.find_basis(0, 1 / K, 0, false)] = 1.0;
  cb[beam.find_basis(1 / K, 0, 0, false)] = 0.5;
  cb[beam.find_basis(-1 / K, 0, 0, false)] = 0.5;
  CHECK(evaluate(beam, cb, 0.0, 0).derivatives[0] == doctest::Approx(2.0).epsilon(1e-14));

  auto dbl = solve_homogeneous(ConstCoeffODE({1, -2, 1}));
  std::vector<double> cd{1.0, 1.0};
  CHECK(evaluate(dbl, cd, 0.0, 1).derivatives[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("evaluate flags overflow instead of throwing") {
  auto gs = solve_homogeneous(ConstCoeffODE({-1, 1}));
  std::vector<double> one{1.0};
  auto big = evaluate(gs, one, 1000.0, 1);
  CHECK(big.overflow);
  CHECK(std::isinf(big.derivatives[0]));
  // A tiny constant keeps the product representable.
  std::vector<double> tiny{1e-300};
  auto ok = evaluate(gs, tiny, 750.0, 0);
  CHECK_FALSE(ok.overflow);
  CHECK(ok.derivatives[0] == doctest::Approx(std::exp(750.0 - 300 * std::log(10.0))).epsilon(1e-12));
}

TEST_CASE("residual: documented examples") {
  const ConstCoeffODE osc({1, 0, 1});
  auto gs = solve_homogeneous(osc);
  const std::vector<Condition> c{{0, 0.0, 0.0}, {1, 0.0, 1.0}};
  auto sine = fit_constants(gs, c);
  const auto g = grid(-5, 5, 41);
  CHECK(residual(osc, sine, g) <= 1e-12);

  // cosh is not a solution of y'' + y = 0: residual is 2 cosh x.
  const std::vector<Condition> at_rest{{0, 0.0, 1.0}, {1, 0.0, 0.0}};
  auto hyp = fit_constants(solve_homogeneous(ConstCoeffODE({-1, 0, 1})), at_rest);
  const std::vector<double> g1{0.0, 0.5, 1.0};
  CHECK(residual(osc, hyp, g1) == doctest::Approx(2 * std::cosh(1.0)).epsilon(1e-12));
  CHECK(residual(osc, hyp, g1) >= 1.0);
  CHECK_THROWS_AS(residual(osc, sine, std::vector<double>{}), InvalidInput);
}

TEST_CASE("solve_beam reproduces the closed form and its b") {
  SUBCASE("K = 1, l = pi") {
    auto sol = solve_beam(1.0, M_PI, 1.0);
    const double b = (std::sin(M_PI) + std::sinh(M_PI)) / (std::cos(M_PI) + std::cosh(M_PI));
    CHECK(beam_b(1.0, M_PI) == doctest::Approx(b).epsilon(1e-15));
    // y'(0) = -2A/(bK) pins b through the fitted constants.
    const double yp0 = evaluate(sol, 0.0, 1).derivatives[1];
    CHECK(-2.0 / yp0 == doctest::Approx(b).epsilon(1e-12));
    for (double x : grid(0, M_PI, 21)) {
      CHECK(evaluate(sol, x, 0).derivatives[0] == doctest::Approx(beam_closed_form(1, M_PI, 1, x)).epsilon(1e-11));
    }
  }
  SUBCASE("A = 0 is the zero solution") {
    auto sol = solve_beam(1.3, 2.0, 0.0);
    for (double c : sol.constants) CHECK(c == 0.0);
  }
  SUBCASE("property: boundary and residual over random K, l") {
    Gen g(0xbea1);
    for (int trial = 0; trial < 20; ++trial) {
      const double K = g.uniform(0.2, 3.0), l = K * g.uniform(0.5, 6.0), A = g.uniform(-2, 2);
      auto sol = solve_beam(K, l, A);
      const ConstCoeffODE ode({-1, 0, 0, 0, std::pow(K, 4)});
      CHECK(residual(ode, sol, grid(0, l, 101)) <= 1e-8 * std::abs(A));
      CHECK(std::abs(evaluate(sol, l, 0).derivatives[0]) <= 1e-10 * std::abs(A));
      CHECK(std::abs(evaluate(sol, 0.0, 0).derivatives[0] - 2 * A) <= 1e-12 * std::abs(A));
    }
  }
  CHECK_THROWS_AS(solve_beam(0.0, 1.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(solve_beam(1.0, -1.0, 1.0), InvalidInput);
}

TEST_CASE("property: random homogeneous equations, residual, real form and dimension") {
  Gen g(0x0de1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto truth = testing::random_clusters(g, 6);
    const ConstCoeffODE ode(testing::real_coeffs(polyroots::expand(truth)));
    auto gs = solve_homogeneous(ode);
    REQUIRE(gs.free_constants() == ode.order());
    std::vector<double> c(gs.free_constants());
    for (double& v : c) v = g.uniform(-1, 1);
    ParticularSolution sol{gs, c, "random", 1.0};
    CHECK(residual(ode, sol, grid(-1, 1, 50)) <= 1e-7);

    const double x = g.uniform(-1, 1);
    const auto a = evaluate(gs, c, x, ode.order());
    const auto b = evaluate_real_form(gs, c, x, ode.order());
    for (int m = 0; m <= ode.order(); ++m) {
      CHECK(std::abs(a.derivatives[m] - b.derivatives[m]) <= 1e-12 * std::max(1.0, std::abs(b.derivatives[m])));
    }

    // Wronskian at a random point: the basis is linearly independent.
    const auto d = gs.basis_derivatives(x, ode.order() - 1);
    Eigen::MatrixXd W(ode.order(), ode.order());
    for (int i = 0; i < ode.order(); ++i) {
      for (int j = 0; j < ode.order(); ++j) W(i, j) = d[j][i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(W);
    CHECK(svd.singularValues().minCoeff() > 1e-10 * svd.singularValues().maxCoeff());
  }
}

TEST_CASE("property: evaluate is linear in the constants") {
  Gen g(0x11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto truth = testing::random_clusters(g, 5);
    auto gs = solve_homogeneous(ConstCoeffODE(testing::real_coeffs(polyroots::expand(truth))));
    const int n = gs.free_constants();
    std::vector<double> c1(n), c2(n), sum(n);
    for (int i = 0; i < n; ++i) {
      c1[i] = g.uniform(-1, 1);
      c2[i] = g.uniform(-1, 1);
      sum[i] = c1[i] + c2[i];
    }
    const double x = g.uniform(-1, 1);
    const auto a = evaluate(gs, c1, x, 2), b = evaluate(gs, c2, x, 2), s = evaluate(gs, sum, x, 2);
    for (int m = 0; m <= 2; ++m) {
      const double scale = std::abs(a.derivatives[m]) + std::abs(b.derivatives[m]) + 1.0;
      CHECK(std::abs(s.derivatives[m] - a.derivatives[m] - b.derivatives[m]) <= 64 * 2.2e-16 * scale * 10);
    }
  }
}

TEST_CASE("euler multipliers are the negated characteristic roots") {
  auto m = euler_multipliers(1, 3, 2);
  CHECK(m.alpha.real() == doctest::Approx(2.0));
  CHECK(m.beta.real() == doctest::Approx(1.0));
  // alpha = -lambda with C lambda^2 + B lambda + A = 0
  Gen g(0xa1);
  for (int trial = 0; trial < 50; ++trial) {
    const double C = g.uniform(0.5, 2) * (g.uniform(0, 1) < 0.5 ? -1 : 1), B = g.uniform(-3, 3),
                 A = g.uniform(-3, 3);
    auto mu = euler_multipliers(C, B, A);
    for (auto r : {mu.alpha, mu.beta}) {
      CHECK(std::abs(C * r * r - B * r + A) <= 1e-12 * (std::abs(C * r * r) + std::abs(B * r) + std::abs(A)));
      const Complex lambda = -r;
      CHECK(std::abs(C * lambda * lambda + B * lambda + A) <= 1e-12 * (std::abs(C * r * r) + std::abs(B * r) + std::abs(A)));
    }
  }
  CHECK_THROWS_AS(euler_multipliers(0, 1, 1), InvalidInput);
}

TEST_CASE("reduce_nonhomogeneous_2nd: documented examples") {
  SUBCASE("homogeneous oscillator gives sin") {
    for (double x : {0.3, 1.0, 2.5, -1.2}) {
      CHECK(reduce_nonhomogeneous_2nd(1, 0, 1, {}, 0, 0, 1, x) == doctest::Approx(std::sin(x)).epsilon(1e-10));
    }
  }
  SUBCASE("y'' + 3y' + 2y = e^{-4x}") {
    auto X = [](double x) { return std::exp(-4 * x); };
    // By hand: particular e^{-4x}/6, homogeneous e^{-x}, e^{-2x}; y(0)=1, y'(0)=0.
    auto closed = [](double x) {
      const double p = 1.0 / 6;
      const double c2 = -(1 - p) - 4 * p;  // c1 + c2 = 1 - p, -c1 - 2c2 = 4p
      const double c1 = (1 - p) - c2;
      return c1 * std::exp(-x) + c2 * std::exp(-2 * x) + p * std::exp(-4 * x);
    };
    for (double x : {0.25, 1.0, 2.0}) {
      const double got = reduce_nonhomogeneous_2nd(1, 3, 2, X, 0, 1, 0, x);
      CHECK(got == doctest::Approx(ivp_second_order(1, 3, 2, X, 0, 1, 0, x)).epsilon(1e-9));
      CHECK(got == doctest::Approx(closed(x)).epsilon(1e-9));
    }
  }
  SUBCASE("zero forcing agrees with the characteristic route") {
    Gen g(0x2e);
    for (int trial = 0; trial < 20; ++trial) {
      const double C = g.uniform(0.5, 2), B = g.uniform(-2, 2), A = g.uniform(-3, 3);
      const double y0 = g.uniform(-1, 1), yp0 = g.uniform(-1, 1), x = g.uniform(0.1, 2);
      auto gs = solve_homogeneous(ConstCoeffODE({A, B, C}));
      const std::vector<Condition> c{{0, 0.0, y0}, {1, 0.0, yp0}};
      const double want = evaluate(fit_constants(gs, c), x, 0).derivatives[0];
      CHECK(std::abs(reduce_nonhomogeneous_2nd(C, B, A, {}, 0, y0, yp0, x) - want) <= 1e-8);
    }
  }
}

TEST_CASE("property: reduction agrees with adaptive IVP integration") {
  Gen g(0x3e);
  for (int trial = 0; trial < 50; ++trial) {
    const double C = g.uniform(0.5, 2) * (g.uniform(0, 1) < 0.5 ? -1 : 1), B = g.uniform(-2, 2),
                 A = g.uniform(-3, 3);
    const double w = g.uniform(0.5, 4), ph = g.uniform(0, 2 * M_PI), k0 = g.uniform(-1, 1), k1 = g.uniform(-1, 1);
    auto X = [=](double x) { return std::sin(w * x + ph) + k0 * std::exp(-x) + k1 * x * x; };
    const double y0 = g.uniform(-1, 1), yp0 = g.uniform(-1, 1), x = g.uniform(0.2, 2.0);
    const double got = reduce_nonhomogeneous_2nd(C, B, A, X, 0, y0, yp0, x);
    const double want = ivp_second_order(C, B, A, X, 0, y0, yp0, x);
    CHECK(std::abs(got - want) <= 1e-6);
  }
}

TEST_CASE("forced oscillator") {
  SUBCASE("free oscillation") {
    auto r = forced_oscillator(1, 4, 0, 1, 0.7);
    CHECK(r.natural_frequency == doctest::Approx(2.0));
    CHECK(r.value == 0.0);
    CHECK(r.steady_amplitude == 0.0);
  }
  SUBCASE("steady amplitude by substitution") {
    auto r = forced_oscillator(1, 4, 1, 1, 0.0);
    CHECK(r.steady_amplitude == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK_FALSE(r.resonant);
  }
  SUBCASE("value solves the IVP from rest") {
    for (double wa : {0.5, 1.9, 2.0, 3.1}) {
      for (double t : {0.5, 3.0, 7.0}) {
        ivp::Options o;
        o.rel_tol = o.abs_tol = 1e-12;
        auto rhs = [&](double s, const ivp::State& y) -> ivp::State {
          return {y[1], (1.5 * std::sin(wa * s) - 4 * y[0]) / 1.0};
        };
        const double want = ivp::dopri5(rhs, 0, {0, 0}, t, o).y[0];
        auto r = forced_oscillator(1, 4, 1.5, wa, t);
        CHECK(r.value == doctest::Approx(want).epsilon(1e-8).scale(1));
        CHECK(r.resonant == (wa == 2.0));
      }
    }
  }
  SUBCASE("amplitude grows toward resonance") {
    double prev = 0;
    for (double ratio : {0.9, 0.99, 0.999}) {
      auto r = forced_oscillator(2, 8, 1, ratio * 2, 1.0);
      if (prev > 0) CHECK(r.steady_amplitude >= 9 * prev);
      prev = r.steady_amplitude;
    }
    auto res = forced_oscillator(2, 8, 1, 2 * (1 + 1e-9), 1.0);
    CHECK(res.resonant);
    CHECK(std::isinf(res.steady_amplitude));
  }
  SUBCASE("property: monotone on either side of resonance") {
    Gen g(0x05c);
    for (int trial = 0; trial < 20; ++trial) {
      const double M = g.uniform(0.5, 3), K = g.uniform(0.5, 3), F = g.uniform(0.1, 2), w = std::sqrt(K / M);
      double prev = -1;
      for (int i = 0; i < 50; ++i) {
        const double a = forced_oscillator(M, K, F, w * i / 50.0, 0).steady_amplitude;
        CHECK(a > prev);
        prev = a;
      }
      prev = std::numeric_limits<double>::infinity();
      for (int i = 1; i <= 50; ++i) {
        const double a = forced_oscillator(M, K, F, w * (1 + i / 50.0), 0).steady_amplitude;
        CHECK(a < prev);
        prev = a;
      }
    }
  }
  CHECK_THROWS_AS(forced_oscillator(0, 1, 1, 1, 1), InvalidInput);
}
