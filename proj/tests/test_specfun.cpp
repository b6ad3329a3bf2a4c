#include <cmath>
#include <vector>

#include "doctest.h"
#include "eulerkit/error.hpp"
#include "eulerkit/numdiff.hpp"
#include "eulerkit/specfun.hpp"
#include "support.hpp"

using namespace eulerkit;
using namespace eulerkit::specfun;
using eulerkit::testing::Gen;
using eulerkit::testing::rel_err;

namespace {

const double kSqrtPi = std::sqrt(M_PI);

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("gamma: known values") {
  CHECK(rel_err(specfun::gamma(0.5), kSqrtPi) < 1e-14);
  CHECK(specfun::gamma(5.0) == 24.0);
  CHECK(specfun::gamma(1.0) == 1.0);
  CHECK(specfun::gamma(2.0) == 1.0);
  CHECK(rel_err(specfun::gamma(-0.5), -2.0 * kSqrtPi) < 1e-14);
  CHECK(rel_err(specfun::gamma(1.5), 0.5 * kSqrtPi) < 1e-14);
  CHECK(std::isinf(specfun::gamma(200.0)));
}

TEST_CASE("gamma: poles") {
  CHECK_THROWS_AS(specfun::gamma(0.0), DomainError);
  CHECK_THROWS_AS(specfun::gamma(-3.0), DomainError);
  CHECK_THROWS_AS(specfun::gamma(NAN), InvalidInput);
}

TEST_CASE("gamma: agrees with the C library") {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const double x = g.uniform(-9.5, 170.0);
    if (x == std::floor(x)) continue;
    CHECK(rel_err(specfun::gamma(x), std::tgamma(x)) < 1e-12);
  }
}

TEST_CASE("gamma: recurrence Gamma(x+1) = x Gamma(x)") {
  Gen g(12);
  for (int i = 0; i < 20; ++i) {
    const double x = g.uniform(0.05, 30.0);
    CHECK(rel_err(specfun::gamma(x + 1.0), x * specfun::gamma(x)) < 1e-13);
  }
}

TEST_CASE("beta integral: closed forms") {
  CHECK(std::abs(beta_integral(1, 1).value - 1.0) < 1e-12);
  CHECK(std::abs(beta_integral(0.5, 0.5).value - M_PI) < 1e-10);
  CHECK(std::abs(beta_integral(3, 4).value - 1.0 / 60.0) < 1e-13);
  for (int m = 1; m <= 8; ++m) {
    for (int n = 1; n <= 8; ++n) {
      const double want = factorial(m - 1) * factorial(n - 1) / factorial(m + n - 1);
      CHECK(rel_err(beta_integral(m, n).value, want) < 1e-10);
    }
  }
}

TEST_CASE("beta integral: rejects nonpositive arguments") {
  CHECK_THROWS_AS(beta_integral(0.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(beta_integral(1.0, -2.0), InvalidInput);
  CHECK_THROWS_AS(beta_gamma(-1.0, 1.0), InvalidInput);
}

TEST_CASE("beta: quadrature matches the gamma ratio on a 10x10 triangle") {
  for (int i = 1; i <= 10; ++i) {
    for (int j = 1; j <= i; ++j) {
      const double p = 0.5 * i, q = 0.5 * j - 0.4;
      const auto b = beta_integral(p, q);
      CHECK(rel_err(b.value, beta_gamma(p, q)) < 1e-10);
      CHECK(b.error < 1e-9);
    }
  }
}

TEST_CASE("beta: symmetry and recurrence") {
  Gen g(13);
  for (int i = 0; i < 20; ++i) {
    const double p = g.uniform(0.1, 5.0), q = g.uniform(0.1, 5.0);
    CHECK(rel_err(beta_integral(p, q).value, beta_integral(q, p).value) < 1e-10);
    // B(p+1, q) = p/(p+q) B(p, q)
    CHECK(rel_err(beta_integral(p + 1, q).value, p / (p + q) * beta_integral(p, q).value) < 1e-10);
  }
}

TEST_CASE("Gaussian integral") {
  const auto r = gaussian_integral_check();
  CHECK(std::abs(r.value - kSqrtPi / 2) < 1e-10);
  CHECK(r.error < 1e-14);
  CHECK(std::abs(4 * r.value * r.value - M_PI) < 1e-10);
  const auto wide = gaussian_integral(12.0);
  CHECK(std::abs(wide.value - r.value) < 1e-14);
  const auto narrow = gaussian_integral(1.0);
  CHECK(narrow.error > 1e-2);
  CHECK(std::abs(narrow.value - kSqrtPi / 2 * std::erf(1.0)) < 1e-14);
  CHECK_THROWS_AS(gaussian_integral(0.0), InvalidInput);
}

TEST_CASE("Bessel I: zero argument") {
  CHECK(bessel_i_series(0, 0).value == 1.0);
  CHECK(bessel_i_series(1.5, 0).value == 0.0);
  CHECK_THROWS_AS(bessel_i_series(-0.5, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_i_series(0, -1.0), DomainError);
}

TEST_CASE("Bessel I: half order is elementary") {
  for (double z : grid(0.05, 20.0, 40)) {
    const double want = std::sqrt(2.0 / (M_PI * z)) * std::sinh(z);
    CHECK(rel_err(bessel_i_series(0.5, z).value, want) < 1e-13);
  }
}

TEST_CASE("Bessel I: agrees with the standard library") {
  Gen g(14);
  for (int i = 0; i < 100; ++i) {
    const double v = g.uniform(0.0, 6.0), z = g.uniform(0.0, 30.0);
    CHECK(rel_err(bessel_i_series(v, z).value, std::cyl_bessel_i(v, z)) < 1e-12);
  }
}

TEST_CASE("chain: x = 0 limit") {
  for (double n : {0.0, 0.5, 1.0, 2.5}) {
    const ChainProblem p{n, -1.0, 3.0};
    CHECK(rel_err(chain_solution_series(p, 0.0).value, 3.0 / std::tgamma(n + 1)) < 1e-14);
    CHECK(rel_err(chain_solution_integral(p, 0.0).value, 3.0) < 1e-12);
  }
}

TEST_CASE("chain: domain of q") {
  const ChainProblem p{1.0, -1.0, 1.0};
  CHECK_THROWS_AS(chain_solution_series(p, -0.5), DomainError);
  CHECK_THROWS_AS(chain_solution_integral(p, -0.5), DomainError);
  CHECK_NOTHROW(chain_solution_series(ChainProblem{1.0, 2.0, 1.0}, -0.5));
  CHECK_THROWS_AS(chain_solution_series(ChainProblem{1.0, 0.0, 1.0}, 1.0), InvalidInput);
  CHECK_THROWS_AS(chain_solution_series(ChainProblem{-1.5, -1.0, 1.0}, 1.0), DomainError);
  CHECK_THROWS_AS(chain_solution_integral(ChainProblem{-0.7, -1.0, 1.0}, 1.0), DomainError);
}

TEST_CASE("chain: denominator equals B(1/2, n+1/2)/2") {
  for (double n : {0.0, 0.5, 1.0, 1.5, 2.0, 3.25}) {
    CHECK(rel_err(chain_denominator(n).value, 0.5 * beta_gamma(0.5, n + 0.5)) < 1e-11);
  }
}

TEST_CASE("chain: normalization is Gamma(n+1)") {
  for (double n : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    CHECK(rel_err(chain_normalization(n), std::tgamma(n + 1.0)) < 1e-11);
  }
}

TEST_CASE("chain: series and integral agree after normalization") {
  Gen g(15);
  for (double n : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const double alpha = -g.uniform(0.3, 3.0);
    const ChainProblem p{n, alpha, g.uniform(-2.0, 2.0)};
    const double norm = chain_normalization(n);
    for (int i = 0; i < 10; ++i) {
      const double x = g.uniform(0.0, 5.0);
      const double s = chain_solution_series(p, x).value * norm;
      const double in = chain_solution_integral(p, x).value;
      CHECK(std::abs(s - in) <= 1e-7 * std::max(1.0, std::abs(in)));
    }
  }
}

TEST_CASE("chain: both forms satisfy the ODE") {
  const auto xs = grid(0.1, 2.0, 15);
  for (double n : {0.0, 0.5, 1.0, 2.0}) {
    const ChainProblem p{n, -0.8, 1.0};
    auto series = [&](double x) {
      return numdiff::jet6([&](double t) { return chain_solution_series(p, t).value; }, x, 1e-3);
    };
    auto integral = [&](double x) {
      return numdiff::jet6([&](double t) { return chain_solution_integral(p, t).value; }, x, 1e-3);
    };
    CHECK(chain_ode_residual(p, series, xs) <= 1e-7);
    CHECK(chain_ode_residual(p, integral, xs) <= 1e-6);
  }
}

TEST_CASE("chain: residual of simple trial functions") {
  const ChainProblem p{1.0, -2.0, 1.0};
  const std::vector<double> xs{0.0, 1.0, 2.0};
  auto constant = [](double) { return numdiff::Jet{3.0, 0.0, 0.0}; };
  CHECK(chain_ode_residual(p, constant, xs) == doctest::Approx(1.5));
  auto zero = [](double) { return numdiff::Jet{}; };
  CHECK(chain_ode_residual(p, zero, xs) == 0.0);
  CHECK_THROWS_AS(chain_ode_residual(p, zero, std::vector<double>{}), InvalidInput);
}

TEST_CASE("chain: zero amplitude and determinism") {
  CHECK(chain_solution_series(ChainProblem{1.0, -1.0, 0.0}, 2.0).value == 0.0);
  CHECK(chain_solution_integral(ChainProblem{1.0, -1.0, 0.0}, 2.0).value == 0.0);
  const ChainProblem p{1.5, -0.7, 1.3};
  CHECK(chain_solution_series(p, 1.7).value == chain_solution_series(p, 1.7).value);
  CHECK(chain_solution_integral(p, 1.7).value == chain_solution_integral(p, 1.7).value);
}

TEST_CASE("gamma: reflection") {
  Gen g(16);
  for (int i = 0; i < 50; ++i) {
    const double x = g.uniform(0.01, 0.99);
    CHECK(rel_err(specfun::gamma(x) * specfun::gamma(1.0 - x), M_PI / std::sin(M_PI * x)) < 1e-12);
  }
}

TEST_CASE("beta: B(2,2) and the q recurrence") {
  CHECK(std::abs(beta_gamma(2, 2) - 1.0 / 6.0) < 1e-15);
  CHECK(std::abs(beta_integral(2, 2).value - 1.0 / 6.0) < 1e-13);
  Gen g(17);
  for (int i = 0; i < 20; ++i) {
    const double p = g.uniform(0.1, 5.0), q = g.uniform(0.1, 5.0);
    CHECK(rel_err(beta_integral(p, q + 1).value, q / (p + q) * beta_integral(p, q).value) < 1e-10);
  }
}

TEST_CASE("beta: gamma form matches quadrature on [0.1, 10]") {
  Gen g(18);
  for (int i = 0; i < 60; ++i) {
    const double p = g.uniform(0.1, 10.0), q = g.uniform(0.1, 10.0);
    CHECK(std::abs(beta_gamma(p, q) - beta_integral(p, q).value) < 1e-9);
  }
}

TEST_CASE("beta: consistency triangle with recurrence-descended values") {
  for (int i = 1; i <= 10; ++i) {
    for (int j = 1; j <= 10; ++j) {
      const double p = 0.1 + 0.49 * i, q = 0.1 + 0.49 * j;
      const double quad = beta_integral(p, q).value;
      const double ratio = beta_gamma(p, q);
      // B(p, q) = (p+q)/p (p+q+1)/q B(p+1, q+1)
      const double descended = (p + q) / p * (p + q + 1) / q * beta_integral(p + 1, q + 1).value;
      CHECK(std::abs(quad - ratio) < 1e-9);
      CHECK(std::abs(quad - descended) < 1e-9);
      CHECK(std::abs(ratio - descended) < 1e-9);
    }
  }
}

TEST_CASE("Bessel I: half order at documented points") {
  for (double z : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(bessel_i_series(0.5, z).value - std::sqrt(2.0 / (M_PI * z)) * std::sinh(z)) < 1e-14);
  }
}

TEST_CASE("chain: series residual at 20 interior points") {
  const auto xs = grid(0.05, 3.0, 20);
  const ChainProblem p{1.5, -1.2, 0.7};
  auto series = [&](double x) {
    return numdiff::jet6([&](double t) { return chain_solution_series(p, t).value; }, x, 1e-3);
  };
  CHECK(chain_ode_residual(p, series, xs) <= 1e-7);
}
