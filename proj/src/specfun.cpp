#include "eulerkit/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "eulerkit/error.hpp"
#include "eulerkit/quadrature.hpp"

namespace eulerkit::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Lanczos series with g = 671/128 and 14 terms; relative error below 1e-14 on [0.5, 171].
constexpr double kLanczosG = 5.2421875;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,     -0.491913816097620199,
    .339946499848118887e-4,  .465236289270485756e-4,  -.983744753048795646e-4, .158088703224912494e-3,
    -.210264441724104883e-3, .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kSqrtTwoPi = 2.5066282746310005;

double sin_pi(double x) {
  double r = std::remainder(x, 2.0);
  const double sign = r < 0.0 ? -1.0 : 1.0;
  r = std::abs(r);
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(kPi * r);
}

double lanczos(double x) {
  double series = kLanczosC0;
  for (std::size_t j = 0; j < kLanczos.size(); ++j) series += kLanczos[j] / (x + 1.0 + static_cast<double>(j));
  const double t = x + kLanczosG;
  // t^{x+1/2} split in halves so the power does not overflow before e^{-t} shrinks it.
  const double half = std::pow(t, 0.5 * (x + 0.5));
  return half * (half * std::exp(-t)) * kSqrtTwoPi * series / x;
}

quad::Options beta_options() {
  quad::Options o;
  o.abs_tol = 1e-13;
  o.rel_tol = 1e-13;
  o.max_subdivisions = 4000;
  return o;
}

void require_chain(const ChainProblem& prob) {
  if (!std::isfinite(prob.n) || !std::isfinite(prob.alpha) || !std::isfinite(prob.A)) {
    throw InvalidInput("chain parameters must be finite");
  }
  if (prob.alpha == 0.0) throw InvalidInput("chain alpha must be nonzero");
  if (!(prob.n > -1.0)) throw DomainError("chain series needs n > -1");
}

}  // namespace

double gamma(double x) {
  if (std::isnan(x)) throw InvalidInput("gamma of NaN");
  if (x <= 0.0 && x == std::floor(x)) {
    throw DomainError("gamma has a pole at the nonpositive integer " + std::to_string(x));
  }
  if (x == std::floor(x) && x <= 171.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  if (x < 0.5) return kPi / (sin_pi(x) * gamma(1.0 - x));
  if (x > 171.7) return std::numeric_limits<double>::infinity();
  return lanczos(x);
}

Estimate beta_integral(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw InvalidInput("beta integral needs finite p, q > 0");
  }
  const auto r = quad::integrate_endpoint_power([](double) { return 1.0; }, 0.0, 1.0, p - 1.0, q - 1.0,
                                                beta_options());
  if (!r.converged) throw QuadratureFailure("beta integral did not converge", r.error);
  return {r.value, r.error};
}

double beta_gamma(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw InvalidInput("beta needs finite p, q > 0");
  }
  return gamma(p) * gamma(q) / gamma(p + q);
}

Estimate gaussian_integral(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidInput("truncation bound must be positive");
  quad::Options o;
  o.abs_tol = 1e-15;
  o.rel_tol = 1e-15;
  const auto r = quad::gauss_kronrod([](double x) { return std::exp(-x * x); }, 0.0, L, o);
  if (!r.converged && r.error > 1e-13) throw QuadratureFailure("Gaussian integral did not converge", r.error);
  // int_L^inf e^{-x^2} dx <= e^{-L^2} / (2L)
  const double tail = std::exp(-L * L) / (2.0 * L);
  return {r.value, r.error + tail};
}

Estimate gaussian_integral_check() { return gaussian_integral(6.0); }

Estimate bessel_i_series(double v, double z, double tol) {
  if (!std::isfinite(v) || !std::isfinite(z)) throw InvalidInput("Bessel arguments must be finite");
  if (!(v > -1.0)) throw DomainError("Bessel series needs v > -1");
  if (z < 0.0) throw DomainError("Bessel series needs z >= 0");
  if (!(tol > 0.0)) throw InvalidInput("Bessel tolerance must be positive");
  if (z == 0.0) {
    if (v == 0.0) return {1.0, 0.0};
    if (v > 0.0) return {0.0, 0.0};
    throw DomainError("I_v(0) diverges for v < 0");
  }
  const double h2 = 0.25 * z * z;
  double term = std::pow(0.5 * z, v) / gamma(v + 1.0);
  double sum = term;
  constexpr int kBudget = 2000;
  for (int k = 0; k < kBudget; ++k) {
    const double ratio = h2 / ((k + 1.0) * (v + k + 1.0));
    term *= ratio;
    sum += term;
    // Ratios decrease once k + 1 > sqrt(h2); then the tail after this term is geometric.
    const double next = h2 / ((k + 2.0) * (v + k + 2.0));
    if (next < 1.0 && (k + 1.0) * (v + k + 1.0) >= h2) {
      const double tail = term * next / (1.0 - next);
      if (tail <= tol * std::max(1.0, std::abs(sum))) return {sum, tail};
    }
  }
  throw NumericFailure("Bessel series did not reach tolerance in " + std::to_string(kBudget) + " terms");
}

double chain_q(const ChainProblem& prob, double x) { return -(prob.n + 1.0) * x / prob.alpha; }

Estimate chain_solution_series(const ChainProblem& prob, double x) {
  require_chain(prob);
  if (!std::isfinite(x)) throw InvalidInput("chain abscissa must be finite");
  const double q = chain_q(prob, x);
  if (q < 0.0) {
    throw DomainError("q = -(n+1)x/alpha is negative: x and alpha must have opposite signs (x = " +
                      std::to_string(x) + ", alpha = " + std::to_string(prob.alpha) + ")");
  }
  if (q == 0.0) return {prob.A / gamma(prob.n + 1.0), 0.0};
  const auto I = bessel_i_series(prob.n, 2.0 * std::sqrt(q));
  const double scale = prob.A * std::pow(q, -0.5 * prob.n);
  return {scale * I.value, std::abs(scale) * I.error};
}

Estimate chain_denominator(double n) {
  if (!(n > -0.5)) throw DomainError("integral form needs n > -1/2");
  const double e = n - 0.5;
  // (1 - t^2)^e = (1 - t)^e (1 + t)^e; the first factor is the endpoint weight.
  const auto r = quad::integrate_endpoint_power([e](double t) { return std::pow(1.0 + t, e); }, 0.0, 1.0, 0.0, e,
                                                beta_options());
  if (!r.converged) throw QuadratureFailure("chain denominator did not converge", r.error);
  return {r.value, r.error};
}

Estimate chain_solution_integral(const ChainProblem& prob, double x) {
  require_chain(prob);
  if (!std::isfinite(x)) throw InvalidInput("chain abscissa must be finite");
  if (!(prob.n > -0.5)) throw DomainError("integral form needs n > -1/2");
  const double q = chain_q(prob, x);
  if (q < 0.0) {
    throw DomainError("q = -(n+1)x/alpha is negative: x and alpha must have opposite signs (x = " +
                      std::to_string(x) + ", alpha = " + std::to_string(prob.alpha) + ")");
  }
  const double e = prob.n - 0.5;
  const double s = 2.0 * std::sqrt(q);
  const auto num = quad::integrate_endpoint_power(
      [e, s](double t) { return std::pow(1.0 + t, e) * std::cosh(s * t); }, 0.0, 1.0, 0.0, e, beta_options());
  if (!num.converged) throw QuadratureFailure("chain numerator did not converge", num.error);
  const auto den = chain_denominator(prob.n);
  const double ratio = num.value / den.value;
  const double err = (num.error + std::abs(ratio) * den.error) / den.value;
  return {prob.A * ratio, std::abs(prob.A) * err};
}

double chain_normalization(double n) {
  const ChainProblem unit{n, -1.0, 1.0};
  return chain_solution_integral(unit, 0.0).value / chain_solution_series(unit, 0.0).value;
}

double chain_ode_residual(const ChainProblem& prob, const std::function<numdiff::Jet(double)>& y,
                          std::span<const double> grid) {
  require_chain(prob);
  if (grid.empty()) throw InvalidInput("residual needs a nonempty grid");
  double worst = 0.0;
  for (double x : grid) {
    const auto j = y(x);
    worst = std::max(worst, std::abs(x / (prob.n + 1.0) * j.d2 + j.d1 + j.value / prob.alpha));
  }
  return worst;
}

}  // namespace eulerkit::specfun
