#pragma once

#include <functional>
#include <span>

#include "eulerkit/numdiff.hpp"

namespace eulerkit::specfun {

/// A value with an estimate of its absolute error.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Lanczos (g = 671/128, 14 terms) with reflection below 1/2; exact products for small
/// positive integers. Throws DomainError at nonpositive integers.
double gamma(double x);

/// int_0^1 x^{p-1} (1-x)^{q-1} dx by adaptive quadrature; endpoint singularities
/// are removed by the substitution x = u^{1/p} (and its mirror).
Estimate beta_integral(double p, double q);

/// Gamma(p) Gamma(q) / Gamma(p+q).
double beta_gamma(double p, double q);

/// int_0^L exp(-x^2) dx plus the bound on the neglected tail.
Estimate gaussian_integral(double L);

/// gaussian_integral at L = 6, where the tail is below 1e-14.
Estimate gaussian_integral_check();

/// sum_k (z/2)^{v+2k} / (k! Gamma(v+k+1)), stopped once the geometric tail bound
/// drops below tol * max(1, |partial sum|).
Estimate bessel_i_series(double v, double z, double tol = 1e-15);

/// x/(n+1) y'' + y' + y/alpha = 0, with amplitude A.
struct ChainProblem {
  double n = 0.0;
  double alpha = -1.0;
  double A = 1.0;
};

/// q = -(n+1) x / alpha.
double chain_q(const ChainProblem& prob, double x);

/// A q^{-n/2} I_n(2 sqrt q). At q = 0 the limit A / Gamma(n+1) is returned.
Estimate chain_solution_series(const ChainProblem& prob, double x);

/// A * int_0^1 (1-t^2)^{(2n-1)/2} cosh(2 t sqrt q) dt / int_0^1 (1-t^2)^{(2n-1)/2} dt,
/// with the same q as the series form.
Estimate chain_solution_integral(const ChainProblem& prob, double x);

/// int_0^1 (1-t^2)^{(2n-1)/2} dt.
Estimate chain_denominator(double n);

/// Ratio integral/series at x = 0 for unit amplitude, evaluated numerically.
double chain_normalization(double n);

/// max over grid of |x/(n+1) y'' + y' + y/alpha|.
double chain_ode_residual(const ChainProblem& prob, const std::function<numdiff::Jet(double)>& y,
                          std::span<const double> grid);

}  // namespace eulerkit::specfun
