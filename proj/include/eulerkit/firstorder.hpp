#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "eulerkit/ivp.hpp"

namespace eulerkit::firstorder {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

struct Rect {
  double x_lo, x_hi, y_lo, y_hi;
};

/// M(x, y) dx + N(x, y) dy = 0 on a rectangle.
struct PlaneField {
  Fn2 M;
  Fn2 N;
  Rect domain;
};

struct Point {
  double x, y;
};

struct ExactnessReport {
  bool exact = false;
  double max_deviation = 0.0;
  double step_x = 0.0;
  double step_y = 0.0;
  int evaluated = 0;
  std::vector<Point> excluded;  // grid points where M or N could not be evaluated
};

/// Tests dM/dy == dN/dx on a grid_n x grid_n grid with central differences,
/// steps 1e-5 times the domain extent along each axis.
ExactnessReport exactness_check(const PlaneField& field, int grid_n, double tol);

/// H(x, y) = level along a solution curve.
struct ImplicitSolution {
  Fn2 H;
  Fn2 H_x;
  Fn2 H_y;
  double level = 0.0;
  Point seed{0.0, 0.0};
};

/// dx / f(x) = g(y) dy, i.e. dy/dx = 1 / (f(x) g(y)), through (x0, y0).
/// H(x, y) = int_{x0}^{x} dt / f(t) - int_{y0}^{y} g(s) ds, level 0.
ImplicitSolution solve_separable(Fn1 f, Fn1 g, double x0, double y0);

/// Points of the level set, one per x on a uniform grid, continued from the seed by Newton in y.
std::vector<Point> trace_level_set(const ImplicitSolution& sol, double x_lo, double x_hi, int samples);

/// Writes "x,y" rows with a header line, 17 significant digits.
void write_csv(std::ostream& os, const std::vector<Point>& points);

/// x from (2b^2 y - 2a^3)/(3b^2) sqrt(b^2 y - a^3) = x sqrt(a^3).
double isochrone_closed_form(double a, double b, double y);

/// y = x p + g(p).
struct ClairautFamily {
  Fn1 g;
  Fn1 g_p;
  Fn1 g_pp;  // optional; estimated by central differences of g_p when empty
};

struct EnvelopePoint {
  double p, x, y;
  bool degenerate;  // |g''(p)| < 1e-12
};

struct Envelope {
  std::vector<EnvelopePoint> points;
  bool degenerate = false;  // every sample degenerate
};

inline constexpr double kEnvelopeDegeneracy = 1e-12;

/// x(p) = -g'(p), y(p) = x(p) p + g(p) for `samples` uniform p values.
Envelope clairaut_envelope(const ClairautFamily& family, double p_lo, double p_hi, int samples);

/// u' = coeff(x) u + source(x).
struct LinearFirstOrder {
  Fn1 coeff;
  Fn1 source;
};

/// z' + z^2 = a x^n with a known particular solution v. The substitution
/// z = v + 1/u gives u' = 2 v u + 1. v is checked on [x_lo, x_hi].
LinearFirstOrder riccati_linearize(double a, double n, Fn1 v, Fn1 v_prime, double x_lo, double x_hi);

struct RiccatiOptions {
  int subintervals = 64;
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
};

/// z(x) for z' + z^2 = a x^n, z(x0) = z0, via u = 1/(z - v) and integrating-factor quadrature.
/// Throws PoleDetected if u changes sign between x0 and x.
double riccati_solve(double a, double n, Fn1 v, Fn1 v_prime, double x0, double z0, double x,
                     const RiccatiOptions& opts = {});

inline constexpr double kRiccatiGate = 1e-8;

namespace detail {

/// Same as the public pair with a general forcing r(x) in place of a x^n.
LinearFirstOrder riccati_linearize_forced(Fn1 forcing, Fn1 v, Fn1 v_prime, double x_lo, double x_hi);
double riccati_solve_forced(Fn1 forcing, Fn1 v, Fn1 v_prime, double x0, double z0, double x,
                            const RiccatiOptions& opts = {});

}  // namespace detail

/// Adaptive Dormand-Prince integration with relative and absolute tolerance tol.
ivp::State integrate_ivp(const ivp::Rhs& rhs, double x0, ivp::State y0, double x1, double tol);

}  // namespace eulerkit::firstorder
