#include "eulerkit/firstorder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "eulerkit/error.hpp"
#include "eulerkit/numdiff.hpp"
#include "eulerkit/quadrature.hpp"

namespace eulerkit::firstorder {

namespace {

bool finite_call(const Fn2& f, double x, double y, double& out) {
  try {
    out = f(x, y);
  } catch (const std::exception&) {
    return false;
  }
  return std::isfinite(out);
}

quad::Options tight() {
  quad::Options o;
  o.abs_tol = 1e-13;
  o.rel_tol = 1e-13;
  return o;
}

// Throws SingularIntegrand if f vanishes or is non-finite somewhere on [a, b].
void require_nonvanishing(const Fn1& f, double a, double b) {
  constexpr int kSamples = 128;
  const double lo = std::min(a, b), hi = std::max(a, b);
  double prev_x = lo, prev = f(lo);
  auto bad = [](double v) { return v == 0.0 || !std::isfinite(v); };
  if (bad(prev)) throw SingularIntegrand("1/f is singular at x = " + std::to_string(lo), lo, lo);
  for (int k = 1; k <= kSamples; ++k) {
    const double x = lo + (hi - lo) * k / kSamples;
    const double v = f(x);
    if (bad(v)) throw SingularIntegrand("1/f is singular at x = " + std::to_string(x), prev_x, x);
    if ((v > 0.0) != (prev > 0.0)) {
      double l = prev_x, r = x, fl = prev;
      for (int it = 0; it < 60; ++it) {
        const double m = 0.5 * (l + r);
        const double fm = f(m);
        if (bad(fm)) {
          l = r = m;
          break;
        }
        if ((fm > 0.0) == (fl > 0.0)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      throw SingularIntegrand("f changes sign inside the quadrature interval near x = " + std::to_string(l), l, r);
    }
    prev_x = x;
    prev = v;
  }
}

double power(double x, double n) {
  const double v = std::pow(x, n);
  if (!std::isfinite(v)) throw InvalidInput("a x^n is not finite at x = " + std::to_string(x));
  return v;
}

}  // namespace

ExactnessReport exactness_check(const PlaneField& field, int grid_n, double tol) {
  if (grid_n < 2) throw InvalidInput("exactness grid needs grid_n >= 2");
  if (!(tol >= 0.0)) throw InvalidInput("exactness tolerance must be non-negative");
  if (!field.M || !field.N) throw InvalidInput("exactness check needs both M and N");
  const Rect& d = field.domain;
  if (!(d.x_lo < d.x_hi) || !(d.y_lo < d.y_hi) || !std::isfinite(d.x_hi - d.x_lo) ||
      !std::isfinite(d.y_hi - d.y_lo)) {
    throw InvalidInput("exactness domain must be a finite nonempty rectangle");
  }
  ExactnessReport rep;
  rep.step_x = (d.x_hi - d.x_lo) * 1e-5;
  rep.step_y = (d.y_hi - d.y_lo) * 1e-5;
  for (int i = 0; i < grid_n; ++i) {
    const double x = d.x_lo + (d.x_hi - d.x_lo) * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double y = d.y_lo + (d.y_hi - d.y_lo) * j / (grid_n - 1);
      double mp, mm, np, nm;
      if (!finite_call(field.M, x, y + rep.step_y, mp) || !finite_call(field.M, x, y - rep.step_y, mm) ||
          !finite_call(field.N, x + rep.step_x, y, np) || !finite_call(field.N, x - rep.step_x, y, nm)) {
        rep.excluded.push_back({x, y});
        continue;
      }
      const double dev = std::abs((mp - mm) / (2.0 * rep.step_y) - (np - nm) / (2.0 * rep.step_x));
      rep.max_deviation = std::max(rep.max_deviation, dev);
      ++rep.evaluated;
    }
  }
  if (rep.evaluated == 0) {
    rep.max_deviation = std::numeric_limits<double>::infinity();
    rep.exact = false;
    return rep;
  }
  rep.exact = rep.max_deviation <= tol;
  return rep;
}

ImplicitSolution solve_separable(Fn1 f, Fn1 g, double x0, double y0) {
  if (!f || !g) throw InvalidInput("separable solve needs f and g");
  if (!std::isfinite(x0) || !std::isfinite(y0)) throw InvalidInput("seed must be finite");
  const double f0 = f(x0), g0 = g(y0);
  if (f0 == 0.0 || !std::isfinite(f0)) throw SingularIntegrand("f vanishes at the seed", x0, x0);
  if (!std::isfinite(g0)) throw InvalidInput("g is not finite at the seed");

  ImplicitSolution s;
  s.seed = {x0, y0};
  s.level = 0.0;
  s.H = [f, g, x0, y0](double x, double y) {
    require_nonvanishing(f, x0, x);
    const double ix = quad::integrate([&](double t) { return 1.0 / f(t); }, x0, x, tight()).value;
    const double iy = quad::integrate([&](double t) { return g(t); }, y0, y, tight()).value;
    return ix - iy;
  };
  s.H_x = [f](double x, double) { return 1.0 / f(x); };
  s.H_y = [g](double, double y) { return -g(y); };
  return s;
}

std::vector<Point> trace_level_set(const ImplicitSolution& sol, double x_lo, double x_hi, int samples) {
  if (samples < 2 || !(x_lo < x_hi)) throw InvalidInput("level-set trace needs samples >= 2 and x_lo < x_hi");
  if (!sol.H || !sol.H_x || !sol.H_y) throw InvalidInput("level-set trace needs H and its gradient");
  std::vector<Point> pts(samples);
  for (int k = 0; k < samples; ++k) pts[k].x = x_lo + (x_hi - x_lo) * k / (samples - 1);

  auto newton = [&](double x, double from_x, double from_y) {
    const double slope = -sol.H_x(from_x, from_y) / sol.H_y(from_x, from_y);
    double y = from_y + slope * (x - from_x);
    for (int it = 0; it < 50; ++it) {
      const double step = (sol.H(x, y) - sol.level) / sol.H_y(x, y);
      if (!std::isfinite(step)) break;
      y -= step;
      if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(y))) return y;
    }
    throw NumericFailure("level set could not be continued to x = " + std::to_string(x));
  };

  const auto start = std::min_element(pts.begin(), pts.end(), [&](const Point& l, const Point& r) {
    return std::abs(l.x - sol.seed.x) < std::abs(r.x - sol.seed.x);
  }) - pts.begin();
  double px = sol.seed.x, py = sol.seed.y;
  for (auto k = start; k < samples; ++k) {
    pts[k].y = newton(pts[k].x, px, py);
    px = pts[k].x;
    py = pts[k].y;
  }
  px = sol.seed.x;
  py = sol.seed.y;
  for (auto k = start - 1; k >= 0; --k) {
    pts[k].y = newton(pts[k].x, px, py);
    px = pts[k].x;
    py = pts[k].y;
  }
  return pts;
}

void write_csv(std::ostream& os, const std::vector<Point>& points) {
  const auto old = os.precision(17);
  os << "x,y\n";
  for (const auto& p : points) os << p.x << ',' << p.y << '\n';
  os.precision(old);
}

double isochrone_closed_form(double a, double b, double y) {
  if (!(a > 0.0) || b == 0.0 || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(y)) {
    throw InvalidInput("isochrone needs finite a > 0 and b != 0");
  }
  double r = b * b * y - a * a * a;
  // Rounding at the cusp y = a^3/b^2 may leave a radicand of a few ulps below zero.
  if (r < 0.0 && r >= -4.0 * std::numeric_limits<double>::epsilon() * a * a * a) r = 0.0;
  if (r < 0.0) throw DomainError("isochrone needs b^2 y - a^3 >= 0");
  return (2.0 * r / (3.0 * b * b)) * std::sqrt(r) / std::sqrt(a * a * a);
}

Envelope clairaut_envelope(const ClairautFamily& family, double p_lo, double p_hi, int samples) {
  if (samples < 2) throw InvalidInput("envelope needs samples >= 2");
  if (!(p_lo < p_hi) || !std::isfinite(p_hi - p_lo)) throw InvalidInput("envelope needs a finite p interval");
  if (!family.g || !family.g_p) throw InvalidInput("Clairaut family needs g and g'");
  Envelope env;
  env.degenerate = true;
  for (int k = 0; k < samples; ++k) {
    const double p = p_lo + (p_hi - p_lo) * k / (samples - 1);
    const double gp = family.g_p(p);
    const double gpp = family.g_pp ? family.g_pp(p)
                                   : numdiff::central(family.g_p, p, numdiff::scaled_step(p, 1e-5));
    const double x = -gp;
    const double y = x * p + family.g(p);
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(gpp)) {
      throw NumericFailure("Clairaut family is not finite at p = " + std::to_string(p));
    }
    const bool deg = std::abs(gpp) < kEnvelopeDegeneracy;
    env.degenerate = env.degenerate && deg;
    env.points.push_back({p, x, y, deg});
  }
  return env;
}

namespace detail {

LinearFirstOrder riccati_linearize_forced(Fn1 forcing, Fn1 v, Fn1 v_prime, double x_lo, double x_hi) {
  if (!forcing || !v || !v_prime) throw InvalidInput("Riccati linearization needs forcing, v and v'");
  if (!(x_lo <= x_hi) || !std::isfinite(x_hi - x_lo)) throw InvalidInput("Riccati interval must be finite");
  constexpr int kSamples = 64;
  constexpr double kProbeU = 1.3;
  for (int k = 0; k <= kSamples; ++k) {
    const double x = x_lo + (x_hi - x_lo) * k / kSamples;
    const double vv = v(x), vp = v_prime(x), r = forcing(x);
    const double scale = std::max({1.0, std::abs(vp), vv * vv, std::abs(r)});
    const double res = std::abs(vp + vv * vv - r);
    if (!(res <= kRiccatiGate * scale)) {
      throw ResidualCheckFailed("particular solution fails z' + z^2 = r: residual " + std::to_string(res) +
                                    " at x = " + std::to_string(x),
                                res, x);
    }
    // Re-derive: with u' = 2 v u + 1, z = v + 1/u must again solve the equation.
    const double up = 2.0 * vv * kProbeU + 1.0;
    const double z = vv + 1.0 / kProbeU;
    const double zp = vp - up / (kProbeU * kProbeU);
    if (!(std::abs(zp + z * z - r) <= kRiccatiGate * std::max(scale, z * z))) {
      throw NumericFailure("linearized Riccati equation failed its consistency check");
    }
  }
  return {[v](double x) { return 2.0 * v(x); }, [](double) { return 1.0; }};
}

double riccati_solve_forced(Fn1 forcing, Fn1 v, Fn1 v_prime, double x0, double z0, double x,
                            const RiccatiOptions& opts) {
  if (!std::isfinite(x0) || !std::isfinite(z0) || !std::isfinite(x)) throw InvalidInput("Riccati data must be finite");
  if (opts.subintervals < 1) throw InvalidInput("Riccati solve needs at least one subinterval");
  const auto lin = riccati_linearize_forced(forcing, v, v_prime, std::min(x0, x), std::max(x0, x));
  const double v0 = v(x0);
  if (z0 == v0) throw InvalidInput("z0 equals v(x0): u0 = 1/(z0 - v(x0)) is undefined");
  if (x == x0) return z0;

  quad::Options qo;
  qo.abs_tol = opts.abs_tol;
  qo.rel_tol = opts.rel_tol;
  double u = 1.0 / (z0 - v0);
  const int m = opts.subintervals;
  for (int k = 0; k < m; ++k) {
    const double a = x0 + (x - x0) * k / m;
    const double b = k + 1 == m ? x : x0 + (x - x0) * (k + 1) / m;
    // u(b) = e^{P(b)} [u(a) + int_a^b e^{-P(s)} ds],  P(s) = int_a^s coeff.
    auto P = [&](double s) { return quad::integrate(lin.coeff, a, s, qo).value; };
    const double inner = quad::integrate([&](double s) { return std::exp(-P(s)) * lin.source(s); }, a, b, qo).value;
    const double next = std::exp(P(b)) * (u + inner);
    if (!std::isfinite(next)) throw NumericFailure("linearized Riccati solution overflowed");
    if (next == 0.0 || (next > 0.0) != (u > 0.0)) {
      throw PoleDetected("z has a pole between x = " + std::to_string(std::min(a, b)) + " and " +
                             std::to_string(std::max(a, b)),
                         std::min(a, b), std::max(a, b));
    }
    u = next;
  }
  return v(x) + 1.0 / u;
}

}  // namespace detail

LinearFirstOrder riccati_linearize(double a, double n, Fn1 v, Fn1 v_prime, double x_lo, double x_hi) {
  return detail::riccati_linearize_forced([a, n](double x) { return a == 0.0 ? 0.0 : a * power(x, n); }, std::move(v),
                                          std::move(v_prime), x_lo, x_hi);
}

double riccati_solve(double a, double n, Fn1 v, Fn1 v_prime, double x0, double z0, double x,
                     const RiccatiOptions& opts) {
  return detail::riccati_solve_forced([a, n](double t) { return a == 0.0 ? 0.0 : a * power(t, n); }, std::move(v),
                                      std::move(v_prime), x0, z0, x, opts);
}

ivp::State integrate_ivp(const ivp::Rhs& rhs, double x0, ivp::State y0, double x1, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("IVP tolerance must be positive");
  ivp::Options o;
  o.rel_tol = tol;
  o.abs_tol = tol;
  return ivp::dopri5(rhs, x0, std::move(y0), x1, o).y;
}

}  // namespace eulerkit::firstorder
