#include "eulerkit/variational.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "eulerkit/error.hpp"
#include "eulerkit/quadrature.hpp"
#include "eulerkit/spline.hpp"

namespace eulerkit::variational {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kPartialStep = 1e-4;
constexpr double kResidualStep = 1e-3;
constexpr double kCurvature = 0.9;

double step_for(double v, double base) { return base * std::max(1.0, std::abs(v)); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// d/dv of g at v by the fourth-order central stencil.
template <class G>
double diff4(G&& g, double v, double base) {
  return numdiff::central4(g, v, step_for(v, base));
}

void validate(const PathFunctional& fn) {
  if (fn.dim < 1 || fn.dim > 3) throw InvalidInput("path dimension must be 1, 2 or 3");
  if (!fn.F) throw InvalidInput("path functional needs an integrand");
  if (!(fn.t0 < fn.t1)) throw InvalidInput("path functional needs t0 < t1");
  if (static_cast<int>(fn.A.size()) != fn.dim || static_cast<int>(fn.B.size()) != fn.dim) {
    throw InvalidInput("endpoint vectors must have the path dimension");
  }
  if (!all_finite(fn.A) || !all_finite(fn.B)) throw InvalidInput("endpoints must be finite");
}

void validate(const Functional1D& fn) {
  if (!fn.f) throw InvalidInput("functional needs an integrand");
  if (!(fn.x1 < fn.x2)) throw InvalidInput("functional needs x1 < x2");
  if (!std::isfinite(fn.y1) || !std::isfinite(fn.y2)) throw InvalidInput("boundary values must be finite");
}

Integrand partial_y(const Functional1D& fn) {
  if (fn.f_y) return fn.f_y;
  return [f = fn.f](double x, double y, double p) {
    return diff4([&](double v) { return f(x, v, p); }, y, kResidualStep);
  };
}

Integrand partial_yp(const Functional1D& fn) {
  if (fn.f_yp) return fn.f_yp;
  return [f = fn.f](double x, double y, double p) {
    return diff4([&](double v) { return f(x, y, v); }, p, kResidualStep);
  };
}

}  // namespace

namespace {

double value_or_nan(const DiscreteObjective& obj, const DiscretePath& p) {
  try {
    return obj.value(p);
  } catch (const DomainError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

Vec gradient_or_nan(const DiscreteObjective& obj, const DiscretePath& p) {
  try {
    return obj.gradient(p);
  } catch (const DomainError&) {
    return Vec(obj.size(), std::numeric_limits<double>::quiet_NaN());
  }
}

}  // namespace

PathFunctional as_path(const Functional1D& fn) {
  validate(fn);
  PathFunctional out;
  out.dim = 1;
  out.F = [f = fn.f](double t, std::span<const double> x, std::span<const double> xd) { return f(t, x[0], xd[0]); };
  if (fn.f_y) {
    out.F_x = [g = fn.f_y](double t, std::span<const double> x, std::span<const double> xd, std::span<double> o) {
      o[0] = g(t, x[0], xd[0]);
    };
  }
  if (fn.f_yp) {
    out.F_xdot = [g = fn.f_yp](double t, std::span<const double> x, std::span<const double> xd,
                               std::span<double> o) { o[0] = g(t, x[0], xd[0]); };
  }
  out.t0 = fn.x1;
  out.t1 = fn.x2;
  out.A = {fn.y1};
  out.B = {fn.y2};
  return out;
}

Vec DiscretePath::coordinate(int i) const {
  Vec c(N + 1);
  for (int k = 0; k <= N; ++k) c[k] = at(k, i);
  return c;
}

DiscretePath linear_path(const PathFunctional& fn, int N) {
  validate(fn);
  if (N < 2) throw InvalidInput("discretization needs N >= 2");
  DiscretePath p{fn.t0, fn.t1, N, fn.dim, Vec(static_cast<std::size_t>(N + 1) * fn.dim)};
  for (int k = 0; k <= N; ++k) {
    const double s = static_cast<double>(k) / N;
    for (int i = 0; i < fn.dim; ++i) p.at(k, i) = fn.A[i] + s * (fn.B[i] - fn.A[i]);
  }
  for (int i = 0; i < fn.dim; ++i) {
    p.at(0, i) = fn.A[i];
    p.at(N, i) = fn.B[i];
  }
  return p;
}

DiscreteObjective::DiscreteObjective(PathFunctional fn, int N) : fn_(std::move(fn)), N_(N) {
  validate(fn_);
  if (N < 2) throw InvalidInput("discretization needs N >= 2");
}

void DiscreteObjective::check_shape(const DiscretePath& path) const {
  if (path.N != N_ || path.dim != fn_.dim ||
      path.ordinates.size() != static_cast<std::size_t>(N_ + 1) * fn_.dim) {
    throw InvalidInput("path shape does not match the discretization");
  }
}

void DiscreteObjective::partials(double t, std::span<const double> x, std::span<const double> xd,
                                 std::span<double> fx, std::span<double> fxd) const {
  if (fn_.F_x) {
    fn_.F_x(t, x, xd, fx);
  } else {
    Vec w(x.begin(), x.end());
    for (int i = 0; i < fn_.dim; ++i) {
      fx[i] = diff4(
          [&](double v) {
            w[i] = v;
            const double r = fn_.F(t, w, xd);
            w[i] = x[i];
            return r;
          },
          x[i], kPartialStep);
    }
  }
  if (fn_.F_xdot) {
    fn_.F_xdot(t, x, xd, fxd);
  } else {
    Vec w(xd.begin(), xd.end());
    for (int i = 0; i < fn_.dim; ++i) {
      fxd[i] = diff4(
          [&](double v) {
            w[i] = v;
            const double r = fn_.F(t, x, w);
            w[i] = xd[i];
            return r;
          },
          xd[i], kPartialStep);
    }
  }
}

double DiscreteObjective::value(const DiscretePath& path) const {
  check_shape(path);
  const int d = fn_.dim;
  const double h = path.step();
  Vec xd(d);
  double sum = 0.0;
  for (int k = 0; k < N_; ++k) {
    std::span<const double> x(&path.ordinates[static_cast<std::size_t>(k) * d], d);
    for (int i = 0; i < d; ++i) xd[i] = (path.at(k + 1, i) - path.at(k, i)) / h;
    sum += h * fn_.F(path.node(k), x, xd);
  }
  return sum;
}

Vec DiscreteObjective::gradient(const DiscretePath& path) const {
  check_shape(path);
  const int d = fn_.dim;
  const double h = path.step();
  Vec fx(static_cast<std::size_t>(N_) * d), fxd(static_cast<std::size_t>(N_) * d), xd(d);
  for (int k = 0; k < N_; ++k) {
    std::span<const double> x(&path.ordinates[static_cast<std::size_t>(k) * d], d);
    for (int i = 0; i < d; ++i) xd[i] = (path.at(k + 1, i) - path.at(k, i)) / h;
    partials(path.node(k), x, xd, std::span<double>(&fx[static_cast<std::size_t>(k) * d], d),
             std::span<double>(&fxd[static_cast<std::size_t>(k) * d], d));
  }
  Vec g(size());
  for (int k = 1; k < N_; ++k) {
    for (int i = 0; i < d; ++i) {
      const std::size_t at = static_cast<std::size_t>(k) * d + i;
      g[at - d] = h * fx[at] + fxd[at - d] - fxd[at];
    }
  }
  return g;
}

double DiscreteObjective::first_variation(const DiscretePath& path, const DiscretePath& direction) const {
  check_shape(path);
  check_shape(direction);
  const int d = fn_.dim;
  const double h = path.step();
  Vec fx(d), fxd(d), xd(d);
  double sum = 0.0;
  for (int k = 0; k < N_; ++k) {
    std::span<const double> x(&path.ordinates[static_cast<std::size_t>(k) * d], d);
    for (int i = 0; i < d; ++i) xd[i] = (path.at(k + 1, i) - path.at(k, i)) / h;
    partials(path.node(k), x, xd, fx, fxd);
    for (int i = 0; i < d; ++i) {
      sum += h * fx[i] * direction.at(k, i) + fxd[i] * (direction.at(k + 1, i) - direction.at(k, i));
    }
  }
  return sum;
}

DiscretePath DiscreteObjective::with_interior(std::span<const double> interior) const {
  if (static_cast<int>(interior.size()) != size()) throw InvalidInput("interior vector has the wrong size");
  DiscretePath p = linear_path(fn_, N_);
  std::copy(interior.begin(), interior.end(), p.ordinates.begin() + fn_.dim);
  return p;
}

Vec DiscreteObjective::interior(const DiscretePath& path) const {
  check_shape(path);
  return Vec(path.ordinates.begin() + fn_.dim, path.ordinates.end() - fn_.dim);
}

DiscreteObjective discretize(const PathFunctional& fn, int N) { return DiscreteObjective(fn, N); }

DiscreteObjective discretize(const Functional1D& fn, int N) { return DiscreteObjective(as_path(fn), N); }

MinimizeResult minimize(const DiscreteObjective& objective, const DiscretePath& init, const MinimizeOptions& opts) {
  if (opts.max_iter < 0 || !(opts.grad_tol > 0.0) || opts.memory < 1 || !(opts.shrink > 0.0 && opts.shrink < 1.0)) {
    throw InvalidInput("invalid minimizer options");
  }
  const auto& fn = objective.functional();
  const int d = objective.dim();
  for (int i = 0; i < d; ++i) {
    if (init.at(0, i) != fn.A[i] || init.at(init.N, i) != fn.B[i]) {
      throw InvalidInput("initial path must satisfy the boundary conditions");
    }
  }

  MinimizeResult res;
  res.path = init;
  Vec x = objective.interior(init);
  const std::size_t n = x.size();

  auto place = [&](DiscretePath& p, std::span<const double> v) {
    std::copy(v.begin(), v.end(), p.ordinates.begin() + d);
  };

  double f = objective.value(res.path);
  Vec g = objective.gradient(res.path);
  if (!std::isfinite(f) || !all_finite(g)) throw NonFiniteIterate("non-finite objective at the initial path", 0);
  res.history.push_back(f);

  std::deque<Vec> S, Y;
  std::deque<double> rho;
  double last_alpha = 0.0;
  DiscretePath trial_path = res.path;
  Vec trial(n), dir(n);

  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    if (max_abs(g) <= opts.grad_tol) break;

    if (opts.step_rule == StepRule::lbfgs && !S.empty()) {
      Vec q = g;
      std::vector<double> a(S.size());
      for (std::size_t j = S.size(); j-- > 0;) {
        a[j] = rho[j] * dot(S[j], q);
        for (std::size_t m = 0; m < n; ++m) q[m] -= a[j] * Y[j][m];
      }
      const double gamma = dot(S.back(), Y.back()) / dot(Y.back(), Y.back());
      for (auto& v : q) v *= gamma;
      for (std::size_t j = 0; j < S.size(); ++j) {
        const double b = rho[j] * dot(Y[j], q);
        for (std::size_t m = 0; m < n; ++m) q[m] += S[j][m] * (a[j] - b);
      }
      for (std::size_t m = 0; m < n; ++m) dir[m] = -q[m];
    } else {
      for (std::size_t m = 0; m < n; ++m) dir[m] = -g[m];
    }
    double slope = dot(g, dir);
    if (!(slope < 0.0)) {
      S.clear();
      Y.clear();
      rho.clear();
      for (std::size_t m = 0; m < n; ++m) dir[m] = -g[m];
      slope = dot(g, dir);
    }

    double alpha;
    if (opts.step_rule == StepRule::lbfgs && !S.empty()) {
      alpha = 1.0;
    } else if (last_alpha > 0.0) {
      alpha = 2.0 * last_alpha;
    } else {
      alpha = 1.0 / std::max(1.0, max_abs(g));
    }

    // Armijo on values, or, once value differences sink into rounding, the approximate
    // Wolfe conditions on phi'(alpha) together with f_new <= f.
    bool accepted = false;
    double f_new = f;
    Vec g_new;
    for (int b = 0; b <= opts.max_backtracks; ++b) {
      for (std::size_t m = 0; m < n; ++m) trial[m] = x[m] + alpha * dir[m];
      if (trial == x) break;
      place(trial_path, trial);
      f_new = value_or_nan(objective, trial_path);
      const double bound = f + opts.armijo * alpha * slope;
      if (std::isfinite(f_new) && bound < f && f_new <= bound) {
        accepted = true;
        break;
      }
      if (std::isfinite(f_new) && f_new <= f) {
        g_new = gradient_or_nan(objective, trial_path);
        const double d_new = dot(g_new, dir);
        if (all_finite(g_new) && d_new <= (2.0 * opts.armijo - 1.0) * slope && d_new >= kCurvature * slope) {
          accepted = true;
          break;
        }
        g_new.clear();
      }
      alpha *= opts.shrink;
    }
    if (!accepted) break;

    if (g_new.empty()) g_new = gradient_or_nan(objective, trial_path);
    if (!all_finite(g_new)) throw NonFiniteIterate("non-finite gradient at iterate " + std::to_string(iter + 1), iter + 1);

    Vec s(n), y(n);
    for (std::size_t m = 0; m < n; ++m) {
      s[m] = trial[m] - x[m];
      y[m] = g_new[m] - g[m];
    }
    const double sy = dot(s, y);
    if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      S.push_back(std::move(s));
      Y.push_back(std::move(y));
      rho.push_back(1.0 / sy);
      if (static_cast<int>(S.size()) > opts.memory) {
        S.pop_front();
        Y.pop_front();
        rho.pop_front();
      }
    }
    x = trial;
    g = std::move(g_new);
    f = f_new;
    last_alpha = alpha;
    place(res.path, x);
    res.history.push_back(f);
  }

  res.iterations = iter;
  res.objective = f;
  res.grad_norm = max_abs(g);
  res.converged = res.grad_norm <= opts.grad_tol;
  return res;
}

double el_residual(const Functional1D& fn, const Trajectory& y, std::span<const double> grid) {
  validate(fn);
  const Integrand fy = partial_y(fn);
  const Integrand fp = partial_yp(fn);
  double worst = 0.0;
  for (double x : grid) {
    const auto j = y(x);
    const double fpx = diff4([&](double v) { return fp(v, j.value, j.d1); }, x, kResidualStep);
    const double fpy = diff4([&](double v) { return fp(x, v, j.d1); }, j.value, kResidualStep);
    const double fpp = diff4([&](double v) { return fp(x, j.value, v); }, j.d1, kResidualStep);
    const double r = fy(x, j.value, j.d1) - (fpx + fpy * j.d1 + fpp * j.d2);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double euler_system_residual(const PathFunctional& fn, const SmoothPath& path, std::span<const double> grid) {
  validate(fn);
  const int d = fn.dim;
  Vec fx(d);
  double worst = 0.0;
  for (double t : grid) {
    const PathJet p = path(t);
    if (static_cast<int>(p.x.size()) != d || static_cast<int>(p.xdot.size()) != d ||
        static_cast<int>(p.xddot.size()) != d) {
      throw InvalidInput("path jet has the wrong dimension");
    }
    if (fn.F_x) {
      fn.F_x(t, p.x, p.xdot, fx);
    } else {
      Vec w = p.x;
      for (int i = 0; i < d; ++i) {
        fx[i] = diff4(
            [&](double v) {
              w[i] = v;
              const double r = fn.F(t, w, p.xdot);
              w[i] = p.x[i];
              return r;
            },
            p.x[i], kPartialStep);
      }
    }
    // d/dt F_xdot along (t + e, x + e xdot, xdot + e xddot): the expanded total derivative.
    const double e = kResidualStep / std::max({1.0, max_abs(p.xdot), max_abs(p.xddot)});
    auto momenta = [&](double eps, std::span<double> out) {
      Vec x(d), xd(d);
      for (int i = 0; i < d; ++i) {
        x[i] = p.x[i] + eps * p.xdot[i];
        xd[i] = p.xdot[i] + eps * p.xddot[i];
      }
      if (fn.F_xdot) {
        fn.F_xdot(t + eps, x, xd, out);
      } else {
        Vec w = xd;
        for (int i = 0; i < d; ++i) {
          out[i] = diff4(
              [&](double v) {
                w[i] = v;
                const double r = fn.F(t + eps, x, w);
                w[i] = xd[i];
                return r;
              },
              xd[i], kPartialStep);
        }
      }
    };
    Vec m2(d), m1(d), p1(d), p2(d);
    momenta(-2 * e, m2);
    momenta(-e, m1);
    momenta(e, p1);
    momenta(2 * e, p2);
    for (int i = 0; i < d; ++i) {
      const double total = (-p2[i] + 8 * p1[i] - 8 * m1[i] + m2[i]) / (12.0 * e);
      worst = std::max(worst, std::abs(fx[i] - total));
    }
  }
  return worst;
}

SmoothPath smooth(const DiscretePath& path) {
  std::vector<NaturalCubicSpline> splines;
  for (int i = 0; i < path.dim; ++i) {
    const Vec c = path.coordinate(i);
    splines.emplace_back(path.t0, path.t1, c);
  }
  return [splines = std::move(splines)](double t) {
    PathJet j;
    for (const auto& s : splines) {
      const auto v = s(t);
      j.x.push_back(v.value);
      j.xdot.push_back(v.d1);
      j.xddot.push_back(v.d2);
    }
    return j;
  };
}

Trajectory smooth_coordinate(const DiscretePath& path, int i) {
  if (i < 0 || i >= path.dim) throw InvalidInput("coordinate index out of range");
  const Vec c = path.coordinate(i);
  return [s = NaturalCubicSpline(path.t0, path.t1, c)](double t) { return s(t); };
}

std::vector<DiscretePath> sine_bumps(const DiscretePath& like, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<DiscretePath> out;
  for (int b = 0; b < count; ++b) {
    DiscretePath H = like;
    std::fill(H.ordinates.begin(), H.ordinates.end(), 0.0);
    for (int i = 0; i < like.dim; ++i) {
      double c[4];
      for (double& v : c) v = coef(rng);
      for (int k = 1; k < like.N; ++k) {
        double s = 0.0;
        for (int m = 1; m <= 4; ++m) s += c[m - 1] * std::sin(m * kPi * k / like.N);
        H.at(k, i) = s;
      }
    }
    out.push_back(std::move(H));
  }
  return out;
}

double variation_gradient_check(const DiscreteObjective& objective, const DiscretePath& path, double h,
                                std::span<const DiscretePath> directions) {
  if (!(h > 0.0)) throw InvalidInput("variation step must be positive");
  const double J0 = objective.value(path);
  double worst = 0.0;
  for (const auto& H : directions) {
    for (int i = 0; i < H.dim; ++i) {
      if (H.at(0, i) != 0.0 || H.at(H.N, i) != 0.0) {
        throw InvalidInput("variation direction must vanish at both endpoints");
      }
    }
    DiscretePath moved = path;
    for (std::size_t m = 0; m < moved.ordinates.size(); ++m) moved.ordinates[m] += h * H.ordinates[m];
    const double fd = (objective.value(moved) - J0) / h;
    const double an = objective.first_variation(path, H);
    worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), std::numeric_limits<double>::min()));
  }
  return worst;
}

double variation_gradient_check(const DiscreteObjective& objective, const DiscretePath& path, double h,
                                std::uint64_t seed) {
  const auto bumps = sine_bumps(path, 10, seed);
  return variation_gradient_check(objective, path, h, bumps);
}

double quartic_bump(const Interval& support, double x) {
  if (x <= support.lo || x >= support.hi) return 0.0;
  const double a = (x - support.lo) * (x - support.hi);
  return a * a * a * a;
}

double fundamental_lemma_probe(const std::function<double(double)>& phi, std::span<const Interval> supports) {
  quad::Options o;
  o.abs_tol = 1e-18;
  o.rel_tol = 1e-12;
  double worst = 0.0;
  for (const auto& s : supports) {
    if (!(s.lo < s.hi)) throw InvalidInput("bump support must have lo < hi");
    const auto r = quad::gauss_kronrod([&](double x) { return quartic_bump(s, x) * phi(x); }, s.lo, s.hi, o);
    worst = std::max(worst, std::abs(r.value));
  }
  return worst;
}

double fundamental_lemma_probe(const std::function<double(double)>& phi, double x0, double x1, int bumps) {
  if (bumps < 1) throw InvalidInput("probe needs at least one bump");
  if (!(x0 < x1)) throw InvalidInput("probe needs x0 < x1");
  std::vector<Interval> supports;
  for (int b = 0; b < bumps; ++b) {
    supports.push_back({x0 + (x1 - x0) * b / bumps, b + 1 == bumps ? x1 : x0 + (x1 - x0) * (b + 1) / bumps});
  }
  return fundamental_lemma_probe(phi, supports);
}

SurfaceJet SurfaceJet::plane(double a, double b, double c) {
  return {[=](double x, double y) { return a * x + b * y + c; }, [=](double, double) { return a; },
          [=](double, double) { return b; },          [](double, double) { return 0.0; },
          [](double, double) { return 0.0; },         [](double, double) { return 0.0; }};
}

SurfaceJet SurfaceJet::hemisphere(double R) {
  if (!(R > 0.0)) throw InvalidInput("hemisphere radius must be positive");
  auto z = [R](double x, double y) {
    const double w = R * R - x * x - y * y;
    if (!(w > 0.0)) throw DomainError("point lies outside the open hemisphere");
    return std::sqrt(w);
  };
  return {z,
          [z](double x, double y) { return -x / z(x, y); },
          [z](double x, double y) { return -y / z(x, y); },
          [z, R](double x, double y) { return -(R * R - y * y) / std::pow(z(x, y), 3); },
          [z](double x, double y) { return -x * y / std::pow(z(x, y), 3); },
          [z, R](double x, double y) { return -(R * R - x * x) / std::pow(z(x, y), 3); }};
}

SurfaceJet SurfaceJet::numeric(std::function<double(double, double)> z, double step) {
  if (!z) throw InvalidInput("surface needs z");
  if (!(step > 0.0)) throw InvalidInput("step must be positive");
  SurfaceJet j;
  j.z = z;
  j.p = [z, step](double x, double y) {
    return numdiff::central4([&](double v) { return z(v, y); }, x, step_for(x, step));
  };
  j.q = [z, step](double x, double y) {
    return numdiff::central4([&](double v) { return z(x, v); }, y, step_for(y, step));
  };
  j.r = [z, step](double x, double y) {
    const double h = step_for(x, step) * 10;
    return (z(x + h, y) - 2 * z(x, y) + z(x - h, y)) / (h * h);
  };
  j.t = [z, step](double x, double y) {
    const double h = step_for(y, step) * 10;
    return (z(x, y + h) - 2 * z(x, y) + z(x, y - h)) / (h * h);
  };
  j.s = [z, step](double x, double y) {
    const double hx = step_for(x, step) * 10, hy = step_for(y, step) * 10;
    return (z(x + hx, y + hy) - z(x + hx, y - hy) - z(x - hx, y + hy) + z(x - hx, y - hy)) / (4 * hx * hy);
  };
  return j;
}

double mixed_partial_asymmetry(const std::function<double(double, double)>& z, double x, double y, double step) {
  const double hx = step_for(x, step), hy = step_for(y, step);
  auto zy = [&](double u) { return (z(u, y + hy) - z(u, y - hy)) / (2 * hy); };
  auto zx = [&](double v) { return (z(x + hx, v) - z(x - hx, v)) / (2 * hx); };
  const double zxy = (zy(x + hx) - zy(x - hx)) / (2 * hx);
  const double zyx = (zx(y + hy) - zx(y - hy)) / (2 * hy);
  return std::abs(zxy - zyx);
}

PathFunctional geodesic_functional(const SurfaceJet& surface, std::span<const double> A, std::span<const double> B) {
  if (A.size() != 2 || B.size() != 2) throw InvalidInput("geodesic endpoints are points in the (x, y) plane");
  if (!surface.p || !surface.q) throw InvalidInput("surface needs p and q");
  PathFunctional fn;
  fn.dim = 2;
  fn.t0 = 0.0;
  fn.t1 = 1.0;
  fn.A.assign(A.begin(), A.end());
  fn.B.assign(B.begin(), B.end());
  const SurfaceJet S = surface;
  fn.F = [S](double, std::span<const double> x, std::span<const double> v) {
    const double lift = S.p(x[0], x[1]) * v[0] + S.q(x[0], x[1]) * v[1];
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + lift * lift);
  };
  if (S.r && S.s && S.t) {
    fn.F_x = [S](double, std::span<const double> x, std::span<const double> v, std::span<double> o) {
      const double p = S.p(x[0], x[1]), q = S.q(x[0], x[1]);
      const double lift = p * v[0] + q * v[1];
      const double F = std::sqrt(v[0] * v[0] + v[1] * v[1] + lift * lift);
      const double r = S.r(x[0], x[1]), s = S.s(x[0], x[1]), t = S.t(x[0], x[1]);
      o[0] = lift * (r * v[0] + s * v[1]) / F;
      o[1] = lift * (s * v[0] + t * v[1]) / F;
    };
  }
  fn.F_xdot = [S](double, std::span<const double> x, std::span<const double> v, std::span<double> o) {
    const double p = S.p(x[0], x[1]), q = S.q(x[0], x[1]);
    const double lift = p * v[0] + q * v[1];
    const double F = std::sqrt(v[0] * v[0] + v[1] * v[1] + lift * lift);
    o[0] = (v[0] + lift * p) / F;
    o[1] = (v[1] + lift * q) / F;
  };
  return fn;
}

PathFunctional geodesic_energy(const SurfaceJet& surface, std::span<const double> A, std::span<const double> B) {
  PathFunctional fn = geodesic_functional(surface, A, B);
  const SurfaceJet S = surface;
  fn.F = [S](double, std::span<const double> x, std::span<const double> v) {
    const double lift = S.p(x[0], x[1]) * v[0] + S.q(x[0], x[1]) * v[1];
    return v[0] * v[0] + v[1] * v[1] + lift * lift;
  };
  fn.F_x = nullptr;
  if (S.r && S.s && S.t) {
    fn.F_x = [S](double, std::span<const double> x, std::span<const double> v, std::span<double> o) {
      const double lift = S.p(x[0], x[1]) * v[0] + S.q(x[0], x[1]) * v[1];
      const double r = S.r(x[0], x[1]), s = S.s(x[0], x[1]), t = S.t(x[0], x[1]);
      o[0] = 2 * lift * (r * v[0] + s * v[1]);
      o[1] = 2 * lift * (s * v[0] + t * v[1]);
    };
  }
  fn.F_xdot = [S](double, std::span<const double> x, std::span<const double> v, std::span<double> o) {
    const double p = S.p(x[0], x[1]), q = S.q(x[0], x[1]);
    const double lift = p * v[0] + q * v[1];
    o[0] = 2 * (v[0] + lift * p);
    o[1] = 2 * (v[1] + lift * q);
  };
  return fn;
}

Functional1D dirichlet(double x1, double x2, double y1, double y2, std::function<double(double)> load) {
  Functional1D fn;
  if (load) {
    fn.f = [load](double x, double y, double p) { return 0.5 * p * p - load(x) * y; };
    fn.f_y = [load](double x, double, double) { return -load(x); };
  } else {
    fn.f = [](double, double, double p) { return 0.5 * p * p; };
    fn.f_y = [](double, double, double) { return 0.0; };
  }
  fn.f_yp = [](double, double, double p) { return p; };
  fn.x1 = x1;
  fn.x2 = x2;
  fn.y1 = y1;
  fn.y2 = y2;
  validate(fn);
  return fn;
}

Functional1D arclength(double x1, double x2, double y1, double y2) {
  Functional1D fn;
  fn.f = [](double, double, double p) { return std::sqrt(1.0 + p * p); };
  fn.f_y = [](double, double, double) { return 0.0; };
  fn.f_yp = [](double, double, double p) { return p / std::sqrt(1.0 + p * p); };
  fn.x1 = x1;
  fn.x2 = x2;
  fn.y1 = y1;
  fn.y2 = y2;
  validate(fn);
  return fn;
}

Functional1D brachistochrone(double x1, double x2, double y1, double y2) {
  if (!(y1 > 0.0) || !(y2 > 0.0)) throw DomainError("brachistochrone ordinates must be positive (measured downward)");
  Functional1D fn;
  fn.f = [](double, double y, double p) { return std::sqrt((1.0 + p * p) / y); };
  fn.f_y = [](double, double y, double p) { return -0.5 * std::sqrt(1.0 + p * p) / (y * std::sqrt(y)); };
  fn.f_yp = [](double, double y, double p) { return p / (std::sqrt(1.0 + p * p) * std::sqrt(y)); };
  fn.x1 = x1;
  fn.x2 = x2;
  fn.y1 = y1;
  fn.y2 = y2;
  validate(fn);
  return fn;
}

}  // namespace eulerkit::variational
