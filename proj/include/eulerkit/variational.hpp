#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "eulerkit/numdiff.hpp"

namespace eulerkit::variational {

using Vec = std::vector<double>;

/// f(x, y, y')
using Integrand = std::function<double(double, double, double)>;

/// J = int_{x1}^{x2} f(x, y, y') dx with y(x1) = y1, y(x2) = y2.
/// Empty partials are replaced by fourth-order central differences.
struct Functional1D {
  Integrand f;
  Integrand f_y;
  Integrand f_yp;
  double x1 = 0.0, x2 = 1.0;
  double y1 = 0.0, y2 = 0.0;
};

/// F(t, x, xdot) for x in R^d.
using PathIntegrand = std::function<double(double, std::span<const double>, std::span<const double>)>;
/// Writes the d partials of F with respect to x (or xdot) into the last argument.
using PathPartial =
    std::function<void(double, std::span<const double>, std::span<const double>, std::span<double>)>;

struct PathFunctional {
  int dim = 1;
  PathIntegrand F;
  PathPartial F_x;
  PathPartial F_xdot;
  double t0 = 0.0, t1 = 1.0;
  Vec A, B;
};

/// The d = 1 path functional with the same integrand, partials and boundary data.
PathFunctional as_path(const Functional1D& fn);

/// Ordinates on N+1 uniform nodes, stored node-major: at(k, i) = ordinates[k*dim + i].
struct DiscretePath {
  double t0 = 0.0, t1 = 1.0;
  int N = 0;
  int dim = 1;
  Vec ordinates;

  double step() const { return (t1 - t0) / N; }
  double node(int k) const { return k == N ? t1 : t0 + k * step(); }
  double& at(int k, int i) { return ordinates[static_cast<std::size_t>(k) * dim + i]; }
  double at(int k, int i) const { return ordinates[static_cast<std::size_t>(k) * dim + i]; }
  /// Ordinates of coordinate i at every node.
  Vec coordinate(int i) const;
};

/// Straight line between the boundary values.
DiscretePath linear_path(const PathFunctional& fn, int N);

/// Left-node forward-difference sum
///   J_N = sum_{k=0}^{N-1} h F(t_k, x_k, (x_{k+1} - x_k)/h)
/// as a function of the interior ordinates. Its gradient with respect to x_k is
///   h F_x(k) + F_xdot(k-1) - F_xdot(k).
class DiscreteObjective {
 public:
  DiscreteObjective(PathFunctional fn, int N);

  const PathFunctional& functional() const { return fn_; }
  int N() const { return N_; }
  int dim() const { return fn_.dim; }
  /// Number of free ordinates, (N-1)*dim.
  int size() const { return (N_ - 1) * fn_.dim; }

  double value(const DiscretePath& path) const;
  /// Gradient with respect to the interior ordinates, node-major.
  Vec gradient(const DiscretePath& path) const;
  /// sum_k h (F_x(k) . H_k + F_xdot(k) . (H_{k+1} - H_k)/h) for a direction H given on all nodes.
  double first_variation(const DiscretePath& path, const DiscretePath& direction) const;

  DiscretePath with_interior(std::span<const double> interior) const;
  Vec interior(const DiscretePath& path) const;

 private:
  void partials(double t, std::span<const double> x, std::span<const double> xd, std::span<double> fx,
                std::span<double> fxd) const;
  void check_shape(const DiscretePath& path) const;

  PathFunctional fn_;
  int N_;
};

DiscreteObjective discretize(const PathFunctional& fn, int N);
DiscreteObjective discretize(const Functional1D& fn, int N);

enum class StepRule { gradient_descent, lbfgs };

struct MinimizeOptions {
  int max_iter = 20000;
  double grad_tol = 1e-7;
  StepRule step_rule = StepRule::lbfgs;
  int memory = 8;
  double armijo = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 60;
};

struct MinimizeResult {
  DiscretePath path;
  bool converged = false;
  int iterations = 0;
  double objective = 0.0;
  double grad_norm = 0.0;  // max-norm
  Vec history;             // objective at the start and after each accepted step
};

/// Line-search descent from init. A step is accepted on the Armijo condition, or, when
/// the required decrease is below rounding, on f_new <= f plus the approximate Wolfe
/// conditions on the directional derivative; the objective never increases. Trial points
/// with non-finite values or a DomainError are failed trials. Endpoint ordinates are
/// copied from init untouched. Throws NonFiniteIterate if an accepted iterate has a
/// non-finite objective or gradient.
MinimizeResult minimize(const DiscreteObjective& objective, const DiscretePath& init,
                        const MinimizeOptions& opts = {});

/// y(x) with first and second derivatives.
using Trajectory = std::function<numdiff::Jet(double)>;

/// max over grid of |f_y - (f_{y'x} + f_{y'y} y' + f_{y'y'} y'')|.
double el_residual(const Functional1D& fn, const Trajectory& y, std::span<const double> grid);

struct PathJet {
  Vec x, xdot, xddot;
};
using SmoothPath = std::function<PathJet(double)>;

/// max over coordinates and grid of |F_{x^i} - d/dt F_{xdot^i}|, the total derivative
/// expanded through x(t), xdot(t) and xddot(t).
double euler_system_residual(const PathFunctional& fn, const SmoothPath& path, std::span<const double> grid);

/// Natural cubic interpolation of every coordinate.
SmoothPath smooth(const DiscretePath& path);
Trajectory smooth_coordinate(const DiscretePath& path, int i = 0);

/// Largest relative gap between (J(x + h H) - J(x))/h and the assembled first variation
/// over the given directions. Each direction must vanish at both endpoints.
double variation_gradient_check(const DiscreteObjective& objective, const DiscretePath& path, double h,
                                std::span<const DiscretePath> directions);

/// Same, over 10 seeded directions sum_m c_m sin(m pi (t - t0)/(t1 - t0)), m = 1..4.
double variation_gradient_check(const DiscreteObjective& objective, const DiscretePath& path, double h,
                                std::uint64_t seed = 1);

std::vector<DiscretePath> sine_bumps(const DiscretePath& like, int count, std::uint64_t seed);

struct Interval {
  double lo, hi;
};

/// eta(x) = (x - lo)^4 (x - hi)^4 on [lo, hi], zero elsewhere.
double quartic_bump(const Interval& support, double x);

/// max over the supports of |int eta phi dx|.
double fundamental_lemma_probe(const std::function<double(double)>& phi, std::span<const Interval> supports);

/// Bumps on `bumps` equal subintervals of [x0, x1].
double fundamental_lemma_probe(const std::function<double(double)>& phi, double x0, double x1, int bumps);

/// z(x, y) with p = z_x, q = z_y, r = z_xx, s = z_xy, t = z_yy.
struct SurfaceJet {
  std::function<double(double, double)> z, p, q, r, s, t;

  static SurfaceJet plane(double a, double b, double c = 0.0);
  /// Upper hemisphere of radius R about the origin.
  static SurfaceJet hemisphere(double R = 1.0);
  /// Partials by central differences of z.
  static SurfaceJet numeric(std::function<double(double, double)> z, double step = 1e-4);
};

/// |z_xy - z_yx| with each mixed partial taken as a nested central difference in its own order.
double mixed_partial_asymmetry(const std::function<double(double, double)>& z, double x, double y,
                               double step = 1e-4);

/// Arc length of (x(t), y(t), z(x, y)) for t in [0, 1]:
///   F = sqrt(xdot^2 + ydot^2 + (p xdot + q ydot)^2).
PathFunctional geodesic_functional(const SurfaceJet& surface, std::span<const double> A,
                                   std::span<const double> B);

/// Energy of the lifted path, E = xdot^2 + ydot^2 + (p xdot + q ydot)^2. Its minimizers are
/// the length minimizers traversed at constant speed, and its discretization stays smooth
/// where the length sum has kinks at coincident nodes.
PathFunctional geodesic_energy(const SurfaceJet& surface, std::span<const double> A, std::span<const double> B);

/// f = y'^2/2 - load(x) y. With an empty load this is the Dirichlet energy y'^2/2.
Functional1D dirichlet(double x1, double x2, double y1, double y2, std::function<double(double)> load = {});
/// f = sqrt(1 + y'^2).
Functional1D arclength(double x1, double x2, double y1, double y2);
/// f = sqrt((1 + y'^2)/y), y measured downward.
Functional1D brachistochrone(double x1, double x2, double y1, double y2);

inline constexpr double kBrachistochroneStartOffset = 1e-3;

}  // namespace eulerkit::variational
