#include "eulerkit/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "eulerkit/error.hpp"
#include "eulerkit/firstorder.hpp"
#include "eulerkit/ivp.hpp"
#include "eulerkit/linode.hpp"
#include "eulerkit/numdiff.hpp"
#include "eulerkit/specfun.hpp"
#include "eulerkit/variational.hpp"

namespace eulerkit::acceptance {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.77245385090551602730;

class Rng {
 public:
  Rng(std::uint64_t seed, int criterion) : eng_(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(criterion))) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double sign() { return uniform(0, 1) < 0.5 ? -1.0 : 1.0; }

 private:
  std::mt19937_64 eng_;
};

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

Check at_most(std::string name, double measured, double threshold) {
  return {std::move(name), measured, "<=", threshold, measured <= threshold};
}
Check at_least(std::string name, double measured, double threshold) {
  return {std::move(name), measured, ">=", threshold, measured >= threshold};
}
Check above(std::string name, double measured, double threshold) {
  return {std::move(name), measured, ">", threshold, measured > threshold};
}

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// Real roots and conjugate pairs in the disk of radius 3, multiplicities up to 3.
std::vector<polyroots::RootCluster> random_clusters(Rng& g, int max_degree) {
  std::vector<polyroots::RootCluster> out;
  int deg = 0;
  const int target = g.integer(1, max_degree);
  while (deg < target) {
    const int room = target - deg;
    const bool pair = room >= 2 && g.uniform(0, 1) < 0.5;
    const int mult = std::min(g.integer(1, 3), pair ? room / 2 : room);
    if (pair) {
      const auto v = std::polar(g.uniform(0.3, 3.0), g.uniform(0.2, kPi - 0.2));
      out.push_back({v, mult});
      out.push_back({std::conj(v), mult});
      deg += 2 * mult;
    } else {
      out.push_back({polyroots::Complex(g.uniform(-3, 3), 0.0), mult});
      deg += mult;
    }
  }
  return out;
}

double ivp_second_order(double C, double B, double A, const linode::Forcing& X, double y0, double yp0, double x) {
  ivp::Options o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-12;
  auto rhs = [&](double t, const ivp::State& s) -> ivp::State { return {s[1], (X(t) - B * s[1] - A * s[0]) / C}; };
  return ivp::dopri5(rhs, 0.0, {y0, yp0}, x, o).y[0];
}

std::vector<Check> beam(Rng& g) {
  double worst_res = 0.0, worst_end = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double K = g.uniform(0.2, 3.0), l = K * g.uniform(0.5, 6.0), A = g.sign() * g.uniform(0.5, 2.0);
    const auto sol = linode::solve_beam(K, l, A);
    const linode::ConstCoeffODE ode({-1, 0, 0, 0, std::pow(K, 4)});
    worst_res = std::max(worst_res, linode::residual(ode, sol, grid(0, l, 101)) / std::abs(A));
    worst_end = std::max(worst_end, std::abs(linode::evaluate(sol, l, 0).derivatives[0]) / std::abs(A));
  }
  return {at_most("max_residual_over_A", worst_res, 1e-8), at_most("max_abs_y_at_l_over_A", worst_end, 1e-10)};
}

std::vector<Check> characteristic(Rng& g) {
  double worst = 0.0;
  const auto xs = grid(-1, 1, 101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto truth = random_clusters(g, 6);
    std::vector<double> coeffs;
    for (const auto& c : polyroots::expand(truth)) coeffs.push_back(c.real());
    const linode::ConstCoeffODE ode(coeffs);
    const auto gs = linode::solve_homogeneous(ode);
    std::vector<double> c(gs.free_constants());
    for (double& v : c) v = g.uniform(-1, 1);
    worst = std::max(worst, linode::residual(ode, {gs, c, "random", 1.0}, xs));
  }
  return {at_most("max_residual", worst, 1e-7)};
}

std::vector<Check> reduction(Rng& g) {
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double C = g.sign() * g.uniform(0.5, 2), B = g.uniform(-2, 2), A = g.uniform(-3, 3);
    const double w = g.uniform(0.5, 4), ph = g.uniform(0, 2 * kPi), k0 = g.uniform(-1, 1), k1 = g.uniform(-1, 1);
    auto X = [=](double x) { return std::sin(w * x + ph) + k0 * std::exp(-x) + k1 * x * x; };
    const double y0 = g.uniform(-1, 1), yp0 = g.uniform(-1, 1);
    for (double x : {0.25, 0.5, 1.0, 1.5, 2.0}) {
      const double got = linode::reduce_nonhomogeneous_2nd(C, B, A, X, 0, y0, yp0, x);
      worst = std::max(worst, std::abs(got - ivp_second_order(C, B, A, X, y0, yp0, x)));
    }
  }
  return {at_most("max_abs_disagreement", worst, 1e-6)};
}

std::vector<Check> riccati(Rng& g) {
  double worst_res = 0.0, worst_ivp = 0.0;
  int exercised = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const double c0 = g.uniform(-1, 1), c1 = g.uniform(-1, 1), c2 = g.uniform(-0.5, 0.5);
    firstorder::Fn1 v = [=](double x) { return c0 + c1 * x + c2 * x * x; };
    firstorder::Fn1 vp = [=](double x) { return c1 + 2 * c2 * x; };
    firstorder::Fn1 r = [=](double x) { return vp(x) + v(x) * v(x); };
    const double x0 = 0.0, x1 = 2.0, z0 = v(x0) + g.sign() * g.uniform(0.5, 2);
    double end = x1;
    try {
      firstorder::detail::riccati_solve_forced(r, v, vp, x0, z0, x1);
    } catch (const PoleDetected& e) {
      end = e.lo() - 0.1;
    }
    if (end <= x0 + 0.1) continue;
    ++exercised;
    auto z = [&](double x) { return firstorder::detail::riccati_solve_forced(r, v, vp, x0, z0, x); };
    auto rhs = [&](double t, const ivp::State& s) -> ivp::State { return {r(t) - s[0] * s[0]}; };
    for (int k = 1; k <= 5; ++k) {
      const double x = x0 + (end - x0) * k / 6.0;
      const double zx = z(x);
      worst_res = std::max(worst_res, std::abs(numdiff::central4(z, x, 1e-3) + zx * zx - r(x)));
      worst_ivp = std::max(worst_ivp, std::abs(zx - firstorder::integrate_ivp(rhs, x0, {z0}, x, 1e-12)[0]));
    }
  }
  return {at_most("max_riccati_residual", worst_res, 1e-6), at_most("max_ivp_disagreement", worst_ivp, 1e-6),
          at_least("trials_with_pole_free_span", exercised, 8)};
}

std::vector<Check> identities() {
  using specfun::beta_integral;
  std::vector<Check> out;
  out.push_back(at_most("beta_1_1_abs", std::abs(beta_integral(1, 1).value - 1.0), 1e-12));
  out.push_back(at_most("beta_half_half_abs", std::abs(beta_integral(0.5, 0.5).value - kPi), 1e-9));
  double fact[17] = {1.0};
  for (int i = 1; i < 17; ++i) fact[i] = fact[i - 1] * i;
  double worst = 0.0;
  for (int m = 1; m <= 8; ++m) {
    for (int n = 1; n <= 8; ++n) {
      worst = std::max(worst, rel(beta_integral(m, n).value, fact[m - 1] * fact[n - 1] / fact[m + n - 1]));
    }
  }
  out.push_back(at_most("beta_factorial_max_rel", worst, 1e-10));
  out.push_back(at_most("gamma_half_rel", rel(specfun::gamma(0.5), kSqrtPi), 1e-12));
  out.push_back(at_most("gaussian_abs", std::abs(specfun::gaussian_integral_check().value - kSqrtPi / 2), 1e-10));
  worst = 0.0;
  for (int i = 1; i <= 10; ++i) {
    for (int j = 1; j <= 10; ++j) {
      const double p = 0.5 * i, q = 0.5 * j;
      worst = std::max(worst, rel(beta_integral(p, q).value, specfun::beta_gamma(p, q)));
    }
  }
  out.push_back(at_most("beta_integral_vs_gamma_max_rel", worst, 1e-9));
  return out;
}

std::vector<Check> bessel(Rng& g) {
  double worst_agree = 0.0, worst_series = 0.0, worst_integral = 0.0;
  const auto xs = grid(0.1, 2.0, 10);
  for (double n : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const specfun::ChainProblem p{n, -g.uniform(0.3, 3.0), g.uniform(-2.0, 2.0)};
    const double norm = specfun::chain_normalization(n);
    for (int i = 0; i < 10; ++i) {
      const double x = g.uniform(0.0, 5.0);
      const double in = specfun::chain_solution_integral(p, x).value;
      const double s = specfun::chain_solution_series(p, x).value * norm;
      worst_agree = std::max(worst_agree, std::abs(s - in) / std::max(1.0, std::abs(in)));
    }
    const specfun::ChainProblem r{n, -0.8, 1.0};
    auto series = [&](double x) {
      return numdiff::jet6([&](double t) { return specfun::chain_solution_series(r, t).value; }, x, 1e-3);
    };
    auto integral = [&](double x) {
      return numdiff::jet6([&](double t) { return specfun::chain_solution_integral(r, t).value; }, x, 1e-3);
    };
    worst_series = std::max(worst_series, specfun::chain_ode_residual(r, series, xs));
    worst_integral = std::max(worst_integral, specfun::chain_ode_residual(r, integral, xs));
  }
  return {at_most("series_vs_integral_max_rel", worst_agree, 1e-7),
          at_most("series_ode_residual", worst_series, 1e-6),
          at_most("integral_ode_residual", worst_integral, 1e-6)};
}

std::vector<Check> oscillator() {
  const double M = 2.0, K = 8.0, F = 1.0, w = std::sqrt(K / M);
  double worst_formula = 0.0, worst_substitution = 0.0, min_ratio = INFINITY, prev = 0.0;
  bool increasing = true;
  for (double ratio : {0.9, 0.99, 0.999}) {
    const double wa = ratio * w;
    const auto r = linode::forced_oscillator(M, K, F, wa, 1.0);
    const double denom = K - M * wa * wa;
    worst_formula = std::max(worst_formula, rel(r.steady_amplitude, std::abs(F / denom)));
    // X sin(wa t) substituted into M x'' + K x = F sin(wa t)
    const double X = std::copysign(r.steady_amplitude, denom);
    worst_substitution = std::max(worst_substitution, std::abs(denom * X - F) / std::abs(F));
    if (prev > 0) {
      increasing = increasing && r.steady_amplitude > prev;
      min_ratio = std::min(min_ratio, r.steady_amplitude / prev);
    }
    prev = r.steady_amplitude;
  }
  return {at_most("amplitude_vs_formula_max_rel", worst_formula, 1e-10),
          at_most("substitution_residual_rel", worst_substitution, 1e-10),
          at_least("strictly_increasing", increasing ? 1.0 : 0.0, 1.0),
          at_least("min_consecutive_ratio", min_ratio, 9.0)};
}

std::vector<Check> variational_convergence(Rng& g) {
  using namespace variational;
  std::vector<Check> out;

  const double y1 = 0.2, y2 = 1.1;
  const auto arc = arclength(0, 1, y1, y2);
  const auto arc_obj = discretize(arc, 50);
  auto init = linear_path(arc_obj.functional(), 50);
  for (int k = 1; k < 50; ++k) init.at(k, 0) += g.uniform(-0.2, 0.2);
  const auto arc_res = minimize(arc_obj, init);
  double dev = 0.0;
  for (int k = 0; k <= 50; ++k) dev = std::max(dev, std::abs(arc_res.path.at(k, 0) - (y1 + (y2 - y1) * k / 50.0)));
  out.push_back(at_most("arclength_max_dev_N50", arc_res.converged ? dev : INFINITY, 1e-6));

  const double eps = kBrachistochroneStartOffset, yB = 1.0;
  const auto br = brachistochrone(0, 1, eps, yB);
  const auto br_obj = discretize(br, 100);
  MinimizeOptions bo;
  bo.max_iter = 200000;
  bo.grad_tol = 1e-6;
  const auto br_res = minimize(br_obj, linear_path(br_obj.functional(), 100), bo);
  const auto oracle = brachistochrone_shooting(eps, yB, 100);
  double bdev = 0.0;
  for (int k = 0; k <= 100; ++k) bdev = std::max(bdev, std::abs(br_res.path.at(k, 0) - oracle[k]));
  out.push_back(at_most("brachistochrone_max_dev_N100", br_res.converged ? bdev : INFINITY, 1e-3));

  const auto load = dirichlet(0, 1, 0, 0, [](double x) { return kPi * kPi * std::sin(kPi * x); });
  const auto xs = grid(1.0 / 25, 24.0 / 25, 24);
  MinimizeOptions eo;
  eo.grad_tol = 1e-9;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int N : {25, 50, 100}) {
    const auto obj = discretize(load, N);
    const auto res = minimize(obj, linear_path(obj.functional(), N), eo);
    const double lx = std::log(N), ly = std::log(el_residual(load, smooth_coordinate(res.path), xs));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  out.push_back(at_least("el_residual_decay_exponent", -slope, 1.5));
  return out;
}

std::vector<Check> lemma() {
  using namespace variational;
  const double zero = fundamental_lemma_probe([](double) { return 0.0; }, 0, 1, 20);
  auto patch = [](double x) { return x > 0.6 && x < 0.7 ? std::sin(kPi * (x - 0.6) / 0.1) : 0.0; };
  const double hit = fundamental_lemma_probe(patch, 0, 1, 20);
  return {at_most("zero_residual_probe", zero, 1e-14), above("patch_probe", hit, 0.0)};
}

std::vector<Check> geodesics() {
  using namespace variational;
  const std::vector<double> A{0.0, 0.0}, B{1.0, 0.5};
  double straight = 0.0;
  for (const auto& surface : {SurfaceJet::plane(0, 0), SurfaceJet::plane(1, 0), SurfaceJet::plane(0.3, -2)}) {
    const auto fn = geodesic_functional(surface, A, B);
    auto init = linear_path(fn, 40);
    for (int k = 1; k < 40; ++k) {
      init.at(k, 0) += 0.05 * std::sin(3.0 * k);
      init.at(k, 1) += 0.05 * std::cos(5.0 * k);
    }
    const auto res = minimize(discretize(fn, 40), init);
    for (int k = 0; k <= 40; ++k) {
      const double d = std::abs(res.path.at(k, 0) * 0.5 - res.path.at(k, 1)) / std::hypot(1.0, 0.5);
      straight = std::max(straight, res.converged ? d : INFINITY);
    }
  }

  const std::vector<double> HA{0.6, 0.0}, HB{0.0, 0.6};
  const auto energy = geodesic_energy(SurfaceJet::hemisphere(), HA, HB);
  const auto res = minimize(discretize(energy, 200), linear_path(energy, 200));
  // distance of the lifted path from the plane through the origin, A and B
  const double a3[3] = {0.6, 0.0, 0.8}, b3[3] = {0.0, 0.6, 0.8};
  double n[3] = {a3[1] * b3[2] - a3[2] * b3[1], a3[2] * b3[0] - a3[0] * b3[2], a3[0] * b3[1] - a3[1] * b3[0]};
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  double circle = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double x = res.path.at(k, 0), y = res.path.at(k, 1), z = std::sqrt(1 - x * x - y * y);
    circle = std::max(circle, std::abs(n[0] * x + n[1] * y + n[2] * z) / len);
  }
  return {at_most("plane_max_dev", straight, 1e-6), at_most("hemisphere_great_circle_dev_N200",
                                                            res.converged ? circle : INFINITY, 1e-3)};
}

std::vector<Check> isochrone() {
  const double a = 1.1, b = 0.9, y0 = 2.0, a3 = a * a * a;
  const double x0 = firstorder::isochrone_closed_form(a, b, y0);
  auto rhs = [&](double, const ivp::State& y) -> ivp::State { return {std::sqrt(a3) / std::sqrt(b * b * y[0] - a3)}; };
  double worst_int = 0.0;
  for (double dx : {0.5, 1.0, 2.0, 5.0}) {
    const double y = firstorder::integrate_ivp(rhs, x0, {y0}, x0 + dx, 1e-12)[0];
    worst_int = std::max(worst_int, std::abs(firstorder::isochrone_closed_form(a, b, y) - (x0 + dx)));
  }
  double worst_diff = 0.0;
  for (double y : {2.0, 3.0, 5.0, 8.0}) {
    const double dxdy = numdiff::central4([&](double t) { return firstorder::isochrone_closed_form(a, b, t); }, y, 1e-3);
    worst_diff = std::max(worst_diff, rel(1.0 / dxdy, rhs(0.0, {y})[0]));
  }
  return {at_most("integration_vs_closed_form_abs", worst_int, 1e-6),
          at_most("implicit_derivative_rel", worst_diff, 1e-7)};
}

struct Spec {
  int id;
  const char* group;
  const char* title;
  double budget;
  std::function<std::vector<Check>(Rng&)> body;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> all = {
      {1, "linode", "beam reproduction", 1.0, beam},
      {2, "linode", "characteristic-method soundness", 10.0, characteristic},
      {3, "linode", "nonhomogeneous reduction vs IVP", 30.0, reduction},
      {7, "linode", "oscillator resonance", 1.0, [](Rng&) { return oscillator(); }},
      {4, "firstorder", "Riccati round trip", 10.0, riccati},
      {11, "firstorder", "isochrone", 10.0, [](Rng&) { return isochrone(); }},
      {5, "specfun", "special-function identities", 10.0, [](Rng&) { return identities(); }},
      {6, "specfun", "Bessel dual representation", 10.0, bessel},
      {8, "variational", "variational convergence", 60.0, variational_convergence},
      {9, "variational", "fundamental-lemma probe", 1.0, [](Rng&) { return lemma(); }},
      {10, "variational", "geodesic sanity", 30.0, [](Rng&) { return geodesics(); }},
  };
  return all;
}

Criterion evaluate(const Spec& s, std::uint64_t seed) {
  Criterion c{s.id, s.group, s.title, {}, s.budget};
  Rng rng(seed, s.id);
  const auto start = std::chrono::steady_clock::now();
  try {
    c.checks = s.body(rng);
  } catch (const Error& e) {
    c.checks.push_back({std::string("error: ") + e.kind() + ": " + e.what(), NAN, "<=", 0.0, false});
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.within_budget = c.seconds < c.budget_seconds;
  c.pass = c.within_budget && std::all_of(c.checks.begin(), c.checks.end(), [](const Check& k) { return k.pass; });
  return c;
}

std::vector<Criterion> run_groups(const std::vector<std::string>& groups, std::uint64_t seed) {
  std::vector<Criterion> out;
  for (const auto& g : groups) {
    for (const auto& s : specs()) {
      if (g == s.group) out.push_back(evaluate(s, seed));
    }
  }
  return out;
}

io::Json criteria_json(const std::vector<Criterion>& results) {
  io::Json arr = io::Json::array();
  for (const auto& c : results) {
    io::Json checks = io::Json::array();
    for (const auto& k : c.checks) {
      checks.push_back({{"name", k.name},
                        {"measured", io::number(k.measured)},
                        {"relation", k.relation},
                        {"threshold", io::number(k.threshold)},
                        {"pass", k.pass}});
    }
    arr.push_back({{"id", c.id},
                   {"group", c.group},
                   {"title", c.title},
                   {"pass", c.pass},
                   {"runtime_budget_s", io::number(c.budget_seconds)},
                   {"within_budget", c.within_budget},
                   {"checks", checks}});
  }
  return arr;
}

}  // namespace

const std::vector<std::string>& group_names() {
  static const std::vector<std::string> names{"linode", "firstorder", "specfun", "variational", "determinism"};
  return names;
}

Config load_config(const io::Json& doc) {
  if (!doc.is_object()) throw InvalidInput("acceptance config must be a JSON object");
  Config cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "seed") {
      if (!value.is_number_unsigned()) throw InvalidInput("seed must be a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "groups") {
      if (!value.is_array()) throw InvalidInput("groups must be an array of group names");
      cfg.groups.clear();
      std::set<std::string> seen;
      for (const auto& g : value) {
        if (!g.is_string()) throw InvalidInput("group names must be strings");
        const auto name = g.get<std::string>();
        const auto& known = group_names();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
          throw InvalidInput("unknown acceptance group \"" + name + "\"");
        }
        if (!seen.insert(name).second) throw InvalidInput("group \"" + name + "\" listed twice");
        cfg.groups.push_back(name);
      }
    } else {
      throw InvalidInput("unknown acceptance config key \"" + key + "\"");
    }
  }
  return cfg;
}

io::Json config_to_json(const Config& cfg) {
  io::Json j;
  j["seed"] = cfg.seed;
  j["groups"] = cfg.groups;
  return j;
}

std::vector<Criterion> run(const Config& cfg) {
  std::vector<std::string> numeric;
  for (const auto& g : cfg.groups) {
    if (g != "determinism") numeric.push_back(g);
  }
  std::vector<Criterion> out;
  std::vector<Criterion> first;
  for (const auto& g : cfg.groups) {
    if (g != "determinism") {
      auto part = run_groups({g}, cfg.seed);
      out.insert(out.end(), part.begin(), part.end());
      continue;
    }
    // Re-run the numeric groups (all of them when none are selected) and compare bytes.
    const auto& targets = numeric.empty() ? std::vector<std::string>(group_names().begin(), group_names().end() - 1)
                                          : numeric;
    Criterion c{12, "determinism", "byte-identical reruns", {}, 120.0};
    const auto start = std::chrono::steady_clock::now();
    const std::string a = io::dump(criteria_json(run_groups(targets, cfg.seed)));
    const std::string b = io::dump(criteria_json(run_groups(targets, cfg.seed)));
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.checks.push_back(at_least("identical_reports", a == b ? 1.0 : 0.0, 1.0));
    c.checks.push_back(above("report_bytes", static_cast<double>(a.size()), 0.0));
    c.within_budget = c.seconds < c.budget_seconds;
    c.pass = c.within_budget && c.checks[0].pass && c.checks[1].pass;
    out.push_back(std::move(c));
  }
  return out;
}

io::Json report(const Config& cfg, const std::vector<Criterion>& results) {
  io::Json tolerances;
  for (const auto& c : results) {
    for (const auto& k : c.checks) tolerances[std::to_string(c.id) + "." + k.name] = io::number(k.threshold);
  }
  io::Json manifest;
  manifest["command"] = "suite acceptance";
  manifest["parameters"] = config_to_json(cfg);
  manifest["tool_version"] = EULERKIT_VERSION;
  manifest["tolerances"] = tolerances;
  int passed = 0;
  for (const auto& c : results) passed += c.pass ? 1 : 0;
  io::Json doc;
  doc["schema"] = "eulerkit.acceptance/1";
  doc["manifest"] = manifest;
  doc["criteria"] = criteria_json(results);
  doc["passed"] = passed;
  doc["failed"] = static_cast<int>(results.size()) - passed;
  return doc;
}

std::string summary_line(const Criterion& c) {
  std::ostringstream os;
  os << (c.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.group << ") " << c.title << ":";
  for (const auto& k : c.checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g %s %.3g", k.measured, k.relation.c_str(), k.threshold);
    os << "  " << k.name << "=" << buf << (k.pass ? "" : " [miss]");
  }
  char t[64];
  std::snprintf(t, sizeof t, "  time=%.2fs/%gs", c.seconds, c.budget_seconds);
  os << t << (c.within_budget ? "" : " [over budget]");
  return os.str();
}

std::vector<double> brachistochrone_shooting(double y0, double y1, int N) {
  if (!(y0 > 0) || !(y1 > y0) || N < 1) throw InvalidInput("shooting needs 0 < y0 < y1 and N >= 1");
  ivp::Options o;
  o.rel_tol = 1e-11;
  o.abs_tol = 1e-12;
  auto rhs = [](double, const ivp::State& u) -> ivp::State { return {u[1], -(1 + u[1] * u[1]) / (2 * u[0])}; };
  auto shoot = [&](double s, std::vector<double>* samples) {
    ivp::State u{y0, s};
    double x = 0.0;
    if (samples) samples->push_back(y0);
    try {
      for (int k = 1; k <= N; ++k) {
        u = ivp::dopri5(rhs, x, u, static_cast<double>(k) / N, o).y;
        x = static_cast<double>(k) / N;
        if (samples) samples->push_back(u[0]);
      }
    } catch (const StepSizeUnderflow&) {
      return -y1;  // fell back to y = 0 before x = 1
    }
    return u[0] - y1;
  };
  double lo = 0.0, hi = 1.0;
  while (shoot(hi, nullptr) < 0) {
    lo = hi;
    hi *= 2;
    if (hi > 1e8) throw NumericFailure("shooting bracket not found");
  }
  for (int i = 0; i < 100 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (shoot(mid, nullptr) < 0 ? lo : hi) = mid;
  }
  std::vector<double> samples;
  shoot(0.5 * (lo + hi), &samples);
  return samples;
}

}  // namespace eulerkit::acceptance
