#include <cfloat>
#include <cmath>
#include <memory>

#include "cli.hpp"
#include "eulerkit/error.hpp"
#include "eulerkit/specfun.hpp"

namespace eulerkit::cli {

namespace {

constexpr double kGammaRelError = 1e-12;

io::Json estimate(double value, double error, const std::string& method) {
  return {{"value", io::number(value)}, {"est_error", io::number(error)}, {"method", method}};
}

struct GammaArgs {
  double x = 0.0;
};
struct BetaArgs {
  double p = 1.0, q = 1.0;
  std::string method = "integral";
};
struct BesselArgs {
  double v = 0.0, z = 0.0;
};
struct ChainArgs {
  double n = 0.0, alpha = -1.0, x = 0.0, A = 1.0;
  std::string method = "series";
};

io::Json gamma(Session& s, const GammaArgs& a) {
  const double v = specfun::gamma(a.x);
  if (a.x == std::floor(a.x) && a.x >= 1 && a.x <= 171) {
    s.tolerance("factorial_rounding_rel", a.x * DBL_EPSILON);
    return estimate(v, a.x * DBL_EPSILON * std::abs(v), "factorial");
  }
  s.tolerance("lanczos_rel", kGammaRelError);
  return estimate(v, kGammaRelError * std::abs(v), a.x < 0.5 ? "lanczos+reflection" : "lanczos");
}

io::Json beta(Session& s, const BetaArgs& a) {
  if (a.method == "gamma") {
    s.tolerance("gamma_rel", 3 * kGammaRelError);
    const double v = specfun::beta_gamma(a.p, a.q);
    return estimate(v, 3 * kGammaRelError * std::abs(v), "gamma");
  }
  s.tolerance("quadrature_abs", 1e-13);
  s.tolerance("quadrature_rel", 1e-13);
  const auto e = specfun::beta_integral(a.p, a.q);
  return estimate(e.value, e.error, "integral");
}

io::Json bessel(Session& s, const BesselArgs& a) {
  const double tol = s.tol_or(1e-15);
  s.tolerance("series_tail_rel", tol);
  const auto e = specfun::bessel_i_series(a.v, a.z, tol);
  return estimate(e.value, e.error, "series");
}

io::Json chain(Session& s, const ChainArgs& a) {
  const specfun::ChainProblem p{a.n, a.alpha, a.A};
  if (a.method == "integral") {
    s.tolerance("quadrature_abs", 1e-13);
    const auto e = specfun::chain_solution_integral(p, a.x);
    return estimate(e.value, e.error, "integral");
  }
  s.tolerance("series_tail_rel", 1e-15);
  const auto e = specfun::chain_solution_series(p, a.x);
  return estimate(e.value, e.error, "series");
}

}  // namespace

void register_specfun(CLI::App& root, Registry& reg) {
  auto* sf = root.add_subcommand("specfun", "Gamma, Beta, modified Bessel and the hanging chain")->require_subcommand(1);

  auto ga = std::make_shared<GammaArgs>();
  auto* g = sf->add_subcommand("gamma", "Gamma(X)");
  g->add_option("X", ga->x)->required();
  reg.push_back({g, "specfun gamma", [ga](Session& s) { return gamma(s, *ga); }});

  auto ba = std::make_shared<BetaArgs>();
  auto* b = sf->add_subcommand("beta", "B(P, Q)");
  b->add_option("P", ba->p)->required();
  b->add_option("Q", ba->q)->required();
  b->add_option("--method", ba->method)->check(CLI::IsMember({"integral", "gamma"}));
  reg.push_back({b, "specfun beta", [ba](Session& s) { return beta(s, *ba); }});

  auto ia = std::make_shared<BesselArgs>();
  auto* i = sf->add_subcommand("bessel-i", "I_V(Z) by its power series");
  i->add_option("V", ia->v)->required();
  i->add_option("Z", ia->z)->required();
  reg.push_back({i, "specfun bessel-i", [ia](Session& s) { return bessel(s, *ia); }});

  auto ca = std::make_shared<ChainArgs>();
  auto* c = sf->add_subcommand("chain", "Hanging-chain solution at x");
  c->add_option("--n", ca->n)->required();
  c->add_option("--alpha", ca->alpha)->required();
  c->add_option("--x", ca->x)->required();
  c->add_option("--A", ca->A, "Amplitude");
  c->add_option("--method", ca->method)->check(CLI::IsMember({"series", "integral"}));
  reg.push_back({c, "specfun chain", [ca](Session& s) { return chain(s, *ca); }});
}

}  // namespace eulerkit::cli
