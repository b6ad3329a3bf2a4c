#include <array>
#include <cmath>
#include <memory>
#include <optional>

#include "cli.hpp"
#include "eulerkit/error.hpp"
#include "eulerkit/linode.hpp"

namespace eulerkit::cli {

namespace {

struct SolveArgs {
  std::string coeffs;
  std::vector<std::string> conditions;
  std::string solution_file;
  double lo = 0.0, hi = 1.0;
};

struct BeamArgs {
  double K = 1.0, l = 1.0, A = 1.0;
};

struct OscillatorArgs {
  double M = 1.0, K = 1.0, F = 1.0, w_a = 0.5, t = 1.0, t1 = 0.0;
};

struct ReduceArgs {
  double C = 1.0, B = 0.0, A = 1.0;
  std::string poly;
  std::vector<std::string> sines, exps;
  double x0 = 0.0, y0 = 0.0, yp0 = 0.0, x = 1.0;
};

std::vector<std::vector<double>> sample(const linode::ParticularSolution& sol, const std::vector<double>& xs,
                                        int derivs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) {
    const auto e = linode::evaluate(sol, x, derivs);
    std::vector<double> row{x};
    row.insert(row.end(), e.derivatives.begin(), e.derivatives.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

io::Json solve(Session& s, const SolveArgs& a) {
  if (!(a.hi > a.lo)) throw InvalidInput("--hi must exceed --lo");
  const auto xs = grid(a.lo, a.hi, s.grid_n_or(101));
  io::Json result;
  std::optional<linode::ParticularSolution> sol;
  std::optional<linode::ConstCoeffODE> ode;
  if (!a.coeffs.empty()) ode.emplace(parse_numbers(a.coeffs, "--coeffs"));

  if (!a.solution_file.empty()) {
    sol = io::solution_from_json(io::parse(read_file(a.solution_file)));
  } else {
    if (!ode) throw InvalidInput("ode solve needs --coeffs or --solution");
    const double root_tol = s.tol_or(1e-12);
    s.tolerance("root_tol", root_tol);
    const auto gs = linode::solve_homogeneous(*ode, root_tol);
    result["roots"] = io::roots_to_json(gs.clusters());
    std::vector<linode::Condition> conds;
    for (const auto& text : a.conditions) {
      const auto v = parse_numbers(text, "--cond");
      if (v.size() != 3 || v[0] != std::floor(v[0]) || v[0] < 0) {
        throw InvalidInput("--cond takes ORDER,AT,EQUALS with a non-negative integer order");
      }
      conds.push_back({static_cast<int>(v[0]), v[1], v[2]});
    }
    if (conds.empty()) {
      sol = linode::ParticularSolution{gs, std::vector<double>(gs.free_constants(), 0.0), "general", 1.0};
    } else {
      sol = linode::fit_constants(gs, conds);
    }
    result["condition_number"] = io::number(sol->condition_number);
  }
  result["solution"] = io::solution_to_json(*sol);
  if (ode) {
    if (ode->order() != sol->general.free_constants()) {
      throw InvalidInput("solution order does not match --coeffs");
    }
    result["residual"] = io::number(linode::residual(*ode, *sol, xs));
  }
  s.csv("solution.csv", {"x", "y", "dy"}, sample(*sol, xs, 1));
  return result;
}

io::Json beam(Session& s, const BeamArgs& a) {
  const auto sol = linode::solve_beam(a.K, a.l, a.A);
  const auto xs = grid(0.0, a.l, s.grid_n_or(101));
  const linode::ConstCoeffODE ode({-1, 0, 0, 0, std::pow(a.K, 4)});
  io::Json r;
  r["b"] = io::number(linode::beam_b(a.K, a.l));
  r["solution"] = io::solution_to_json(sol);
  r["condition_number"] = io::number(sol.condition_number);
  r["residual"] = io::number(linode::residual(ode, sol, xs));
  const auto at0 = linode::evaluate(sol, 0.0, 3).derivatives;
  r["boundary"] = {{"y_0", io::number(at0[0])},
                   {"ypp_0", io::number(at0[2])},
                   {"yppp_0", io::number(at0[3])},
                   {"y_l", io::number(linode::evaluate(sol, a.l, 0).derivatives[0])}};
  s.csv("beam.csv", {"x", "y", "dy"}, sample(sol, xs, 1));
  return r;
}

io::Json oscillator(Session& s, const OscillatorArgs& a) {
  const auto r = linode::forced_oscillator(a.M, a.K, a.F, a.w_a, a.t);
  s.tolerance("resonance_threshold", linode::kResonanceThreshold);
  io::Json out{{"value", io::number(r.value)},
               {"steady_amplitude", io::number(r.steady_amplitude)},
               {"natural_frequency", io::number(r.natural_frequency)},
               {"resonant", r.resonant}};
  if (a.t1 > 0) {
    std::vector<std::vector<double>> rows;
    for (double t : grid(0.0, a.t1, s.grid_n_or(201))) rows.push_back({t, linode::forced_oscillator(a.M, a.K, a.F, a.w_a, t).value});
    s.csv("oscillator.csv", {"t", "x"}, rows);
  }
  return out;
}

io::Json reduce2(Session& s, const ReduceArgs& a) {
  Poly poly;
  if (!a.poly.empty()) poly.c = parse_numbers(a.poly, "--poly");
  std::vector<std::array<double, 3>> sines;
  for (const auto& t : a.sines) {
    const auto v = parse_numbers(t, "--sin");
    if (v.size() != 3) throw InvalidInput("--sin takes AMP,W,PHASE");
    sines.push_back({v[0], v[1], v[2]});
  }
  std::vector<std::array<double, 2>> exps;
  for (const auto& t : a.exps) {
    const auto v = parse_numbers(t, "--exp");
    if (v.size() != 2) throw InvalidInput("--exp takes AMP,RATE");
    exps.push_back({v[0], v[1]});
  }
  linode::Forcing X = [=](double x) {
    double v = poly(x);
    for (const auto& t : sines) v += t[0] * std::sin(t[1] * x + t[2]);
    for (const auto& t : exps) v += t[0] * std::exp(t[1] * x);
    return v;
  };
  linode::ReductionOptions o;
  if (s.globals().tol) o.abs_tol = *s.globals().tol;
  s.tolerance("abs_tol", o.abs_tol);
  s.tolerance("rel_tol", o.rel_tol);
  const auto m = linode::euler_multipliers(a.C, a.B, a.A);
  io::Json r;
  r["value"] = io::number(linode::reduce_nonhomogeneous_2nd(a.C, a.B, a.A, X, a.x0, a.y0, a.yp0, a.x, o));
  r["multipliers"] = {{"alpha", {io::number(m.alpha.real()), io::number(m.alpha.imag())}},
                      {"beta", {io::number(m.beta.real()), io::number(m.beta.imag())}}};
  if (s.globals().grid_n) {
    std::vector<std::vector<double>> rows;
    for (double x : grid(a.x0, a.x, s.grid_n_or(2))) {
      rows.push_back({x, linode::reduce_nonhomogeneous_2nd(a.C, a.B, a.A, X, a.x0, a.y0, a.yp0, x, o)});
    }
    s.csv("reduce2.csv", {"x", "y"}, rows);
  }
  return r;
}

}  // namespace

void register_ode(CLI::App& root, Registry& reg) {
  auto* ode = root.add_subcommand("ode", "Linear constant-coefficient equations")->require_subcommand(1);

  auto sa = std::make_shared<SolveArgs>();
  auto* solve_app = ode->add_subcommand("solve", "Homogeneous solution from the characteristic roots");
  solve_app->add_option("--coeffs", sa->coeffs, "a0,a1,...,an for a0 y + a1 y' + ... + an y^(n) = 0");
  solve_app->add_option("--cond", sa->conditions, "ORDER,AT,EQUALS condition y^(ORDER)(AT) = EQUALS (repeatable)");
  solve_app->add_option("--solution", sa->solution_file, "Solution JSON to validate and re-emit");
  solve_app->add_option("--lo", sa->lo, "Residual and CSV grid start");
  solve_app->add_option("--hi", sa->hi, "Residual and CSV grid end");
  reg.push_back({solve_app, "ode solve", [sa](Session& s) { return solve(s, *sa); }});

  auto ba = std::make_shared<BeamArgs>();
  auto* beam_app = ode->add_subcommand("beam", "Cantilever K^4 y'''' = y with y(0) = 2A, y(l) = 0");
  beam_app->add_option("--K", ba->K)->required();
  beam_app->add_option("--l", ba->l)->required();
  beam_app->add_option("--A", ba->A)->required();
  reg.push_back({beam_app, "ode beam", [ba](Session& s) { return beam(s, *ba); }});

  auto oa = std::make_shared<OscillatorArgs>();
  auto* osc_app = ode->add_subcommand("oscillator", "M x'' + K x = F sin(w_a t) from rest");
  osc_app->add_option("--M", oa->M)->required();
  osc_app->add_option("--K", oa->K)->required();
  osc_app->add_option("--F", oa->F)->required();
  osc_app->add_option("--wa", oa->w_a, "Forcing frequency")->required();
  osc_app->add_option("--t", oa->t, "Evaluation time");
  osc_app->add_option("--t1", oa->t1, "Write oscillator.csv on [0, t1] when positive");
  reg.push_back({osc_app, "ode oscillator", [oa](Session& s) { return oscillator(s, *oa); }});

  auto ra = std::make_shared<ReduceArgs>();
  auto* red_app = ode->add_subcommand("reduce2", "C y'' + B y' + A y = X(x) by two integrating factors");
  red_app->add_option("--C", ra->C)->required();
  red_app->add_option("--B", ra->B)->required();
  red_app->add_option("--A", ra->A)->required();
  red_app->add_option("--poly", ra->poly, "Polynomial part of X: c0,c1,...");
  red_app->add_option("--sin", ra->sines, "AMP,W,PHASE term AMP sin(W x + PHASE) (repeatable)");
  red_app->add_option("--exp", ra->exps, "AMP,RATE term AMP exp(RATE x) (repeatable)");
  red_app->add_option("--x0", ra->x0);
  red_app->add_option("--y0", ra->y0);
  red_app->add_option("--yp0", ra->yp0);
  red_app->add_option("--x", ra->x, "Evaluation point");
  reg.push_back({red_app, "ode reduce2", [ra](Session& s) { return reduce2(s, *ra); }});
}

}  // namespace eulerkit::cli
