#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "eulerkit/error.hpp"
#include "eulerkit/variational.hpp"

namespace eulerkit::cli {

namespace {

using namespace eulerkit::variational;

struct VarSpec {
  std::string functional = "arclength";
  std::string surface = "plane";
  int N = 50;
  double x1 = 0.0, x2 = 1.0, y1 = 0.0, y2 = 1.0;
  std::vector<double> load;
  std::vector<double> A{0.0, 0.0}, B{1.0, 0.0};
  std::vector<double> slopes{0.0, 0.0};
  double radius = 1.0;
  std::string rule = "lbfgs";
  int max_iter = 20000;
  double grad_tol = MinimizeOptions{}.grad_tol;
  double perturb = 0.0;
  std::uint64_t seed = 1;
};

struct VarArgs {
  std::string config, path;
  VarSpec flags;
  std::string load, A, B, slopes;
  std::map<std::string, CLI::Option*> opts;
};

bool given(const VarArgs& a, const std::string& name) {
  const auto it = a.opts.find(name);
  return it != a.opts.end() && it->second->count() > 0;
}

std::vector<double> pair_of(const std::vector<double>& v, const std::string& what) {
  if (v.size() != 2) throw InvalidInput(what + " takes two numbers");
  return v;
}

double json_number(const io::Json& j, const std::string& key) {
  if (!j.is_number()) throw InvalidInput("config \"" + key + "\" must be a number");
  return j.get<double>();
}

std::vector<double> json_numbers(const io::Json& j, const std::string& key) {
  if (!j.is_array()) throw InvalidInput("config \"" + key + "\" must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(json_number(v, key));
  return out;
}

std::string json_string(const io::Json& j, const std::string& key) {
  if (!j.is_string()) throw InvalidInput("config \"" + key + "\" must be a string");
  return j.get<std::string>();
}

const io::Json& json_object(const io::Json& j, const std::string& key) {
  if (!j.is_object()) throw InvalidInput("config \"" + key + "\" must be an object");
  return j;
}

// {functional, params, N, endpoints, optimizer}
void apply_config(VarSpec& s, const io::Json& doc) {
  json_object(doc, "<root>");
  for (const auto& [key, value] : doc.items()) {
    if (key == "functional") {
      s.functional = json_string(value, key);
    } else if (key == "N") {
      if (!value.is_number_integer()) throw InvalidInput("config \"N\" must be an integer");
      s.N = value.get<int>();
    } else if (key == "params") {
      for (const auto& [k, v] : json_object(value, key).items()) {
        if (k == "surface") {
          s.surface = json_string(v, k);
        } else if (k == "slopes") {
          s.slopes = pair_of(json_numbers(v, k), "params.slopes");
        } else if (k == "radius") {
          s.radius = json_number(v, k);
        } else if (k == "load") {
          s.load = json_numbers(v, k);
        } else {
          throw InvalidInput("unknown params key \"" + k + "\"");
        }
      }
    } else if (key == "endpoints") {
      for (const auto& [k, v] : json_object(value, key).items()) {
        if (k == "x1") {
          s.x1 = json_number(v, k);
        } else if (k == "x2") {
          s.x2 = json_number(v, k);
        } else if (k == "y1") {
          s.y1 = json_number(v, k);
        } else if (k == "y2") {
          s.y2 = json_number(v, k);
        } else if (k == "A") {
          s.A = pair_of(json_numbers(v, k), "endpoints.A");
        } else if (k == "B") {
          s.B = pair_of(json_numbers(v, k), "endpoints.B");
        } else {
          throw InvalidInput("unknown endpoints key \"" + k + "\"");
        }
      }
    } else if (key == "optimizer") {
      for (const auto& [k, v] : json_object(value, key).items()) {
        if (k == "rule") {
          s.rule = json_string(v, k);
        } else if (k == "max_iter") {
          if (!v.is_number_integer()) throw InvalidInput("config \"max_iter\" must be an integer");
          s.max_iter = v.get<int>();
        } else if (k == "grad_tol") {
          s.grad_tol = json_number(v, k);
        } else if (k == "perturb") {
          s.perturb = json_number(v, k);
        } else if (k == "seed") {
          if (!v.is_number_unsigned()) throw InvalidInput("config \"seed\" must be a non-negative integer");
          s.seed = v.get<std::uint64_t>();
        } else {
          throw InvalidInput("unknown optimizer key \"" + k + "\"");
        }
      }
    } else {
      throw InvalidInput("unknown var config key \"" + key + "\"");
    }
  }
}

VarSpec resolve(const VarArgs& a, const Session& session) {
  VarSpec s;
  if (!a.config.empty()) apply_config(s, io::parse(read_file(a.config)));
  const VarSpec& f = a.flags;
  if (given(a, "functional")) s.functional = f.functional;
  if (given(a, "surface")) s.surface = f.surface;
  if (given(a, "rule")) s.rule = f.rule;
  if (given(a, "N")) s.N = f.N;
  if (given(a, "max-iter")) s.max_iter = f.max_iter;
  if (given(a, "x1")) s.x1 = f.x1;
  if (given(a, "x2")) s.x2 = f.x2;
  if (given(a, "y1")) s.y1 = f.y1;
  if (given(a, "y2")) s.y2 = f.y2;
  if (given(a, "radius")) s.radius = f.radius;
  if (given(a, "perturb")) s.perturb = f.perturb;
  if (given(a, "load")) s.load = parse_numbers(a.load, "--load");
  if (given(a, "A")) s.A = pair_of(parse_numbers(a.A, "--A"), "--A");
  if (given(a, "B")) s.B = pair_of(parse_numbers(a.B, "--B"), "--B");
  if (given(a, "slopes")) s.slopes = pair_of(parse_numbers(a.slopes, "--slopes"), "--slopes");
  if (session.globals().tol) s.grad_tol = *session.globals().tol;
  if (session.globals().seed) s.seed = *session.globals().seed;
  if (s.rule != "lbfgs" && s.rule != "gradient-descent") {
    throw InvalidInput("rule must be lbfgs or gradient-descent");
  }
  if (s.functional == "geodesic" && s.surface != "plane" && s.surface != "hemisphere") {
    throw InvalidInput("surface must be plane or hemisphere");
  }
  return s;
}

io::Json spec_json(const VarSpec& s) {
  io::Json j;
  j["functional"] = s.functional;
  io::Json params = io::Json::object();
  io::Json ends;
  if (s.functional == "geodesic") {
    params["surface"] = s.surface;
    if (s.surface == "plane") params["slopes"] = {io::number(s.slopes[0]), io::number(s.slopes[1])};
    if (s.surface == "hemisphere") params["radius"] = io::number(s.radius);
    ends["A"] = {io::number(s.A[0]), io::number(s.A[1])};
    ends["B"] = {io::number(s.B[0]), io::number(s.B[1])};
  } else {
    if (s.functional == "dirichlet") {
      io::Json load = io::Json::array();
      for (double c : s.load) load.push_back(io::number(c));
      params["load"] = load;
    }
    for (const auto& [k, v] : {std::pair{"x1", s.x1}, {"x2", s.x2}, {"y1", s.y1}, {"y2", s.y2}}) ends[k] = io::number(v);
  }
  j["params"] = params;
  j["N"] = s.N;
  j["endpoints"] = ends;
  j["optimizer"] = {{"rule", s.rule},
                    {"max_iter", s.max_iter},
                    {"grad_tol", io::number(s.grad_tol)},
                    {"perturb", io::number(s.perturb)},
                    {"seed", s.seed}};
  return j;
}

struct Problem {
  PathFunctional fn;
  std::optional<Functional1D> scalar;
  std::optional<PathFunctional> length;  // lifted arc length for geodesics
  bool straight = false;                 // the minimizer is the chord
};

Problem build(const VarSpec& s) {
  Problem p;
  if (s.functional == "arclength" || s.functional == "dirichlet" || s.functional == "brachistochrone") {
    if (s.functional == "arclength") {
      p.scalar = arclength(s.x1, s.x2, s.y1, s.y2);
    } else if (s.functional == "brachistochrone") {
      p.scalar = brachistochrone(s.x1, s.x2, s.y1, s.y2);
    } else {
      std::function<double(double)> load;
      if (!s.load.empty()) load = Poly{s.load};
      p.scalar = dirichlet(s.x1, s.x2, s.y1, s.y2, load);
    }
    p.fn = as_path(*p.scalar);
    p.straight = s.functional == "arclength" || (s.functional == "dirichlet" && s.load.empty());
  } else if (s.functional == "geodesic") {
    const auto surface = s.surface == "plane" ? SurfaceJet::plane(s.slopes[0], s.slopes[1])
                                              : SurfaceJet::hemisphere(s.radius);
    p.fn = geodesic_energy(surface, s.A, s.B);
    p.length = geodesic_functional(surface, s.A, s.B);
  } else {
    throw InvalidInput("unknown functional \"" + s.functional +
                       "\"; expected arclength, dirichlet, brachistochrone or geodesic");
  }
  return p;
}

// nodes with (t - t0)/(t1 - t0) in [0.1, 0.9]; the spline's natural end conditions spoil the outer tenth
std::vector<double> residual_grid(const DiscretePath& path) {
  std::vector<double> g;
  for (int k = 1; k < path.N; ++k) {
    if (10 * k >= path.N && 10 * k <= 9 * path.N) g.push_back(path.node(k));
  }
  if (g.empty()) g.push_back(path.node(path.N / 2));
  return g;
}

io::Json diagnostics(Session& s, const Problem& p, const DiscreteObjective& obj, const DiscretePath& path) {
  io::Json r;
  r["objective"] = io::number(obj.value(path));
  double gmax = 0.0;
  for (double g : obj.gradient(path)) gmax = std::max(gmax, std::abs(g));
  r["grad_norm"] = io::number(gmax);
  const auto ts = residual_grid(path);
  s.parameter("residual_grid", {{"from", io::number(ts.front())}, {"to", io::number(ts.back())}, {"points", ts.size()}});
  if (p.scalar) {
    r["el_residual"] = io::number(el_residual(*p.scalar, smooth_coordinate(path), ts));
    if (p.straight) {
      double dev = 0.0;
      for (int k = 0; k <= path.N; ++k) {
        const double u = (path.node(k) - path.t0) / (path.t1 - path.t0);
        dev = std::max(dev, std::abs(path.at(k, 0) - (p.fn.A[0] + u * (p.fn.B[0] - p.fn.A[0]))));
      }
      r["straight_line_dev"] = io::number(dev);
    }
  } else {
    r["el_residual"] = io::number(euler_system_residual(p.fn, smooth(path), ts));
    r["length"] = io::number(discretize(*p.length, path.N).value(path));
  }
  return r;
}

std::vector<std::vector<double>> rows_of(const DiscretePath& path) {
  std::vector<std::vector<double>> rows;
  for (int k = 0; k <= path.N; ++k) {
    std::vector<double> row{path.node(k)};
    for (int i = 0; i < path.dim; ++i) row.push_back(path.at(k, i));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> columns_of(const DiscretePath& path) {
  return path.dim == 1 ? std::vector<std::string>{"t", "y"} : std::vector<std::string>{"t", "x", "y"};
}

io::Json minimize_cmd(Session& s, const VarArgs& a) {
  const VarSpec spec = resolve(a, s);
  s.parameter("resolved", spec_json(spec));
  const Problem p = build(spec);
  const auto obj = discretize(p.fn, spec.N);
  MinimizeOptions o;
  o.grad_tol = spec.grad_tol;
  o.max_iter = spec.max_iter;
  o.step_rule = spec.rule == "lbfgs" ? StepRule::lbfgs : StepRule::gradient_descent;
  s.tolerance("grad_tol", o.grad_tol);
  s.tolerance("armijo", o.armijo);
  auto init = linear_path(p.fn, spec.N);
  if (spec.perturb > 0) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> u(-spec.perturb, spec.perturb);
    for (int k = 1; k < spec.N; ++k) {
      for (int i = 0; i < init.dim; ++i) init.at(k, i) += u(rng);
    }
  }
  const auto res = minimize(obj, init, o);
  io::Json r = diagnostics(s, p, obj, res.path);
  r["iterations"] = res.iterations;
  r["converged"] = res.converged;
  s.csv("path.csv", columns_of(res.path), rows_of(res.path));
  return r;
}

DiscretePath load_path(const std::string& file, int dim) {
  std::istringstream in(read_file(file));
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput(file + " is empty");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto v = parse_numbers(line, file);
    if (static_cast<int>(v.size()) != dim + 1) throw InvalidInput(file + ": every row needs t and " + std::to_string(dim) + " ordinate(s)");
    rows.push_back(std::move(v));
  }
  if (rows.size() < 3) throw InvalidInput(file + " needs at least three nodes");
  DiscretePath path{rows.front()[0], rows.back()[0], static_cast<int>(rows.size()) - 1, dim, {}};
  if (!(path.t1 > path.t0)) throw InvalidInput(file + ": t must increase");
  for (int k = 0; k <= path.N; ++k) {
    if (std::abs(rows[k][0] - path.node(k)) > 1e-9 * (path.t1 - path.t0)) {
      throw InvalidInput(file + ": nodes must be uniformly spaced");
    }
    for (int i = 0; i < dim; ++i) path.ordinates.push_back(rows[k][1 + i]);
  }
  return path;
}

io::Json residual_cmd(Session& s, const VarArgs& a) {
  if (a.path.empty()) throw InvalidInput("var residual needs --path");
  VarSpec spec = resolve(a, s);
  const Problem p = build(spec);
  const auto path = load_path(a.path, p.fn.dim);
  spec.N = path.N;
  s.parameter("resolved", spec_json(spec));
  if (path.t0 != p.fn.t0 || path.t1 != p.fn.t1) throw InvalidInput("path interval does not match the functional");
  for (int i = 0; i < path.dim; ++i) {
    if (path.at(0, i) != p.fn.A[i] || path.at(path.N, i) != p.fn.B[i]) {
      throw InvalidInput("path endpoints do not match the boundary values");
    }
  }
  return diagnostics(s, p, discretize(p.fn, path.N), path);
}

void add_spec_options(CLI::App* app, VarArgs& a) {
  auto& f = a.flags;
  a.opts["config"] = app->add_option("--config", a.config, "JSON {functional, params, N, endpoints, optimizer}; flags win");
  a.opts["functional"] = app->add_option("--functional", f.functional, "arclength | dirichlet | brachistochrone | geodesic");
  a.opts["surface"] = app->add_option("--surface", f.surface, "Geodesic surface: plane | hemisphere");
  a.opts["N"] = app->add_option("--N", f.N, "Number of intervals");
  a.opts["x1"] = app->add_option("--x1", f.x1);
  a.opts["x2"] = app->add_option("--x2", f.x2);
  a.opts["y1"] = app->add_option("--y1", f.y1);
  a.opts["y2"] = app->add_option("--y2", f.y2);
  a.opts["load"] = app->add_option("--load", a.load, "Polynomial load for dirichlet: c0,c1,...");
  a.opts["A"] = app->add_option("--A", a.A, "Geodesic start X,Y");
  a.opts["B"] = app->add_option("--B", a.B, "Geodesic end X,Y");
  a.opts["slopes"] = app->add_option("--slopes", a.slopes, "Plane slopes A,B of z = A x + B y");
  a.opts["radius"] = app->add_option("--radius", f.radius, "Hemisphere radius");
  a.opts["rule"] = app->add_option("--rule", f.rule, "lbfgs | gradient-descent");
  a.opts["max-iter"] = app->add_option("--max-iter", f.max_iter);
  a.opts["perturb"] = app->add_option("--perturb", f.perturb, "Uniform start perturbation amplitude, seeded by --seed");
}

}  // namespace

void register_var(CLI::App& root, Registry& reg) {
  auto* var = root.add_subcommand("var", "Direct method for variational problems")->require_subcommand(1);

  auto ma = std::make_shared<VarArgs>();
  auto* mn = var->add_subcommand("minimize", "Minimize the discretized functional from the straight line");
  add_spec_options(mn, *ma);
  reg.push_back({mn, "var minimize", [ma](Session& s) { return minimize_cmd(s, *ma); }});

  auto ra = std::make_shared<VarArgs>();
  auto* rs = var->add_subcommand("residual", "Objective, gradient and Euler-Lagrange residual of a given path");
  add_spec_options(rs, *ra);
  rs->add_option("--path", ra->path, "CSV with t and ordinate columns, as written by var minimize")->required();
  reg.push_back({rs, "var residual", [ra](Session& s) { return residual_cmd(s, *ra); }});
}

}  // namespace eulerkit::cli
