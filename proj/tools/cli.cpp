#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eulerkit/error.hpp"

namespace eulerkit::cli {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path.string());
  f << text;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Option values as given, or their defaults, keyed by long name.
io::Json collect_parameters(const CLI::App& app) {
  io::Json p = io::Json::object();
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      if (r.size() == 1) {
        p[name] = r[0];
      } else {
        p[name] = r;
      }
    } else if (!opt->get_default_str().empty()) {
      p[name] = opt->get_default_str();
    }
  }
  return p;
}

std::string command_path(const CLI::App* app) {
  std::string name;
  for (const CLI::App* a = app; a && a->get_parent(); a = a->get_parent()) {
    name = name.empty() ? a->get_name() : a->get_name() + " " + name;
  }
  return name;
}

}  // namespace

Session::Session(std::string command, const Globals& globals, io::Json parameters)
    : command_(std::move(command)), globals_(globals), parameters_(std::move(parameters)) {}

int Session::grid_n_or(int fallback) const {
  const int n = globals_.grid_n.value_or(fallback);
  if (n < 2) throw InvalidInput("--grid-n must be at least 2");
  return n;
}

void Session::tolerance(const std::string& name, double value) { tolerances_[name] = io::number(value); }

void Session::parameter(const std::string& name, io::Json value) { parameters_[name] = std::move(value); }

void Session::csv(const std::string& file, const std::vector<std::string>& columns,
                  const std::vector<std::vector<double>>& rows) {
  artifacts_.push_back({{"file", file}, {"columns", columns}, {"rows", rows.size()}, {"schema", kCsvSchema}});
  if (globals_.out_dir.empty()) return;
  std::filesystem::create_directories(globals_.out_dir);
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
  write_text(std::filesystem::path(globals_.out_dir) / file, os.str());
}

io::Json Session::manifest(bool with_timestamp) const {
  io::Json m;
  m["command"] = command_;
  m["parameters"] = parameters_;
  io::Json g = io::Json::object();
  if (globals_.tol) g["tol"] = io::number(*globals_.tol);
  if (globals_.grid_n) g["grid_n"] = *globals_.grid_n;
  if (globals_.seed) g["seed"] = *globals_.seed;
  m["flags"] = g;
  m["tool_version"] = EULERKIT_VERSION;
  m["tolerances"] = tolerances_;
  m["artifacts"] = artifacts_;
  if (with_timestamp) m["timestamp"] = utc_timestamp();
  return m;
}

void Session::finish(const io::Json& result, std::ostream& out) const {
  io::Json doc;
  doc["manifest"] = manifest(false);
  doc["result"] = result;
  const std::string text = io::dump(doc) + "\n";
  out << text;
  if (globals_.out_dir.empty()) return;
  std::filesystem::create_directories(globals_.out_dir);
  write_text(std::filesystem::path(globals_.out_dir) / "result.json", text);
  write_text(std::filesystem::path(globals_.out_dir) / "manifest.json", io::dump(manifest(true)) + "\n");
}

double Poly::operator()(double x) const {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

Poly Poly::derivative() const {
  Poly d;
  for (std::size_t k = 1; k < c.size(); ++k) d.c.push_back(static_cast<double>(k) * c[k]);
  return d;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw InvalidInput(what + ": \"" + item + "\" is not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput(what + " is empty");
  return out;
}

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  return g;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical analysis toolkit: linear ODEs, first-order equations, special functions, variational problems.",
               "eulerkit"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.option_defaults()->always_capture_default();
  Globals globals;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int grid_n = 0;
  app.add_option("--out", globals.out_dir, "Directory for result.json, manifest.json and CSV artifacts");
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance override for the command's main solver");
  auto* grid_opt = app.add_option("--grid-n", grid_n, "Number of output grid points");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized inputs");
  for (auto* o : {tol_opt, grid_opt, seed_opt}) o->always_capture_default(false);
  app.set_version_flag("--version", EULERKIT_VERSION);

  Registry reg;
  register_ode(app, reg);
  register_first(app, reg);
  register_specfun(app, reg);
  register_var(app, reg);
  register_suite(app, reg);
  // global flags are accepted after the subcommand too
  app.fallthrough();
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (tol_opt->count()) globals.tol = tol;
  if (grid_opt->count()) globals.grid_n = grid_n;
  if (seed_opt->count()) globals.seed = seed;

  const Command* chosen = nullptr;
  for (const auto& c : reg) {
    if (c.app->parsed()) chosen = &c;
  }
  if (!chosen) {
    err << app.help();
    return 2;
  }
  try {
    Session session(command_path(chosen->app), globals, collect_parameters(*chosen->app));
    const io::Json result = chosen->action(session);
    session.finish(result, out);
    if (result.is_object() && result.contains("failed") && result["failed"].is_number() &&
        result["failed"].get<int>() > 0) {
      return 1;
    }
    return 0;
  } catch (const InvalidInput& e) {
    out << io::dump(io::Json{{"error", io::error_to_json(e)}}) << "\n";
    err << "eulerkit: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    out << io::dump(io::Json{{"error", io::error_to_json(e)}}) << "\n";
    err << "eulerkit: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "eulerkit: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace eulerkit::cli
