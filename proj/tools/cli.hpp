#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eulerkit/serialize.hpp"

namespace eulerkit::cli {

/// Parses argv, runs one subcommand and writes its JSON to `out`.
/// Returns 0 on success, 1 on numeric failure, 2 on invalid input or usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

inline constexpr const char* kCsvSchema = "eulerkit.csv/1";

struct Globals {
  std::string out_dir;
  std::optional<double> tol;
  std::optional<int> grid_n;
  std::optional<std::uint64_t> seed;
};

/// Collects the manifest of one invocation and writes its artifacts.
class Session {
 public:
  Session(std::string command, const Globals& globals, io::Json parameters);

  const Globals& globals() const { return globals_; }
  double tol_or(double fallback) const { return globals_.tol.value_or(fallback); }
  int grid_n_or(int fallback) const;
  std::uint64_t seed_or(std::uint64_t fallback) const { return globals_.seed.value_or(fallback); }

  /// Every tolerance a command uses is recorded here.
  void tolerance(const std::string& name, double value);
  void parameter(const std::string& name, io::Json value);

  /// Written to --out when given; listed in the manifest either way.
  void csv(const std::string& file, const std::vector<std::string>& columns,
           const std::vector<std::vector<double>>& rows);

  io::Json manifest(bool with_timestamp) const;

  /// {"manifest", "result"} to `out`; result.json and manifest.json under --out.
  void finish(const io::Json& result, std::ostream& out) const;

 private:
  std::string command_;
  Globals globals_;
  io::Json parameters_;
  io::Json tolerances_ = io::Json::object();
  io::Json artifacts_ = io::Json::array();
};

/// c[0] + c[1] x + ...
struct Poly {
  std::vector<double> c;
  double operator()(double x) const;
  Poly derivative() const;
};

using Action = std::function<io::Json(Session&)>;

struct Command {
  CLI::App* app;
  std::string name;
  Action action;
};

using Registry = std::vector<Command>;

void register_ode(CLI::App& root, Registry& reg);
void register_first(CLI::App& root, Registry& reg);
void register_specfun(CLI::App& root, Registry& reg);
void register_var(CLI::App& root, Registry& reg);
void register_suite(CLI::App& root, Registry& reg);

std::string read_file(const std::string& path);
/// "1,-2.5,3" -> {1, -2.5, 3}; InvalidInput on anything else.
std::vector<double> parse_numbers(const std::string& text, const std::string& what);
std::vector<double> grid(double lo, double hi, int n);

}  // namespace eulerkit::cli
