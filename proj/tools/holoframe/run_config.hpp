#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "holoframe/canonical_solver.hpp"
#include "holoframe/frame_solver.hpp"
#include "holoframe/holder.hpp"
#include "holoframe/identity_suite.hpp"

namespace holoframe::cli {

enum class Command { check, solve, verify, norms };

Command parse_command(const std::string& s);
std::string to_string(Command c);

/// Everything one run needs, fully resolved from the config file and the
/// command-line overrides.
struct RunConfig {
  Command command = Command::check;
  std::uint64_t seed = 0;
  int threads = 1;
  std::filesystem::path output_dir = "holoframe_out";

  std::string algebra_name;             ///< built-in name, or empty
  std::filesystem::path algebra_file;   ///< JSON definition, or empty

  // Domain block. Missing values fall back to the fixture (n, radius) or
  // to n = 1, radius = 1, spacing = 1/32.
  std::optional<int> n;
  std::optional<double> radius;
  std::optional<double> spacing;
  double subdomain_fraction = 0.5;

  // Input: at most one of these is set.
  std::string fixture;
  std::filesystem::path input_file;
  std::string expression;
  int input_degree = 1;

  std::optional<std::string> solver_mode;
  std::optional<std::string> normalization;
  double cg_tolerance = 1e-10;
  int cg_max_iters = 0;

  SolverConfig newton;

  double kappa = 0.5;
  std::size_t exhaustive_limit = 4096;
  std::size_t sampled_pairs = 1'000'000;
  bool force_exhaustive = false;

  IdentitySuiteOptions suite;
  double jacobi_tolerance = 1e-12;
  std::vector<double> margin_eps{0.5, 0.25};
  double margin_tolerance = 0.02;

  std::vector<double> refinements;

  bool has_input() const { return !fixture.empty() || !input_file.empty() || !expression.empty(); }
  /// Throws ParseError when the config breaks an invariant.
  void validate() const;
  /// The resolved config as embedded in reports.
  nlohmann::json to_json() const;
  CanonicalSolver solver_for(int dimension) const;
  HolderOptions holder_options() const;
};

/// Reads an INI file. Unknown sections or keys are errors. Relative
/// algebra and input file paths are taken relative to the config file.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace holoframe::cli
