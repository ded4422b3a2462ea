#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "holoframe/types.hpp"

int main(int argc, char** argv) {
  using namespace holoframe;
  CLI::App app{"holoframe: integrability checks and frame solves for Lie-algebra-valued (0,1)-forms"};
  std::string config_path;
  std::string command;
  std::string output_dir;
  std::string fixture;
  int threads = 0;
  std::uint64_t seed = 0;
  app.add_option("config", config_path, "INI run configuration")->required();
  app.add_option("--command", command, "check, solve, verify or norms (overrides [run] command)");
  app.add_option("--threads", threads, "worker threads for node-parallel loops")->check(CLI::PositiveNumber);
  auto* output_opt = app.add_option("--output-dir", output_dir, "directory for report.json and artifacts");
  auto* seed_opt = app.add_option("--seed", seed, "seed for sampled pairs and random identity inputs");
  app.add_option("--case", fixture, "use a named fixture as the input form");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitMalformed;
  }

  try {
    cli::RunConfig config = cli::load_run_config(config_path);
    if (!command.empty()) config.command = cli::parse_command(command);
    if (threads > 0) config.threads = threads;
    if (*output_opt) config.output_dir = output_dir;
    if (*seed_opt) config.seed = seed;
    if (!fixture.empty()) {
      config.fixture = fixture;
      config.input_file.clear();
      config.expression.clear();
    }
    return cli::run_command(config);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kExitMalformed;
  } catch (const DimensionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kExitMalformed;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return cli::kExitMalformed;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
