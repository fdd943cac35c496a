#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace siggame::cli {

// Raised on bad or incomplete command lines; maps to exit code 2.
class config_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;

  int states = 2;
  int signals = 2;
  std::int64_t initial_weight = 1;
  std::int64_t steps = 1000000;
  int replications = 200;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::uint64_t replication_index = 0;

  double dt = 0.01;
  std::int64_t ode_steps = 100000;
  std::int64_t sample_stride = 0;  // 0 = pick automatically

  double eq_tol = 1e-8;

  std::string out_dir;  // default: $SIGGAME_OUT_DIR or "."
  std::string format = "csv";
  int parallelism = 1;
  bool force = false;

  std::string input_path;    // classify
  std::string initial_path;  // ode-flow starting point (JSON)

  std::string trace_out;
  std::string state_out;
  std::string trajectory_out;
  std::string report_out;
  std::string census_out;
  std::string traces_dir;  // optional per-replication CSV dump
};

// Parses flags (and an optional key=value config file via --config).
// Flags override file values; unknown keys are rejected; every missing
// required option is reported in one message.
RunConfig parse_config(const std::vector<std::string>& args);

// Runs the configured command. Returns the process exit status:
// 0 success, 1 check or I/O failure, 2 never (config errors throw).
int execute(const RunConfig& config);

// Convenience wrapper for main().
int run(int argc, const char* const* argv);

}  // namespace siggame::cli
