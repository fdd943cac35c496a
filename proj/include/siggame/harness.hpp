#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "siggame/equilibrium.hpp"
#include "siggame/game.hpp"

namespace siggame {

struct TraceSample {
  std::int64_t n = 0;        // rounds played
  double h = 0;              // potential of the occupation measure
  double t_over_n = 0;       // grand total over rounds
  std::int64_t total = 0;    // grand total (integer)
  std::vector<double> occupation;  // row-major snapshot
};

// One Monte Carlo run. Traces are sampled on the geometric grid
// n = ceil(1.5^k) plus the final step; the terminal graph keeps the
// pairs that are both heavy (x_ij > 1e-3) and still growing over the
// last tenth of the run.
struct ReplicationResult {
  std::uint64_t master_seed = 0;
  std::uint64_t replication_index = 0;
  std::int64_t steps = 0;
  GameConfig config;

  std::vector<TraceSample> trace;
  std::vector<std::int64_t> terminal_counts;
  OccupationMeasure terminal;
  BipartiteGraph limit_graph;
  bool property_p = false;
  // Some pair outside the limit graph still grew near the end: the run
  // has not settled and is reported rather than force-classified.
  bool unresolved = false;
  // Pairs whose count never changed over the second half of the run.
  std::vector<std::pair<int, int>> frozen_pairs;
};

inline constexpr double kLimitGraphThreshold = 1e-3;

ReplicationResult run_replication(const GameConfig& config,
                                  std::int64_t steps,
                                  std::uint64_t master_seed,
                                  std::uint64_t replication_index = 0);

struct CensusEntry {
  std::vector<std::pair<int, int>> edges;
  int count = 0;
  double frequency = 0;
  double mean_potential = 0;
  bool property_p = false;
  int unresolved = 0;
};

// Classes of terminal graphs under exact edge-set equality, most
// frequent first.
std::vector<CensusEntry> limit_graph_census(
    const std::vector<ReplicationResult>& results);

// Secondary view collapsing classes under part-preserving relabelings
// of states and signals.
std::vector<CensusEntry> isomorphism_census(
    const std::vector<ReplicationResult>& results);

struct EnsembleStats {
  GameConfig config;
  std::int64_t steps = 0;
  std::uint64_t master_seed = 0;
  std::vector<ReplicationResult> replications;
  std::vector<CensusEntry> census;
  std::vector<CensusEntry> census_up_to_relabeling;
  int unresolved = 0;
  // Per grid point: n, mean potential, mean total/n.
  std::vector<TraceSample> mean_trace;
};

EnsembleStats run_ensemble(const GameConfig& config, std::int64_t steps,
                           int replications, std::uint64_t master_seed,
                           int parallelism = 1);

struct SubmartingaleWindow {
  std::int64_t n_from = 0;
  std::int64_t n_to = 0;
  double mean_increment = 0;
  double standard_error = 0;
  bool significantly_negative = false;
};

struct SubmartingaleReport {
  std::vector<SubmartingaleWindow> windows;
  int failing = 0;
  double failing_fraction = 0;
  bool pass = false;
};

// Mean potential increments per grid window across replications; a
// window fails when its mean drops below -3 standard errors. Passes if
// at most 1% of windows fail. Requires at least 50 aligned traces.
SubmartingaleReport submartingale_test(
    const std::vector<std::vector<TraceSample>>& traces);

// Snapshot of the stable-configuration events for a target graph.
struct MonitorSnapshot {
  std::int64_t n = 0;
  std::int64_t evaluation_start = 0;  // first n with 2*eps*n >= max prior
  bool started = false;
  bool representatives_heavy = false;       // V_i >= 2 eps n at every rep
  bool ratios_bounded_below = false;        // alpha_i >= eps everywhere
  bool cross_counts_small = false;          // V_ij <= sqrt(n) across parts
  std::vector<double> alpha;                // per vertex, states first
  std::vector<int> representative;          // pi, per vertex
};

MonitorSnapshot monitor_stable_config(const PayoffMatrix& game,
                                      const BipartiteGraph& target,
                                      double eps);

struct RetentionResult {
  bool retained = false;
  std::optional<std::int64_t> cross_change_step;
  std::optional<std::int64_t> ratio_exit_step;
};

// Runs `steps` further rounds, checking that no cross-component count
// changes and that every alpha ratio stays within (1-eps, 1+eps) of its
// starting value.
RetentionResult run_retention(PayoffMatrix game, const BipartiteGraph& target,
                              double eps, std::int64_t steps,
                              CounterRng& rng);

// exp(-lambda^2 / (2 sum gamma_k^2)): tail bound for a martingale with
// per-step increments bounded by gamma_k.
double azuma_bound(const std::vector<double>& increment_bounds,
                   double lambda);

// Success frequency of repeated draws from a frozen game state.
double frozen_success_frequency(const PayoffMatrix& game,
                                std::int64_t samples, CounterRng& rng);

}  // namespace siggame
