#pragma once

#include <cstdint>
#include <vector>

#include "siggame/rng.hpp"

namespace siggame {

// Game dimensions and prior counts. The reward for a successful round is
// fixed at one unit for every (state, signal) pair.
struct GameConfig {
  int num_states = 2;
  int num_signals = 2;
  std::int64_t initial_weight = 1;

  void validate() const;  // throws std::invalid_argument
};

struct StepOutcome {
  int state = 0;
  int signal = 0;
  int act = 0;
  bool success = false;
};

// Accumulated integer payoff counts V(i,j) with cached row, column and
// grand totals. Counts only grow, by exactly one per successful round,
// so every derived quantity can be recomputed from integers on demand.
class PayoffMatrix {
 public:
  explicit PayoffMatrix(const GameConfig& config);

  // Rebuild a game state from explicit counts (e.g. a deserialized or a
  // hand-constructed scenario). All counts must be >= initial_weight.
  static PayoffMatrix from_counts(const GameConfig& config,
                                  std::vector<std::int64_t> counts,
                                  std::int64_t steps_taken);

  const GameConfig& config() const { return config_; }
  int num_states() const { return config_.num_states; }
  int num_signals() const { return config_.num_signals; }

  std::int64_t count(int state, int signal) const {
    return counts_[static_cast<std::size_t>(state) * config_.num_signals +
                   signal];
  }
  std::int64_t row_total(int state) const { return row_totals_[state]; }
  std::int64_t col_total(int signal) const { return col_totals_[signal]; }
  std::int64_t grand_total() const { return grand_total_; }
  std::int64_t steps_taken() const { return steps_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  // Applies one round's outcome: reinforces on success, always advances
  // the step counter.
  void apply(const StepOutcome& outcome);

 private:
  PayoffMatrix() = default;

  GameConfig config_;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> row_totals_;
  std::vector<std::int64_t> col_totals_;
  std::int64_t grand_total_ = 0;
  std::int64_t steps_ = 0;
};

// Draws one round (state uniform, signal by sender counts, act by
// receiver counts) without touching the game state.
StepOutcome sample_outcome(const PayoffMatrix& game, CounterRng& rng);

// Draws one round and applies it.
StepOutcome step(PayoffMatrix& game, CounterRng& rng);

// Point of the simplex: normalized counts with state and signal
// marginals. Entries are nonnegative and sum to one; a point is on the
// boundary if some marginal vanishes.
class OccupationMeasure {
 public:
  OccupationMeasure() = default;  // empty; populate via the factories

  static OccupationMeasure from_weights(int num_states, int num_signals,
                                        std::vector<double> weights);
  static OccupationMeasure from_game(const PayoffMatrix& game);

  int num_states() const { return m1_; }
  int num_signals() const { return m2_; }
  double at(int state, int signal) const {
    return weights_[static_cast<std::size_t>(state) * m2_ + signal];
  }
  double state_marginal(int state) const { return state_marginals_[state]; }
  double signal_marginal(int signal) const {
    return signal_marginals_[signal];
  }

  // Vertices of the state/signal graph: states first, then signals.
  int vertex_count() const { return m1_ + m2_; }
  double vertex_marginal(int v) const {
    return v < m1_ ? state_marginals_[v] : signal_marginals_[v - m1_];
  }
  bool interior() const;

  const std::vector<double>& weights() const { return weights_; }

 private:
  int m1_ = 0;
  int m2_ = 0;
  std::vector<double> weights_;
  std::vector<double> state_marginals_;
  std::vector<double> signal_marginals_;
};

OccupationMeasure occupation_measure(const PayoffMatrix& game);

// y_ij = x_ij / (x_i x_j). Requires both marginals positive.
double efficiency(const OccupationMeasure& x, int state, int signal);

// N_v = sum_k (x_vk / x_v) y_vk over neighbours k of vertex v; >= 1 on
// the interior. Vertex indexing as in OccupationMeasure.
double vertex_efficiency(const OccupationMeasure& x, int vertex);

// Communication potential H(x); zero-weight terms are skipped, which
// extends H to boundary-supported points. 1 <= H <= min(M1, M2).
double potential(const OccupationMeasure& x);

// Probability that the next round is successful: H(x_n) / M1.
double one_step_success_probability(const PayoffMatrix& game);

// p(x) = 1/2 sum over vertices v and neighbour pairs (j,k) of
// (x_vj x_vk / x_v)(y_vj - y_vk)^2. Requires an interior point.
double dissipation(const OccupationMeasure& x);

struct IncrementDecomposition {
  double total = 0;   // E[H(x_{n+1}) - H(x_n) | current counts]
  double p_term = 0;  // pairwise efficiency-spread component, >= 0
  double q_term = 0;  // per-pair self-reinforcement component, >= 0
};

// Closed form for the conditional expected increment of H, decomposed
// into its two nonnegative components.
IncrementDecomposition expected_potential_increment(const PayoffMatrix& game);

}  // namespace siggame
