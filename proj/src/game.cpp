#include "siggame/game.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace siggame {

void GameConfig::validate() const {
  if (num_states < 1 || num_signals < 1) {
    throw std::invalid_argument("GameConfig: dimensions must be >= 1");
  }
  if (initial_weight < 1) {
    throw std::invalid_argument("GameConfig: initial weight must be >= 1");
  }
}

PayoffMatrix::PayoffMatrix(const GameConfig& config) {
  config.validate();
  config_ = config;
  const auto cells =
      static_cast<std::size_t>(config.num_states) * config.num_signals;
  counts_.assign(cells, config.initial_weight);
  row_totals_.assign(config.num_states,
                     config.initial_weight * config.num_signals);
  col_totals_.assign(config.num_signals,
                     config.initial_weight * config.num_states);
  grand_total_ = config.initial_weight * config.num_states *
                 config.num_signals;
}

PayoffMatrix PayoffMatrix::from_counts(const GameConfig& config,
                                       std::vector<std::int64_t> counts,
                                       std::int64_t steps_taken) {
  config.validate();
  const auto cells =
      static_cast<std::size_t>(config.num_states) * config.num_signals;
  if (counts.size() != cells) {
    throw std::invalid_argument("PayoffMatrix: counts size mismatch");
  }
  if (steps_taken < 0) {
    throw std::invalid_argument("PayoffMatrix: negative step count");
  }
  for (const auto c : counts) {
    if (c < config.initial_weight) {
      throw std::invalid_argument(
          "PayoffMatrix: counts may never drop below the initial weight");
    }
  }
  PayoffMatrix game;
  game.config_ = config;
  game.counts_ = std::move(counts);
  game.row_totals_.assign(config.num_states, 0);
  game.col_totals_.assign(config.num_signals, 0);
  for (int i = 0; i < config.num_states; ++i) {
    for (int j = 0; j < config.num_signals; ++j) {
      const auto c = game.count(i, j);
      game.row_totals_[i] += c;
      game.col_totals_[j] += c;
      game.grand_total_ += c;
    }
  }
  game.steps_ = steps_taken;
  return game;
}

void PayoffMatrix::apply(const StepOutcome& outcome) {
  ++steps_;
  if (!outcome.success) return;
  counts_[static_cast<std::size_t>(outcome.state) * config_.num_signals +
          outcome.signal] += 1;
  row_totals_[outcome.state] += 1;
  col_totals_[outcome.signal] += 1;
  grand_total_ += 1;
}

StepOutcome sample_outcome(const PayoffMatrix& game, CounterRng& rng) {
  const int m1 = game.num_states();
  const int m2 = game.num_signals();

  StepOutcome out;
  out.state = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m1)));

  // Signal drawn proportionally to the sender's accumulated counts.
  auto r = static_cast<std::int64_t>(
      rng.next_below(static_cast<std::uint64_t>(game.row_total(out.state))));
  for (int j = 0; j < m2; ++j) {
    r -= game.count(out.state, j);
    if (r < 0) {
      out.signal = j;
      break;
    }
  }

  // Act drawn proportionally to the receiver's accumulated counts.
  r = static_cast<std::int64_t>(
      rng.next_below(static_cast<std::uint64_t>(game.col_total(out.signal))));
  for (int i = 0; i < m1; ++i) {
    r -= game.count(i, out.signal);
    if (r < 0) {
      out.act = i;
      break;
    }
  }

  out.success = (out.act == out.state);
  return out;
}

StepOutcome step(PayoffMatrix& game, CounterRng& rng) {
  const StepOutcome out = sample_outcome(game, rng);
  game.apply(out);
  return out;
}

OccupationMeasure OccupationMeasure::from_weights(
    int num_states, int num_signals, std::vector<double> weights) {
  if (num_states < 1 || num_signals < 1) {
    throw std::invalid_argument("OccupationMeasure: dimensions must be >= 1");
  }
  const auto cells = static_cast<std::size_t>(num_states) * num_signals;
  if (weights.size() != cells) {
    throw std::invalid_argument("OccupationMeasure: weights size mismatch");
  }
  double sum = 0;
  for (const auto w : weights) {
    if (!(w >= 0)) {
      throw std::invalid_argument(
          "OccupationMeasure: weights must be nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "OccupationMeasure: weights must sum to one (got " +
        std::to_string(sum) + ")");
  }

  OccupationMeasure x;
  x.m1_ = num_states;
  x.m2_ = num_signals;
  x.weights_ = std::move(weights);
  for (auto& w : x.weights_) w /= sum;
  x.state_marginals_.assign(num_states, 0.0);
  x.signal_marginals_.assign(num_signals, 0.0);
  for (int i = 0; i < num_states; ++i) {
    for (int j = 0; j < num_signals; ++j) {
      x.state_marginals_[i] += x.at(i, j);
      x.signal_marginals_[j] += x.at(i, j);
    }
  }
  return x;
}

OccupationMeasure OccupationMeasure::from_game(const PayoffMatrix& game) {
  const auto total = static_cast<double>(game.grand_total());
  std::vector<double> w(game.counts().size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = static_cast<double>(game.counts()[k]) / total;
  }
  return from_weights(game.num_states(), game.num_signals(), std::move(w));
}

bool OccupationMeasure::interior() const {
  for (const auto m : state_marginals_) {
    if (m <= 0) return false;
  }
  for (const auto m : signal_marginals_) {
    if (m <= 0) return false;
  }
  return true;
}

OccupationMeasure occupation_measure(const PayoffMatrix& game) {
  return OccupationMeasure::from_game(game);
}

double efficiency(const OccupationMeasure& x, int state, int signal) {
  const double xi = x.state_marginal(state);
  const double xj = x.signal_marginal(signal);
  if (xi <= 0 || xj <= 0) {
    throw std::domain_error(
        "efficiency: undefined at a boundary point (zero marginal)");
  }
  return x.at(state, signal) / (xi * xj);
}

namespace {

// Iterates the neighbours of a vertex in the symmetrized indexing:
// states are adjacent to signals and vice versa.
template <typename Fn>
void for_each_neighbor(const OccupationMeasure& x, int vertex, Fn&& fn) {
  const int m1 = x.num_states();
  if (vertex < m1) {
    for (int j = 0; j < x.num_signals(); ++j) {
      fn(m1 + j, x.at(vertex, j));
    }
  } else {
    for (int i = 0; i < m1; ++i) {
      fn(i, x.at(i, vertex - m1));
    }
  }
}

}  // namespace

double vertex_efficiency(const OccupationMeasure& x, int vertex) {
  const double xv = x.vertex_marginal(vertex);
  if (xv <= 0) {
    throw std::domain_error(
        "vertex_efficiency: undefined at a vertex with zero marginal");
  }
  double sum = 0;
  for_each_neighbor(x, vertex, [&](int u, double w) {
    if (w <= 0) return;
    const double xu = x.vertex_marginal(u);
    sum += (w / xv) * (w / (xv * xu));
  });
  return sum;
}

double potential(const OccupationMeasure& x) {
  double h = 0;
  for (int i = 0; i < x.num_states(); ++i) {
    for (int j = 0; j < x.num_signals(); ++j) {
      const double w = x.at(i, j);
      if (w <= 0) continue;
      h += w * w / (x.state_marginal(i) * x.signal_marginal(j));
    }
  }
  return h;
}

double one_step_success_probability(const PayoffMatrix& game) {
  return potential(OccupationMeasure::from_game(game)) / game.num_states();
}

double dissipation(const OccupationMeasure& x) {
  if (!x.interior()) {
    throw std::domain_error("dissipation: undefined on the boundary");
  }
  double p = 0;
  const int n = x.vertex_count();
  for (int v = 0; v < n; ++v) {
    const double xv = x.vertex_marginal(v);
    // Collect the vertex's supported edges once, then sum over ordered
    // neighbour pairs.
    std::vector<std::pair<double, double>> edges;  // (weight, efficiency)
    for_each_neighbor(x, v, [&](int u, double w) {
      if (w <= 0) return;
      edges.emplace_back(w, w / (xv * x.vertex_marginal(u)));
    });
    for (const auto& [wa, ya] : edges) {
      for (const auto& [wb, yb] : edges) {
        const double d = ya - yb;
        p += (wa * wb / xv) * d * d;
      }
    }
  }
  return 0.5 * p;
}

namespace {

double count_ratio(std::int64_t num, std::int64_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

IncrementDecomposition expected_potential_increment(
    const PayoffMatrix& game) {
  const int m1 = game.num_states();
  const int m2 = game.num_signals();
  const int n = m1 + m2;

  auto edge_count = [&](int v, int u) {
    return v < m1 ? game.count(v, u - m1) : game.count(u, v - m1);
  };
  auto vertex_total = [&](int v) {
    return v < m1 ? game.row_total(v) : game.col_total(v - m1);
  };

  // Pairwise component: ordered neighbour pairs around each vertex.
  double p = 0;
  for (int v = 0; v < n; ++v) {
    const auto tv = vertex_total(v);
    const int first = v < m1 ? m1 : 0;
    const int last = v < m1 ? n : m1;
    for (int a = first; a < last; ++a) {
      const auto va = edge_count(v, a);
      const double ya = count_ratio(va, tv) / vertex_total(a);
      for (int b = first; b < last; ++b) {
        const auto vb = edge_count(v, b);
        const double yb = count_ratio(vb, tv) / vertex_total(b);
        const double d = ya - yb;
        p += static_cast<double>(va) * static_cast<double>(vb) /
             static_cast<double>(tv + 1) * d * d;
      }
    }
  }
  p *= 0.5;

  // Per-pair component over state/signal pairs.
  double q = 0;
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const auto vij = game.count(i, j);
      const auto vi = game.row_total(i);
      const auto vj = game.col_total(j);
      const double w = static_cast<double>(vij) * vij /
                       (static_cast<double>(vi) * vj *
                        static_cast<double>(vi + 1) * (vj + 1));
      q += w * (1.0 - count_ratio(vij, vi)) * (1.0 - count_ratio(vij, vj));
    }
  }

  // The pairwise and per-pair sums above account for the signal and act
  // draws; the uniform state draw contributes the remaining 1/M1.
  IncrementDecomposition out;
  out.p_term = p / m1;
  out.q_term = q / m1;
  out.total = out.p_term + out.q_term;
  return out;
}

}  // namespace siggame
