#include "siggame/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace siggame {

namespace {

std::vector<std::int64_t> geometric_grid(std::int64_t steps) {
  std::vector<std::int64_t> grid;
  double v = 1.0;
  while (true) {
    const auto n = static_cast<std::int64_t>(std::ceil(v));
    if (n >= steps) break;
    if (grid.empty() || n != grid.back()) grid.push_back(n);
    v *= 1.5;
  }
  grid.push_back(steps);
  return grid;
}

}  // namespace

ReplicationResult run_replication(const GameConfig& config,
                                  std::int64_t steps,
                                  std::uint64_t master_seed,
                                  std::uint64_t replication_index) {
  if (steps < 1) {
    throw std::invalid_argument("run_replication: steps must be >= 1");
  }
  PayoffMatrix game(config);
  CounterRng rng(master_seed, replication_index);

  const auto grid = geometric_grid(steps);
  const std::int64_t half_mark = steps / 2;
  const auto tail_mark =
      static_cast<std::int64_t>(std::floor(0.9 * static_cast<double>(steps)));

  ReplicationResult result;
  result.master_seed = master_seed;
  result.replication_index = replication_index;
  result.steps = steps;
  result.config = config;

  std::vector<std::int64_t> counts_at_half;
  std::vector<std::int64_t> counts_at_tail;
  std::size_t next_sample = 0;
  for (std::int64_t n = 1; n <= steps; ++n) {
    step(game, rng);
    if (n == half_mark) counts_at_half = game.counts();
    if (n == tail_mark) counts_at_tail = game.counts();
    if (next_sample < grid.size() && n == grid[next_sample]) {
      TraceSample s;
      s.n = n;
      const auto x = OccupationMeasure::from_game(game);
      s.h = potential(x);
      s.total = game.grand_total();
      s.t_over_n = static_cast<double>(s.total) / static_cast<double>(n);
      s.occupation = x.weights();
      result.trace.push_back(s);
      ++next_sample;
    }
  }
  if (counts_at_half.empty()) counts_at_half = game.counts();
  if (counts_at_tail.empty()) counts_at_tail = game.counts();

  result.terminal_counts = game.counts();
  result.terminal = OccupationMeasure::from_game(game);

  const int m1 = config.num_states;
  const int m2 = config.num_signals;
  std::vector<BipartiteGraph::Edge> edges;
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const auto k = static_cast<std::size_t>(i) * m2 + j;
      const bool grew = result.terminal_counts[k] > counts_at_tail[k];
      const bool heavy = result.terminal.at(i, j) > kLimitGraphThreshold;
      if (heavy && grew) {
        edges.push_back({i, j, efficiency(result.terminal, i, j)});
      } else if (grew) {
        result.unresolved = true;
      }
      if (result.terminal_counts[k] == counts_at_half[k]) {
        result.frozen_pairs.emplace_back(i, j);
      }
    }
  }
  result.limit_graph = BipartiteGraph::from_edges(m1, m2, std::move(edges));
  result.property_p = check_property_P(result.limit_graph);
  return result;
}

namespace {

std::vector<CensusEntry> census_of_keys(
    const std::vector<ReplicationResult>& results,
    const std::vector<std::vector<std::pair<int, int>>>& keys) {
  std::map<std::vector<std::pair<int, int>>, CensusEntry> classes;
  for (std::size_t r = 0; r < results.size(); ++r) {
    auto& entry = classes[keys[r]];
    if (entry.count == 0) {
      entry.edges = keys[r];
      entry.property_p = check_property_P(BipartiteGraph::from_edges(
          results[r].config.num_states, results[r].config.num_signals,
          [&] {
            std::vector<BipartiteGraph::Edge> es;
            for (const auto& [i, j] : keys[r]) es.push_back({i, j, 0.0});
            return es;
          }()));
    }
    entry.count += 1;
    entry.mean_potential += results[r].trace.back().h;
    entry.unresolved += results[r].unresolved ? 1 : 0;
  }
  std::vector<CensusEntry> out;
  out.reserve(classes.size());
  for (auto& [key, entry] : classes) {
    entry.frequency =
        static_cast<double>(entry.count) / static_cast<double>(results.size());
    entry.mean_potential /= entry.count;
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(), [](const CensusEntry& a,
                                       const CensusEntry& b) {
    return a.count > b.count || (a.count == b.count && a.edges < b.edges);
  });
  return out;
}

}  // namespace

std::vector<CensusEntry> limit_graph_census(
    const std::vector<ReplicationResult>& results) {
  if (results.empty()) return {};
  std::vector<std::vector<std::pair<int, int>>> keys;
  keys.reserve(results.size());
  for (const auto& r : results) keys.push_back(r.limit_graph.edge_pairs());
  return census_of_keys(results, keys);
}

std::vector<CensusEntry> isomorphism_census(
    const std::vector<ReplicationResult>& results) {
  if (results.empty()) return {};
  const int m1 = results.front().config.num_states;
  const int m2 = results.front().config.num_signals;
  if (m1 > 6 || m2 > 6) {
    throw std::invalid_argument(
        "isomorphism_census: relabeling search only supported up to 6x6");
  }
  std::vector<int> sperm(m1), tperm(m2);

  auto canonical = [&](const std::vector<std::pair<int, int>>& edges) {
    std::iota(sperm.begin(), sperm.end(), 0);
    std::vector<std::pair<int, int>> best;
    do {
      std::iota(tperm.begin(), tperm.end(), 0);
      do {
        std::vector<std::pair<int, int>> relabeled;
        relabeled.reserve(edges.size());
        for (const auto& [i, j] : edges) {
          relabeled.emplace_back(sperm[i], tperm[j]);
        }
        std::sort(relabeled.begin(), relabeled.end());
        if (best.empty() || relabeled < best) best = std::move(relabeled);
      } while (std::next_permutation(tperm.begin(), tperm.end()));
    } while (std::next_permutation(sperm.begin(), sperm.end()));
    return best;
  };

  std::vector<std::vector<std::pair<int, int>>> keys;
  keys.reserve(results.size());
  for (const auto& r : results) {
    keys.push_back(canonical(r.limit_graph.edge_pairs()));
  }
  return census_of_keys(results, keys);
}

EnsembleStats run_ensemble(const GameConfig& config, std::int64_t steps,
                           int replications, std::uint64_t master_seed,
                           int parallelism) {
  if (replications < 1) {
    throw std::invalid_argument("run_ensemble: replications must be >= 1");
  }
  if (parallelism < 1) parallelism = 1;

  EnsembleStats stats;
  stats.config = config;
  stats.steps = steps;
  stats.master_seed = master_seed;
  stats.replications.resize(replications);

  std::atomic<int> next{0};
  auto worker = [&] {
    while (true) {
      const int index = next.fetch_add(1);
      if (index >= replications) break;
      stats.replications[index] =
          run_replication(config, steps, master_seed,
                          static_cast<std::uint64_t>(index));
    }
  };
  if (parallelism == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int threads = std::min(parallelism, replications);
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  stats.census = limit_graph_census(stats.replications);
  stats.census_up_to_relabeling = isomorphism_census(stats.replications);
  for (const auto& r : stats.replications) {
    stats.unresolved += r.unresolved ? 1 : 0;
  }

  // Deterministic ordered fold over the shared sample grid.
  const auto& grid_trace = stats.replications.front().trace;
  stats.mean_trace.resize(grid_trace.size());
  for (std::size_t k = 0; k < grid_trace.size(); ++k) {
    stats.mean_trace[k].n = grid_trace[k].n;
  }
  for (const auto& r : stats.replications) {
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      stats.mean_trace[k].h += r.trace[k].h;
      stats.mean_trace[k].t_over_n += r.trace[k].t_over_n;
    }
  }
  for (auto& s : stats.mean_trace) {
    s.h /= replications;
    s.t_over_n /= replications;
  }
  return stats;
}

SubmartingaleReport submartingale_test(
    const std::vector<std::vector<TraceSample>>& traces) {
  if (traces.size() < 50) {
    throw std::invalid_argument(
        "submartingale_test: needs at least 50 traces");
  }
  const std::size_t grid_size = traces.front().size();
  for (const auto& t : traces) {
    if (t.size() != grid_size) {
      throw std::invalid_argument(
          "submartingale_test: traces are not aligned to one grid");
    }
  }
  if (grid_size < 2) {
    throw std::invalid_argument("submartingale_test: traces too short");
  }

  SubmartingaleReport report;
  const auto reps = static_cast<double>(traces.size());
  for (std::size_t k = 0; k + 1 < grid_size; ++k) {
    double mean = 0;
    for (const auto& t : traces) mean += t[k + 1].h - t[k].h;
    mean /= reps;
    double var = 0;
    for (const auto& t : traces) {
      const double d = (t[k + 1].h - t[k].h) - mean;
      var += d * d;
    }
    var /= (reps - 1.0);
    SubmartingaleWindow w;
    w.n_from = traces.front()[k].n;
    w.n_to = traces.front()[k + 1].n;
    w.mean_increment = mean;
    w.standard_error = std::sqrt(var / reps);
    w.significantly_negative = mean < -3.0 * w.standard_error;
    report.failing += w.significantly_negative ? 1 : 0;
    report.windows.push_back(w);
  }
  report.failing_fraction =
      static_cast<double>(report.failing) /
      static_cast<double>(report.windows.size());
  report.pass = report.failing_fraction <= 0.01;
  return report;
}

namespace {

// pi of the target graph: each vertex maps to its component's single
// state if the state side is a singleton, otherwise to its single
// signal.
std::vector<int> representatives(const BipartiteGraph& g) {
  const auto comps = g.component_vertices();
  std::vector<int> rep_of_component(comps.size(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::vector<int> states, signals;
    for (const int v : comps[c]) {
      (v < g.num_states ? states : signals).push_back(v);
    }
    if (states.size() == 1) {
      rep_of_component[c] = states.front();
    } else if (signals.size() == 1) {
      rep_of_component[c] = signals.front();
    }
  }
  std::vector<int> rep(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    rep[v] = rep_of_component[g.component[v]];
  }
  return rep;
}

std::int64_t vertex_total(const PayoffMatrix& game, int v) {
  return v < game.num_states() ? game.row_total(v)
                               : game.col_total(v - game.num_states());
}

}  // namespace

MonitorSnapshot monitor_stable_config(const PayoffMatrix& game,
                                      const BipartiteGraph& target,
                                      double eps) {
  if (!check_property_P(target)) {
    throw std::invalid_argument(
        "monitor_stable_config: target graph must satisfy the "
        "single-side-per-component property");
  }
  if (!(eps > 0) || eps >= 1.0 / game.num_states()) {
    throw std::invalid_argument(
        "monitor_stable_config: eps must lie in (0, 1/M1)");
  }
  if (target.num_states != game.num_states() ||
      target.num_signals != game.num_signals()) {
    throw std::invalid_argument("monitor_stable_config: dimension mismatch");
  }

  MonitorSnapshot snap;
  snap.n = game.steps_taken();
  snap.representative = representatives(target);

  const std::int64_t max_prior =
      game.config().initial_weight *
      std::max(game.num_states(), game.num_signals());
  snap.evaluation_start = static_cast<std::int64_t>(
      std::ceil(static_cast<double>(max_prior) / (2.0 * eps)));
  snap.started = snap.n >= snap.evaluation_start;

  const int vertices = game.num_states() + game.num_signals();
  snap.alpha.resize(vertices);
  bool heavy = snap.started;
  bool ratios = true;
  for (int v = 0; v < vertices; ++v) {
    const int rep = snap.representative[v];
    snap.alpha[v] = static_cast<double>(vertex_total(game, v)) /
                    static_cast<double>(vertex_total(game, rep));
    if (snap.alpha[v] < eps) ratios = false;
    if (v == rep &&
        vertex_total(game, v) < 2.0 * eps * static_cast<double>(snap.n)) {
      heavy = false;
    }
  }
  snap.representatives_heavy = heavy;
  snap.ratios_bounded_below = ratios;

  bool cross_small = true;
  const double root_n = std::sqrt(static_cast<double>(snap.n));
  for (int i = 0; i < game.num_states() && cross_small; ++i) {
    for (int j = 0; j < game.num_signals(); ++j) {
      if (snap.representative[i] ==
          snap.representative[game.num_states() + j]) {
        continue;
      }
      if (static_cast<double>(game.count(i, j)) > root_n) {
        cross_small = false;
        break;
      }
    }
  }
  snap.cross_counts_small = cross_small;
  return snap;
}

RetentionResult run_retention(PayoffMatrix game, const BipartiteGraph& target,
                              double eps, std::int64_t steps,
                              CounterRng& rng) {
  const auto rep = representatives(target);
  const int vertices = game.num_states() + game.num_signals();
  std::vector<double> alpha0(vertices);
  for (int v = 0; v < vertices; ++v) {
    alpha0[v] = static_cast<double>(vertex_total(game, v)) /
                static_cast<double>(vertex_total(game, rep[v]));
  }

  RetentionResult result;
  for (std::int64_t n = 1; n <= steps; ++n) {
    const auto out = step(game, rng);
    if (out.success && !result.cross_change_step &&
        rep[out.state] != rep[game.num_states() + out.signal]) {
      result.cross_change_step = n;
    }
    if (!result.ratio_exit_step) {
      for (int v = 0; v < vertices; ++v) {
        const double a = static_cast<double>(vertex_total(game, v)) /
                         static_cast<double>(vertex_total(game, rep[v]));
        const double ratio = a / alpha0[v];
        if (ratio <= 1.0 - eps || ratio >= 1.0 + eps) {
          result.ratio_exit_step = n;
          break;
        }
      }
    }
    if (result.cross_change_step && result.ratio_exit_step) break;
  }
  result.retained = !result.cross_change_step && !result.ratio_exit_step;
  return result;
}

double azuma_bound(const std::vector<double>& increment_bounds,
                   double lambda) {
  if (!(lambda > 0)) {
    throw std::invalid_argument("azuma_bound: lambda must be positive");
  }
  if (increment_bounds.empty()) {
    throw std::invalid_argument("azuma_bound: empty increment list");
  }
  double sum_sq = 0;
  for (const auto g : increment_bounds) {
    if (!(g > 0)) {
      throw std::invalid_argument(
          "azuma_bound: increment bounds must be positive");
    }
    sum_sq += g * g;
  }
  if (sum_sq <= 0) {
    throw std::invalid_argument("azuma_bound: zero variance budget");
  }
  return std::exp(-lambda * lambda / (2.0 * sum_sq));
}

double frozen_success_frequency(const PayoffMatrix& game,
                                std::int64_t samples, CounterRng& rng) {
  if (samples < 1) {
    throw std::invalid_argument(
        "frozen_success_frequency: samples must be >= 1");
  }
  std::int64_t hits = 0;
  for (std::int64_t k = 0; k < samples; ++k) {
    if (sample_outcome(game, rng).success) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace siggame
