#pragma once

// Independent brute-force references used by the unit and acceptance
// suites. Everything here recomputes from first principles (outcome
// enumeration, direct sums) and must stay decoupled from the library's
// closed-form implementations.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "siggame/game.hpp"
#include "siggame/rng.hpp"

namespace oracles {

// H recomputed directly from an integer count matrix.
inline double potential_of_counts(int m1, int m2,
                                  const std::vector<std::int64_t>& counts) {
  std::vector<std::int64_t> row(m1, 0), col(m2, 0);
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      row[i] += counts[static_cast<std::size_t>(i) * m2 + j];
      col[j] += counts[static_cast<std::size_t>(i) * m2 + j];
    }
  }
  double h = 0;
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const auto v = counts[static_cast<std::size_t>(i) * m2 + j];
      if (v == 0) continue;
      h += static_cast<double>(v) * v /
           (static_cast<double>(row[i]) * col[j]);
    }
  }
  return h;
}

// Success probability of one round by enumerating every
// (state, signal, act) outcome with its product probability.
inline double enumerate_success_probability(const siggame::PayoffMatrix& g) {
  const int m1 = g.num_states();
  const int m2 = g.num_signals();
  double p = 0;
  for (int s = 0; s < m1; ++s) {
    for (int j = 0; j < m2; ++j) {
      for (int a = 0; a < m1; ++a) {
        if (a != s) continue;
        p += (1.0 / m1) *
             (static_cast<double>(g.count(s, j)) / g.row_total(s)) *
             (static_cast<double>(g.count(a, j)) / g.col_total(j));
      }
    }
  }
  return p;
}

// E[H(x_{n+1}) - H(x_n)] by enumerating the M1*M2 success outcomes (the
// no-success event leaves x unchanged and contributes nothing).
inline double enumerate_expected_increment(const siggame::PayoffMatrix& g) {
  const int m1 = g.num_states();
  const int m2 = g.num_signals();
  const double h0 = potential_of_counts(m1, m2, g.counts());
  double e = 0;
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const double prob =
          (1.0 / m1) *
          (static_cast<double>(g.count(i, j)) / g.row_total(i)) *
          (static_cast<double>(g.count(i, j)) / g.col_total(j));
      auto bumped = g.counts();
      bumped[static_cast<std::size_t>(i) * m2 + j] += 1;
      e += prob * (potential_of_counts(m1, m2, bumped) - h0);
    }
  }
  return e;
}

// Random interior point of the simplex. `floor_share` of the mass is
// spread uniformly, bounding every entry away from zero (needed by the
// finite-difference checks).
inline siggame::OccupationMeasure random_interior_point(
    int m1, int m2, siggame::CounterRng& rng, double floor_share = 0.0) {
  const auto cells = static_cast<std::size_t>(m1) * m2;
  std::vector<double> w(cells);
  double sum = 0;
  for (auto& v : w) {
    v = -std::log(1.0 - rng.next_double());  // Exp(1) -> Dirichlet(1,..,1)
    sum += v;
  }
  for (auto& v : w) {
    v = (1.0 - floor_share) * v / sum + floor_share / cells;
  }
  return siggame::OccupationMeasure::from_weights(m1, m2, std::move(w));
}

// Random point with a randomly thinned support; some marginals may
// vanish, but at least one entry survives.
inline siggame::OccupationMeasure random_supported_point(
    int m1, int m2, siggame::CounterRng& rng) {
  const auto cells = static_cast<std::size_t>(m1) * m2;
  std::vector<double> w(cells);
  double sum = 0;
  while (sum <= 0) {
    sum = 0;
    for (auto& v : w) {
      const bool keep = rng.next_double() < 0.6;
      v = keep ? -std::log(1.0 - rng.next_double()) : 0.0;
      sum += v;
    }
  }
  for (auto& v : w) v /= sum;
  return siggame::OccupationMeasure::from_weights(m1, m2, std::move(w));
}

// Random game with counts in [w0, w0 + spread].
inline siggame::PayoffMatrix random_game(int m1, int m2,
                                         std::int64_t max_extra,
                                         siggame::CounterRng& rng) {
  siggame::GameConfig cfg{m1, m2, 1};
  std::vector<std::int64_t> counts(static_cast<std::size_t>(m1) * m2);
  std::int64_t steps = 0;
  for (auto& c : counts) {
    c = 1 + static_cast<std::int64_t>(
                rng.next_below(static_cast<std::uint64_t>(max_extra + 1)));
    steps += c - 1;
  }
  return siggame::PayoffMatrix::from_counts(cfg, std::move(counts), steps);
}

// Component-structured point: states and signals are partitioned into
// blocks, block b carries total mass `mass[b]` in product form, so all
// efficiencies inside a block coincide (the zero-dissipation structure).
// With equal masses 1/d the point is an interior rest point of the flow.
struct ComponentSpec {
  std::vector<int> states;
  std::vector<int> signals;
  double mass = 0;
};

inline siggame::OccupationMeasure component_product_point(
    int m1, int m2, const std::vector<ComponentSpec>& components,
    siggame::CounterRng* rng = nullptr) {
  std::vector<double> w(static_cast<std::size_t>(m1) * m2, 0.0);
  for (const auto& comp : components) {
    std::vector<double> a(comp.states.size()), b(comp.signals.size());
    double sa = 0, sb = 0;
    for (auto& v : a) {
      v = rng ? 0.25 + rng->next_double() : 1.0;
      sa += v;
    }
    for (auto& v : b) {
      v = rng ? 0.25 + rng->next_double() : 1.0;
      sb += v;
    }
    for (std::size_t s = 0; s < comp.states.size(); ++s) {
      for (std::size_t t = 0; t < comp.signals.size(); ++t) {
        w[static_cast<std::size_t>(comp.states[s]) * m2 + comp.signals[t]] =
            comp.mass * (a[s] / sa) * (b[t] / sb);
      }
    }
  }
  return siggame::OccupationMeasure::from_weights(m1, m2, std::move(w));
}

// Random partition of {0..m1-1} states and {0..m2-1} signals into d
// components, each holding at least one state and one signal. With
// `stars_only` every component keeps a singleton side (extra states go
// only to single-signal components and vice versa).
inline std::vector<ComponentSpec> random_components(
    int m1, int m2, bool stars_only, bool equal_masses,
    siggame::CounterRng& rng) {
  const int dmax = std::min(m1, m2);
  int d = 1 + static_cast<int>(
                  rng.next_below(static_cast<std::uint64_t>(dmax)));
  if (stars_only && d == 1 && m1 > 1 && m2 > 1) d = 2;

  std::vector<ComponentSpec> comps(d);
  for (int c = 0; c < d; ++c) {
    comps[c].states.push_back(c);
    comps[c].signals.push_back(c);
  }
  // Hub type: a component either absorbs extra states (stays
  // single-signal) or extra signals (stays single-state).
  std::vector<char> absorbs_states(d);
  for (int c = 0; c < d; ++c) absorbs_states[c] = rng.next_below(2) == 0;
  if (stars_only) {
    if (m1 > d) absorbs_states[0] = 1;
    if (m2 > d) absorbs_states[d > 1 ? 1 : 0] = 0;
  }
  for (int i = d; i < m1; ++i) {
    int c;
    do {
      c = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d)));
    } while (stars_only && !absorbs_states[c]);
    comps[c].states.push_back(i);
  }
  for (int j = d; j < m2; ++j) {
    int c;
    do {
      c = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d)));
    } while (stars_only && absorbs_states[c]);
    comps[c].signals.push_back(j);
  }

  double remaining = 1.0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (equal_masses) {
      comps[c].mass = 1.0 / comps.size();
    } else if (c + 1 == comps.size()) {
      comps[c].mass = remaining;
    } else {
      const double share =
          remaining * (0.3 + 0.4 * rng.next_double()) /
          static_cast<double>(comps.size() - c);
      comps[c].mass = share;
      remaining -= share;
    }
  }
  return comps;
}

}  // namespace oracles
