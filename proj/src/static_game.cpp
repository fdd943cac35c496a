#include "siggame/static_game.hpp"

#include <cmath>
#include <string>

namespace siggame {

namespace {

void check_rows_stochastic(const std::vector<double>& m, int rows, int cols,
                           const char* name) {
  if (m.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument(std::string(name) + ": size mismatch");
  }
  for (int r = 0; r < rows; ++r) {
    double sum = 0;
    for (int c = 0; c < cols; ++c) {
      const double v = m[static_cast<std::size_t>(r) * cols + c];
      if (!(v >= 0)) {
        throw std::invalid_argument(std::string(name) +
                                    ": entries must be nonnegative");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument(std::string(name) + ": row " +
                                  std::to_string(r) + " sums to " +
                                  std::to_string(sum));
    }
  }
}

}  // namespace

StrategyPair::StrategyPair(int num_states_, int num_signals_,
                           std::vector<double> sender_,
                           std::vector<double> receiver_)
    : num_states(num_states_),
      num_signals(num_signals_),
      sender(std::move(sender_)),
      receiver(std::move(receiver_)) {
  if (num_states < 1 || num_signals < 1) {
    throw std::invalid_argument("StrategyPair: dimensions must be >= 1");
  }
  check_rows_stochastic(sender, num_states, num_signals, "sender");
  check_rows_stochastic(receiver, num_signals, num_states, "receiver");
}

StrategyPair psi(const OccupationMeasure& x) {
  if (!x.interior()) {
    throw std::domain_error("psi: undefined on the boundary");
  }
  const int m1 = x.num_states();
  const int m2 = x.num_signals();
  std::vector<double> p(static_cast<std::size_t>(m1) * m2);
  std::vector<double> q(static_cast<std::size_t>(m2) * m1);
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      p[static_cast<std::size_t>(i) * m2 + j] =
          x.at(i, j) / x.state_marginal(i);
      q[static_cast<std::size_t>(j) * m1 + i] =
          x.at(i, j) / x.signal_marginal(j);
    }
  }
  return StrategyPair(m1, m2, std::move(p), std::move(q));
}

OccupationMeasure psi_inverse(const StrategyPair& s) {
  const int m1 = s.num_states;
  const int m2 = s.num_signals;
  for (int j = 0; j < m2; ++j) {
    double col_max = 0;
    for (int i = 0; i < m1; ++i) col_max = std::max(col_max, s.p(i, j));
    if (col_max <= 0) {
      throw std::invalid_argument(
          "psi_inverse: sender column " + std::to_string(j) +
          " is entirely zero");
    }
  }
  for (int i = 0; i < m1; ++i) {
    double col_max = 0;
    for (int j = 0; j < m2; ++j) col_max = std::max(col_max, s.q(j, i));
    if (col_max <= 0) {
      throw std::invalid_argument(
          "psi_inverse: receiver column " + std::to_string(i) +
          " is entirely zero");
    }
  }

  std::vector<double> w(static_cast<std::size_t>(m1) * m2);
  double z = 0;
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const double v = s.p(i, j) * s.q(j, i);
      w[static_cast<std::size_t>(i) * m2 + j] = v;
      z += v;
    }
  }
  for (auto& v : w) v /= z;
  return OccupationMeasure::from_weights(m1, m2, std::move(w));
}

double payoff(const StrategyPair& a, const StrategyPair& b) {
  if (a.num_states != b.num_states || a.num_signals != b.num_signals) {
    throw std::invalid_argument("payoff: dimension mismatch");
  }
  double cross_ab = 0;  // tr(P_a Q_b)
  double cross_ba = 0;  // tr(P_b Q_a)
  for (int i = 0; i < a.num_states; ++i) {
    for (int j = 0; j < a.num_signals; ++j) {
      cross_ab += a.p(i, j) * b.q(j, i);
      cross_ba += b.p(i, j) * a.q(j, i);
    }
  }
  return 0.5 * cross_ab + 0.5 * cross_ba;
}

namespace {

// Positive entries of one column must agree within tol; entries at or
// below tol count as zero. Returns false on a mixed column.
bool column_is_flat(const std::vector<double>& m, int rows, int cols,
                    int col, double tol, bool* has_positive) {
  double lo = 0, hi = 0;
  bool seen = false;
  for (int r = 0; r < rows; ++r) {
    const double v = m[static_cast<std::size_t>(r) * cols + col];
    if (v <= tol) continue;
    if (!seen) {
      lo = hi = v;
      seen = true;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (has_positive) *has_positive = seen;
  return !seen || (hi - lo) <= tol;
}

void require_no_zero_columns(const StrategyPair& s, double tol) {
  for (int j = 0; j < s.num_signals; ++j) {
    bool any = false;
    for (int i = 0; i < s.num_states; ++i) any = any || s.p(i, j) > tol;
    if (!any) {
      throw not_characterized_error(
          "is_nash: sender column " + std::to_string(j) +
          " is entirely zero; the column-pattern characterization does "
          "not apply");
    }
  }
  for (int i = 0; i < s.num_states; ++i) {
    bool any = false;
    for (int j = 0; j < s.num_signals; ++j) any = any || s.q(j, i) > tol;
    if (!any) {
      throw not_characterized_error(
          "is_nash: receiver column " + std::to_string(i) +
          " is entirely zero; the column-pattern characterization does "
          "not apply");
    }
  }
}

}  // namespace

bool is_nash(const StrategyPair& s, double tol) {
  require_no_zero_columns(s, tol);
  for (int j = 0; j < s.num_signals; ++j) {
    if (!column_is_flat(s.sender, s.num_states, s.num_signals, j, tol,
                        nullptr)) {
      return false;
    }
  }
  for (int i = 0; i < s.num_states; ++i) {
    if (!column_is_flat(s.receiver, s.num_signals, s.num_states, i, tol,
                        nullptr)) {
      return false;
    }
  }
  for (int i = 0; i < s.num_states; ++i) {
    for (int j = 0; j < s.num_signals; ++j) {
      if ((s.p(i, j) > tol) != (s.q(j, i) > tol)) return false;
    }
  }
  return true;
}

bool is_nss(const StrategyPair& s, double tol) {
  if (!is_nash(s, tol)) return false;
  auto columns_unit_valued = [&](const std::vector<double>& m, int rows,
                                 int cols) {
    for (int c = 0; c < cols; ++c) {
      int positive = 0;
      for (int r = 0; r < rows; ++r) {
        if (m[static_cast<std::size_t>(r) * cols + c] > tol) ++positive;
      }
      if (positive < 2) continue;
      for (int r = 0; r < rows; ++r) {
        const double v = m[static_cast<std::size_t>(r) * cols + c];
        if (v > tol && std::abs(v - 1.0) > tol) return false;
      }
    }
    return true;
  };
  return columns_unit_valued(s.sender, s.num_states, s.num_signals) &&
         columns_unit_valued(s.receiver, s.num_signals, s.num_states);
}

bool is_ess(const StrategyPair& s, double tol) {
  if (s.num_states != s.num_signals) return false;
  const int m = s.num_states;
  std::vector<bool> used(m, false);
  for (int i = 0; i < m; ++i) {
    int unit = -1;
    for (int j = 0; j < m; ++j) {
      const double v = s.p(i, j);
      if (std::abs(v - 1.0) <= tol) {
        if (unit != -1) return false;
        unit = j;
      } else if (v > tol) {
        return false;
      }
    }
    if (unit == -1 || used[unit]) return false;
    used[unit] = true;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (std::abs(s.q(j, i) - s.p(i, j)) > tol) return false;
    }
  }
  return true;
}

}  // namespace siggame
