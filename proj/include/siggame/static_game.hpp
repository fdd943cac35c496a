#pragma once

#include <stdexcept>
#include <vector>

#include "siggame/game.hpp"

namespace siggame {

// Row-stochastic sender (M1 x M2) and receiver (M2 x M1) matrices of
// the symmetrized one-shot game.
struct StrategyPair {
  int num_states = 0;
  int num_signals = 0;
  std::vector<double> sender;    // row-major M1 x M2
  std::vector<double> receiver;  // row-major M2 x M1

  StrategyPair(int num_states, int num_signals, std::vector<double> sender,
               std::vector<double> receiver);

  double p(int state, int signal) const {
    return sender[static_cast<std::size_t>(state) * num_signals + signal];
  }
  double q(int signal, int state) const {
    return receiver[static_cast<std::size_t>(signal) * num_states + state];
  }
};

// Raised when the column-pattern characterization does not apply (a
// signal or act fell out of use entirely).
class not_characterized_error : public std::domain_error {
  using std::domain_error::domain_error;
};

// Conditional strategies of an interior point: p_ij = x_ij/x_i,
// q_ji = x_ij/x_j.
StrategyPair psi(const OccupationMeasure& x);

// x_ij = p_ij q_ji / Z. A right inverse on Nash pairs without zero
// columns: psi(psi_inverse(s)) == s.
OccupationMeasure psi_inverse(const StrategyPair& s);

// Symmetrized payoff (tr(P Q') + tr(P' Q)) / 2.
double payoff(const StrategyPair& a, const StrategyPair& b);

// Column-pattern characterization of Nash pairs: every sender column
// takes values in {0, p_j}, every receiver column in {0, q_i}, and the
// supports of p_ij and q_ji coincide. Entries below tol count as zero;
// the positive entries of a column must agree within tol.
bool is_nash(const StrategyPair& s, double tol = 1e-9);

// Nash, and every column with two or more positive entries is
// {0,1}-valued.
bool is_nss(const StrategyPair& s, double tol = 1e-9);

// Square permutation sender with the transposed receiver.
bool is_ess(const StrategyPair& s, double tol = 1e-9);

}  // namespace siggame
