#pragma once

#include <vector>

#include "siggame/game.hpp"

namespace siggame {

// Mean-field drift F_ij = x_ij (y_ij - H(x)), zero on zero-weight
// entries. Component sum vanishes, so F is tangent to the simplex.
struct VectorField {
  int num_states = 0;
  int num_signals = 0;
  std::vector<double> values;  // row-major

  double at(int state, int signal) const {
    return values[static_cast<std::size_t>(state) * num_signals + signal];
  }
  double sum() const;
  double max_abs() const;
};

VectorField vector_field(const OccupationMeasure& x);

struct Trajectory {
  std::vector<double> times;
  std::vector<OccupationMeasure> points;
  std::vector<double> potentials;
  // Most negative per-step potential change seen over the whole run
  // (not just at the recorded samples).
  double min_step_potential_delta = 0;
  double final_field_max_abs = 0;
};

// Classical RK4 with renormalize-and-clamp after every step. Throws if
// a step leaves the simplex by more than 1e-6 before the projection.
Trajectory integrate(const OccupationMeasure& x0, double dt,
                     long long steps, long long sample_stride = 1);

// The growth rate of H along the flow, computed three ways; all agree
// on interior points.
struct LyapunovForms {
  double pairwise = 0;  // dissipation p(x)
  double vertex = 0;    // sum x_ij (y_ij - N_i)^2 over symmetrized pairs
  double split = 0;     // sum x_ij (y_ij - H)^2 - sum x_i (N_i - H)^2
};

LyapunovForms lyapunov_derivative(const OccupationMeasure& x);

// |<grad H, F> - p(x)| with the gradient taken by central finite
// differences over the pair coordinates. O(h^2) on interior points with
// fully positive entries; h must stay below a tenth of the smallest
// entry.
double finite_diff_gradient_check(const OccupationMeasure& x, double h);

}  // namespace siggame
