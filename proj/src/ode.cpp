#include "siggame/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace siggame {

double VectorField::sum() const {
  double s = 0;
  for (const auto v : values) s += v;
  return s;
}

double VectorField::max_abs() const {
  double m = 0;
  for (const auto v : values) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// Raw drift evaluation on a weight grid that may carry small negative
// entries from intermediate integrator stages; nonpositive entries
// contribute nothing.
void eval_field(int m1, int m2, const std::vector<double>& w,
                std::vector<double>& row, std::vector<double>& col,
                std::vector<double>& out) {
  row.assign(m1, 0.0);
  col.assign(m2, 0.0);
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const double v = w[static_cast<std::size_t>(i) * m2 + j];
      if (v <= 0) continue;
      row[i] += v;
      col[j] += v;
    }
  }
  double h = 0;
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const double v = w[static_cast<std::size_t>(i) * m2 + j];
      if (v <= 0) continue;
      h += v * v / (row[i] * col[j]);
    }
  }
  out.assign(w.size(), 0.0);
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const auto k = static_cast<std::size_t>(i) * m2 + j;
      const double v = w[k];
      if (v <= 0) continue;
      out[k] = v * (v / (row[i] * col[j]) - h);
    }
  }
}

double potential_of_grid(int m1, int m2, const std::vector<double>& w) {
  std::vector<double> row(m1, 0.0), col(m2, 0.0);
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const double v = w[static_cast<std::size_t>(i) * m2 + j];
      if (v <= 0) continue;
      row[i] += v;
      col[j] += v;
    }
  }
  double h = 0;
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const double v = w[static_cast<std::size_t>(i) * m2 + j];
      if (v <= 0) continue;
      h += v * v / (row[i] * col[j]);
    }
  }
  return h;
}

}  // namespace

VectorField vector_field(const OccupationMeasure& x) {
  VectorField f;
  f.num_states = x.num_states();
  f.num_signals = x.num_signals();
  std::vector<double> row, col;
  eval_field(f.num_states, f.num_signals, x.weights(), row, col, f.values);
  return f;
}

Trajectory integrate(const OccupationMeasure& x0, double dt,
                     long long steps, long long sample_stride) {
  if (dt <= 0) throw std::invalid_argument("integrate: dt must be positive");
  if (steps < 0) throw std::invalid_argument("integrate: negative steps");
  if (sample_stride < 1) sample_stride = 1;

  const int m1 = x0.num_states();
  const int m2 = x0.num_signals();
  const auto cells = x0.weights().size();

  std::vector<double> w = x0.weights();
  std::vector<double> k1(cells), k2(cells), k3(cells), k4(cells);
  std::vector<double> stage(cells), row, col;

  Trajectory traj;
  traj.min_step_potential_delta = 0;
  traj.times.push_back(0.0);
  traj.points.push_back(x0);
  traj.potentials.push_back(potential_of_grid(m1, m2, w));

  double h_prev = traj.potentials.back();
  for (long long n = 1; n <= steps; ++n) {
    eval_field(m1, m2, w, row, col, k1);
    for (std::size_t c = 0; c < cells; ++c) stage[c] = w[c] + 0.5 * dt * k1[c];
    eval_field(m1, m2, stage, row, col, k2);
    for (std::size_t c = 0; c < cells; ++c) stage[c] = w[c] + 0.5 * dt * k2[c];
    eval_field(m1, m2, stage, row, col, k3);
    for (std::size_t c = 0; c < cells; ++c) stage[c] = w[c] + dt * k3[c];
    eval_field(m1, m2, stage, row, col, k4);

    double sum = 0;
    double min_entry = 0;
    for (std::size_t c = 0; c < cells; ++c) {
      w[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
      sum += w[c];
      min_entry = std::min(min_entry, w[c]);
    }
    if (min_entry < -1e-6 || std::abs(sum - 1.0) > 1e-6) {
      throw std::runtime_error(
          "integrate: step left the simplex by more than 1e-6 at t=" +
          std::to_string(n * dt) + "; retry with a smaller dt");
    }
    // Project back: clamp stray negatives, renormalize.
    sum = 0;
    for (auto& v : w) {
      if (v < 0) v = 0;
      sum += v;
    }
    for (auto& v : w) v /= sum;

    const double h = potential_of_grid(m1, m2, w);
    traj.min_step_potential_delta =
        std::min(traj.min_step_potential_delta, h - h_prev);
    h_prev = h;

    if (n % sample_stride == 0 || n == steps) {
      traj.times.push_back(n * dt);
      traj.points.push_back(OccupationMeasure::from_weights(m1, m2, w));
      traj.potentials.push_back(h);
    }
  }

  eval_field(m1, m2, w, row, col, k1);
  double fmax = 0;
  for (const auto v : k1) fmax = std::max(fmax, std::abs(v));
  traj.final_field_max_abs = fmax;
  return traj;
}

LyapunovForms lyapunov_derivative(const OccupationMeasure& x) {
  if (!x.interior()) {
    throw std::domain_error(
        "lyapunov_derivative: undefined on the boundary");
  }
  const int m1 = x.num_states();
  const int m2 = x.num_signals();
  const double h = potential(x);

  std::vector<double> n_of(x.vertex_count());
  for (int v = 0; v < x.vertex_count(); ++v) {
    n_of[v] = vertex_efficiency(x, v);
  }

  LyapunovForms forms;
  forms.pairwise = dissipation(x);

  double vertex_sum = 0;
  double spread_sum = 0;
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      const double w = x.at(i, j);
      if (w <= 0) continue;
      const double y = w / (x.state_marginal(i) * x.signal_marginal(j));
      const double di = y - n_of[i];
      const double dj = y - n_of[m1 + j];
      vertex_sum += w * (di * di + dj * dj);
      spread_sum += 2.0 * w * (y - h) * (y - h);
    }
  }
  forms.vertex = vertex_sum;

  double marginal_sum = 0;
  for (int v = 0; v < x.vertex_count(); ++v) {
    const double d = n_of[v] - h;
    marginal_sum += x.vertex_marginal(v) * d * d;
  }
  forms.split = spread_sum - marginal_sum;
  return forms;
}

double finite_diff_gradient_check(const OccupationMeasure& x, double h) {
  if (!x.interior()) {
    throw std::domain_error(
        "finite_diff_gradient_check: undefined on the boundary");
  }
  double min_entry = 1.0;
  for (const auto w : x.weights()) min_entry = std::min(min_entry, w);
  if (!(h > 0) || h > min_entry / 10.0) {
    throw std::invalid_argument(
        "finite_diff_gradient_check: h must lie in (0, min entry / 10)");
  }

  const int m1 = x.num_states();
  const int m2 = x.num_signals();
  const auto f = vector_field(x);

  std::vector<double> w = x.weights();
  double dot = 0;
  for (std::size_t c = 0; c < w.size(); ++c) {
    const double saved = w[c];
    w[c] = saved + h;
    const double hp = potential_of_grid(m1, m2, w);
    w[c] = saved - h;
    const double hm = potential_of_grid(m1, m2, w);
    w[c] = saved;
    dot += (hp - hm) / (2.0 * h) * f.values[c];
  }
  return std::abs(dot - dissipation(x));
}

}  // namespace siggame
