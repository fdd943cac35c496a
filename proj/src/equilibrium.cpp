#include "siggame/equilibrium.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "siggame/ode.hpp"

namespace siggame {

namespace {

// Plain union-find over the vertex set.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace

BipartiteGraph BipartiteGraph::from_edges(int num_states, int num_signals,
                                          std::vector<Edge> edges) {
  BipartiteGraph g;
  g.num_states = num_states;
  g.num_signals = num_signals;
  g.edges = std::move(edges);
  std::sort(g.edges.begin(), g.edges.end(),
            [](const Edge& a, const Edge& b) {
              return std::pair(a.state, a.signal) <
                     std::pair(b.state, b.signal);
            });

  UnionFind uf(g.vertex_count());
  for (const auto& e : g.edges) {
    uf.unite(e.state, num_states + e.signal);
  }
  g.component.assign(g.vertex_count(), -1);
  g.num_components = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int root = uf.find(v);
    if (g.component[root] == -1) g.component[root] = g.num_components++;
    g.component[v] = g.component[root];
  }
  return g;
}

bool BipartiteGraph::has_edge(int state, int signal) const {
  for (const auto& e : edges) {
    if (e.state == state && e.signal == signal) return true;
  }
  return false;
}

bool BipartiteGraph::vertex_isolated(int v) const {
  for (const auto& e : edges) {
    if (e.state == v || num_states + e.signal == v) return false;
  }
  return true;
}

std::vector<int> BipartiteGraph::isolated_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v) {
    if (vertex_isolated(v)) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<int>> BipartiteGraph::component_vertices() const {
  std::vector<std::vector<int>> out(num_components);
  for (int v = 0; v < vertex_count(); ++v) {
    out[component[v]].push_back(v);
  }
  return out;
}

std::vector<std::pair<int, int>> BipartiteGraph::edge_pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.emplace_back(e.state, e.signal);
  return out;
}

BipartiteGraph build_graph(const OccupationMeasure& x, double edge_threshold,
                           WeightMode mode) {
  if (edge_threshold < 0) {
    throw std::invalid_argument("build_graph: negative threshold");
  }
  std::vector<BipartiteGraph::Edge> edges;
  for (int i = 0; i < x.num_states(); ++i) {
    for (int j = 0; j < x.num_signals(); ++j) {
      const double w = x.at(i, j);
      if (w <= edge_threshold) continue;
      double weight = 0;
      switch (mode) {
        case WeightMode::Efficiency:
          weight = w / (x.state_marginal(i) * x.signal_marginal(j));
          break;
        case WeightMode::SignalConditional:
          weight = w / x.signal_marginal(j);
          break;
        case WeightMode::StateConditional:
          weight = w / x.state_marginal(i);
          break;
      }
      edges.push_back({i, j, weight});
    }
  }
  return BipartiteGraph::from_edges(x.num_states(), x.num_signals(),
                                    std::move(edges));
}

bool check_property_P(const BipartiteGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.vertex_isolated(v)) return false;
  }
  std::vector<int> states_in(g.num_components, 0);
  std::vector<int> signals_in(g.num_components, 0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v < g.num_states) {
      ++states_in[g.component[v]];
    } else {
      ++signals_in[g.component[v]];
    }
  }
  for (int c = 0; c < g.num_components; ++c) {
    if (states_in[c] != 1 && signals_in[c] != 1) return false;
  }
  return true;
}

bool in_lambda(const OccupationMeasure& x, double tol) {
  const auto g = build_graph(x, 0.0, WeightMode::Efficiency);
  std::vector<double> lo(g.num_components,
                         std::numeric_limits<double>::infinity());
  std::vector<double> hi(g.num_components,
                         -std::numeric_limits<double>::infinity());
  for (const auto& e : g.edges) {
    const int c = g.component[e.state];
    lo[c] = std::min(lo[c], e.weight);
    hi[c] = std::max(hi[c], e.weight);
  }
  for (int c = 0; c < g.num_components; ++c) {
    if (hi[c] > lo[c] + tol) return false;
  }
  return true;
}

bool in_gamma(const OccupationMeasure& x, double tol) {
  const bool drift_small = vector_field(x).max_abs() <= tol;
  const double h = potential(x);
  bool efficiencies_flat = true;
  for (int i = 0; i < x.num_states() && efficiencies_flat; ++i) {
    for (int j = 0; j < x.num_signals(); ++j) {
      if (x.at(i, j) <= tol) continue;
      const double y =
          x.at(i, j) / (x.state_marginal(i) * x.signal_marginal(j));
      if (std::abs(y - h) > tol) {
        efficiencies_flat = false;
        break;
      }
    }
  }
  return drift_small && efficiencies_flat;
}

bool is_signaling_system(const OccupationMeasure& x, double tol) {
  const int m = x.num_states();
  if (m != x.num_signals()) return false;
  std::vector<bool> signal_used(m, false);
  for (int i = 0; i < m; ++i) {
    int heavy = -1;
    for (int j = 0; j < m; ++j) {
      const double w = x.at(i, j);
      if (std::abs(w - 1.0 / m) <= tol) {
        if (heavy != -1) return false;
        heavy = j;
      } else if (std::abs(w) > tol) {
        return false;
      }
    }
    if (heavy == -1 || signal_used[heavy]) return false;
    signal_used[heavy] = true;
  }
  return true;
}

JacobianMatrix jacobian(const OccupationMeasure& x, double eq_tol) {
  if (!in_gamma(x, eq_tol)) {
    throw std::domain_error(
        "jacobian: the entries are only valid at an equilibrium");
  }
  if (!x.interior()) {
    throw std::domain_error(
        "jacobian: the drift is not differentiable when a marginal "
        "vanishes");
  }

  const int m1 = x.num_states();
  const int m2 = x.num_signals();
  const auto support_graph = build_graph(x, 0.0, WeightMode::Efficiency);
  const double h = potential(x);

  JacobianMatrix jac;
  jac.size = m1 * m2;
  jac.potential_value = h;

  // Supported pairs grouped by component, then unsupported pairs.
  std::vector<std::vector<std::pair<int, int>>> per_component(
      support_graph.num_components);
  for (const auto& e : support_graph.edges) {
    per_component[support_graph.component[e.state]].emplace_back(e.state,
                                                                 e.signal);
  }
  for (const auto& block : per_component) {
    if (block.empty()) continue;
    jac.block_sizes.push_back(static_cast<int>(block.size()));
    jac.pair_order.insert(jac.pair_order.end(), block.begin(), block.end());
  }
  jac.supported_count = static_cast<int>(jac.pair_order.size());
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      if (x.at(i, j) <= 0) jac.pair_order.emplace_back(i, j);
    }
  }

  jac.entries.assign(static_cast<std::size_t>(jac.size) * jac.size, 0.0);
  auto entry = [&](int r, int c) -> double& {
    return jac.entries[static_cast<std::size_t>(r) * jac.size + c];
  };

  // Row r differentiates with respect to pair (i, j); column c selects
  // the drift component F_lk.
  for (int r = 0; r < jac.size; ++r) {
    const auto [i, j] = jac.pair_order[r];
    const bool supported_var = x.at(i, j) > 0;
    for (int c = 0; c < jac.size; ++c) {
      const auto [l, k] = jac.pair_order[c];
      const bool supported_comp = x.at(l, k) > 0;
      double value = 0;
      if (supported_var) {
        if (supported_comp) {
          if (i == l && j == k) {
            value = h * (1.0 - x.at(i, j) / x.state_marginal(i) -
                         x.at(i, j) / x.signal_marginal(j));
          } else if (i == l) {
            value = -h * x.at(i, k) / x.state_marginal(i);
          } else if (j == k) {
            value = -h * x.at(l, j) / x.signal_marginal(j);
          }
        }
        // Unsupported components do not vary to first order.
      } else {
        if (i == l && j == k) {
          value = -h;
        } else if (supported_comp) {
          value = 2.0 * x.at(l, k) * h;
          if (i == l) value -= h * x.at(i, k) / x.state_marginal(i);
          if (j == k) value -= h * x.at(l, j) / x.signal_marginal(j);
        }
      }
      entry(r, c) = value;
    }
  }
  return jac;
}

namespace {

std::vector<std::complex<double>> dense_eigenvalues(
    const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue solver failed to converge");
  }
  std::vector<std::complex<double>> out(m.rows());
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    out[k] = solver.eigenvalues()[k];
  }
  return out;
}

}  // namespace

std::vector<std::complex<double>> jacobian_eigenvalues(
    const OccupationMeasure& x, double eq_tol) {
  const auto jac = jacobian(x, eq_tol);
  std::vector<std::complex<double>> values;
  values.reserve(jac.size);
  int offset = 0;
  for (const int bs : jac.block_sizes) {
    Eigen::MatrixXd block(bs, bs);
    for (int r = 0; r < bs; ++r) {
      for (int c = 0; c < bs; ++c) {
        block(r, c) = jac.at(offset + r, offset + c);
      }
    }
    const auto ev = dense_eigenvalues(block);
    values.insert(values.end(), ev.begin(), ev.end());
    offset += bs;
  }
  for (int k = jac.supported_count; k < jac.size; ++k) {
    values.emplace_back(-jac.potential_value, 0.0);
  }
  return values;
}

std::vector<std::complex<double>> eigenvalues_of(const JacobianMatrix& jac) {
  Eigen::MatrixXd m(jac.size, jac.size);
  for (int r = 0; r < jac.size; ++r) {
    for (int c = 0; c < jac.size; ++c) m(r, c) = jac.at(r, c);
  }
  return dense_eigenvalues(m);
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "Stable";
    case Stability::Unstable:
      return "Unstable";
    case Stability::BoundaryEquilibrium:
      return "BoundaryEquilibrium";
    case Stability::NotEquilibrium:
      return "NotEquilibrium";
  }
  return "?";
}

StabilityReport classify(const OccupationMeasure& x, double tol) {
  StabilityReport report;
  report.tol = tol;
  report.stability_tol = 1e-8;
  report.graph = build_graph(x, 0.0, WeightMode::Efficiency);
  report.isolated = report.graph.isolated_vertices();
  report.property_p = check_property_P(report.graph);
  report.in_lambda_set = in_lambda(x, tol);
  report.in_gamma_set = in_gamma(x, tol);
  report.interior = x.interior();
  report.signaling_system = is_signaling_system(x, tol);

  if (!report.in_gamma_set) {
    report.classification = Stability::NotEquilibrium;
    return report;
  }
  if (!report.interior) {
    // The drift is not differentiable here; no spectrum is reported.
    report.classification = Stability::BoundaryEquilibrium;
    return report;
  }

  report.eigenvalues = jacobian_eigenvalues(x, tol);
  double max_real = -std::numeric_limits<double>::infinity();
  for (const auto& ev : report.eigenvalues) {
    max_real = std::max(max_real, ev.real());
  }
  report.max_eigenvalue_real = max_real;
  const bool spectrally_stable = max_real <= report.stability_tol;
  report.classification =
      spectrally_stable ? Stability::Stable : Stability::Unstable;
  // Linear stability and the graph criterion characterize the same set
  // of interior equilibria.
  report.consistency_ok = (spectrally_stable == report.property_p);
  return report;
}

}  // namespace siggame
