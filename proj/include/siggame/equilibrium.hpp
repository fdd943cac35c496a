#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "siggame/game.hpp"

namespace siggame {

// Edge weighting of the state/signal graph: efficiency x_ij/(x_i x_j),
// or the conditional shares x_ij/x_j and x_ij/x_i.
enum class WeightMode { Efficiency, SignalConditional, StateConditional };

struct BipartiteGraph {
  struct Edge {
    int state = 0;
    int signal = 0;
    double weight = 0;
  };

  int num_states = 0;
  int num_signals = 0;
  std::vector<Edge> edges;
  std::vector<int> component;  // vertex -> component id; states first
  int num_components = 0;

  static BipartiteGraph from_edges(int num_states, int num_signals,
                                   std::vector<Edge> edges);

  int vertex_count() const { return num_states + num_signals; }
  bool has_edge(int state, int signal) const;
  bool vertex_isolated(int v) const;
  std::vector<int> isolated_vertices() const;
  // Vertices of each component, sorted; component ids are assigned in
  // first-vertex order.
  std::vector<std::vector<int>> component_vertices() const;
  std::vector<std::pair<int, int>> edge_pairs() const;
};

// Edge iff x_ij > threshold (0 = exact support).
BipartiteGraph build_graph(const OccupationMeasure& x,
                           double edge_threshold = 0.0,
                           WeightMode mode = WeightMode::Efficiency);

// Every connected component is single-state or single-signal on one
// side, and no vertex is isolated.
bool check_property_P(const BipartiteGraph& g);

// Within every component of the support graph, all efficiencies agree
// within tol (the zero-dissipation set).
bool in_lambda(const OccupationMeasure& x, double tol);

// Rest point of the drift: the max-norm of F stays within tol AND every
// edge heavier than tol has efficiency within tol of H. The two
// criteria coincide on clean inputs; both are required.
bool in_gamma(const OccupationMeasure& x, double tol);

// Permutation pattern with entries 1/M1 (requires M1 == M2).
bool is_signaling_system(const OccupationMeasure& x, double tol);

// Jacobian of the drift at an interior-marginal equilibrium, rows
// indexed by the differentiation variable (the transpose of the
// column-convention Jacobian; the spectrum is identical). Rows/columns
// are ordered supported pairs grouped by component, then unsupported
// pairs; that ordering makes the matrix block lower-triangular.
struct JacobianMatrix {
  int size = 0;
  std::vector<double> entries;  // row-major
  std::vector<std::pair<int, int>> pair_order;
  std::vector<int> block_sizes;  // supported per-component block sizes
  int supported_count = 0;
  double potential_value = 0;

  double at(int r, int c) const {
    return entries[static_cast<std::size_t>(r) * size + c];
  }
};

JacobianMatrix jacobian(const OccupationMeasure& x, double eq_tol = 1e-8);

// Spectrum assembled block by block: per-component dense solves plus
// -H for every unsupported pair.
std::vector<std::complex<double>> jacobian_eigenvalues(
    const OccupationMeasure& x, double eq_tol = 1e-8);

// Full-matrix solve, used as a structural cross-check of the block
// route.
std::vector<std::complex<double>> eigenvalues_of(const JacobianMatrix& j);

enum class Stability {
  Stable,
  Unstable,
  BoundaryEquilibrium,
  NotEquilibrium,
};

const char* to_string(Stability s);

struct StabilityReport {
  Stability classification = Stability::NotEquilibrium;
  bool in_lambda_set = false;
  bool in_gamma_set = false;
  bool interior = false;
  bool signaling_system = false;
  bool property_p = false;
  // Eigenvalue verdict and the graph criterion must agree on interior
  // equilibria; a mismatch marks an internal inconsistency.
  bool consistency_ok = true;
  std::vector<std::complex<double>> eigenvalues;
  double max_eigenvalue_real = 0;
  BipartiteGraph graph;
  std::vector<int> isolated;
  double tol = 0;
  double stability_tol = 0;
};

// Equilibrium test at `tol`, boundary detection on exact marginals,
// then linear stability from the block spectra (nonpositive real parts
// within 1e-8), cross-checked against the graph criterion.
StabilityReport classify(const OccupationMeasure& x, double tol = 1e-8);

}  // namespace siggame
