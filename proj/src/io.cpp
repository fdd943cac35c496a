#include "siggame/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace siggame::io {

void ensure_writable(const std::string& path, bool force) {
  if (!force && std::filesystem::exists(path)) {
    throw std::runtime_error("output file already exists: " + path +
                             " (pass --force to overwrite)");
  }
}

void write_text(const std::string& path, const std::string& text,
                bool force) {
  ensure_writable(path, force);
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

std::string x_header(int m1, int m2) {
  std::string h;
  for (int i = 0; i < m1; ++i) {
    for (int j = 0; j < m2; ++j) {
      h += ",x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
    }
  }
  return h;
}

json matrix_json(const std::vector<double>& w, int m1, int m2) {
  json rows = json::array();
  for (int i = 0; i < m1; ++i) {
    json row = json::array();
    for (int j = 0; j < m2; ++j) {
      row.push_back(w[static_cast<std::size_t>(i) * m2 + j]);
    }
    rows.push_back(row);
  }
  return rows;
}

json counts_json(const std::vector<std::int64_t>& c, int m1, int m2) {
  json rows = json::array();
  for (int i = 0; i < m1; ++i) {
    json row = json::array();
    for (int j = 0; j < m2; ++j) {
      row.push_back(c[static_cast<std::size_t>(i) * m2 + j]);
    }
    rows.push_back(row);
  }
  return rows;
}

json edges_json(const std::vector<std::pair<int, int>>& edges) {
  json out = json::array();
  for (const auto& [i, j] : edges) {
    out.push_back(json::array({i + 1, j + 1}));
  }
  return out;
}

json census_json(const std::vector<CensusEntry>& census) {
  json out = json::array();
  for (const auto& entry : census) {
    out.push_back({{"edges", edges_json(entry.edges)},
                   {"count", entry.count},
                   {"frequency", entry.frequency},
                   {"mean_potential", entry.mean_potential},
                   {"property_p", entry.property_p},
                   {"unresolved", entry.unresolved}});
  }
  return out;
}

}  // namespace

std::string trace_csv(const ReplicationResult& result,
                      const std::string& config_comment) {
  const int m1 = result.config.num_states;
  const int m2 = result.config.num_signals;
  std::string out = "# " + config_comment + "\n";
  out += "n" + x_header(m1, m2) + ",H,Tn_over_n\n";
  for (const auto& s : result.trace) {
    out += std::to_string(s.n);
    for (const auto v : s.occupation) {
      out += ',';
      append_number(out, v);
    }
    out += ',';
    append_number(out, s.h);
    out += ',';
    append_number(out, s.t_over_n);
    out += '\n';
  }
  return out;
}

json trace_json(const ReplicationResult& result, const json& config) {
  json samples = json::array();
  for (const auto& s : result.trace) {
    samples.push_back(
        {{"n", s.n},
         {"occupation", matrix_json(s.occupation, result.config.num_states,
                                    result.config.num_signals)},
         {"H", s.h},
         {"Tn_over_n", s.t_over_n}});
  }
  return json{{"kind", "trace"}, {"config", config}, {"samples", samples}};
}

std::string trajectory_csv(const Trajectory& traj,
                           const std::string& config_comment) {
  const int m1 = traj.points.front().num_states();
  const int m2 = traj.points.front().num_signals();
  std::string out = "# " + config_comment + "\n";
  out += "t" + x_header(m1, m2) + ",H\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    append_number(out, traj.times[k]);
    for (const auto v : traj.points[k].weights()) {
      out += ',';
      append_number(out, v);
    }
    out += ',';
    append_number(out, traj.potentials[k]);
    out += '\n';
  }
  return out;
}

json trajectory_json(const Trajectory& traj, const json& config) {
  const int m1 = traj.points.front().num_states();
  const int m2 = traj.points.front().num_signals();
  json samples = json::array();
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    samples.push_back({{"t", traj.times[k]},
                       {"occupation",
                        matrix_json(traj.points[k].weights(), m1, m2)},
                       {"H", traj.potentials[k]}});
  }
  return json{{"kind", "trajectory"},
              {"config", config},
              {"min_step_potential_delta", traj.min_step_potential_delta},
              {"final_field_max_abs", traj.final_field_max_abs},
              {"samples", samples}};
}

json terminal_state_json(const ReplicationResult& result,
                         const json& config) {
  const int m1 = result.config.num_states;
  const int m2 = result.config.num_signals;
  const auto& last = result.trace.back();
  return json{
      {"kind", "terminal_state"},
      {"config", config},
      {"num_states", m1},
      {"num_signals", m2},
      {"initial_weight", result.config.initial_weight},
      {"steps", result.steps},
      {"grand_total", last.total},
      {"potential", last.h},
      {"t_over_n", last.t_over_n},
      {"counts", counts_json(result.terminal_counts, m1, m2)},
      {"occupation", matrix_json(result.terminal.weights(), m1, m2)},
      {"limit_graph",
       {{"edges", edges_json(result.limit_graph.edge_pairs())},
        {"property_p", result.property_p},
        {"unresolved", result.unresolved}}},
      {"frozen_pairs", edges_json(result.frozen_pairs)},
  };
}

json stability_report_json(const StabilityReport& report,
                           const json& config) {
  json eigenvalues = json::array();
  for (const auto& ev : report.eigenvalues) {
    eigenvalues.push_back(json::array({ev.real(), ev.imag()}));
  }
  json components = json::array();
  for (const auto& verts : report.graph.component_vertices()) {
    json states = json::array();
    json signals = json::array();
    for (const int v : verts) {
      if (v < report.graph.num_states) {
        states.push_back(v + 1);
      } else {
        signals.push_back(v - report.graph.num_states + 1);
      }
    }
    components.push_back({{"states", states}, {"signals", signals}});
  }
  json isolated_states = json::array();
  json isolated_signals = json::array();
  for (const int v : report.isolated) {
    if (v < report.graph.num_states) {
      isolated_states.push_back(v + 1);
    } else {
      isolated_signals.push_back(v - report.graph.num_states + 1);
    }
  }
  return json{
      {"kind", "stability_report"},
      {"config", config},
      {"classification", to_string(report.classification)},
      {"in_lambda", report.in_lambda_set},
      {"in_gamma", report.in_gamma_set},
      {"interior", report.interior},
      {"signaling_system", report.signaling_system},
      {"property_p", report.property_p},
      {"consistency_ok", report.consistency_ok},
      {"max_eigenvalue_real",
       report.eigenvalues.empty() ? json() : json(report.max_eigenvalue_real)},
      {"eigenvalues", eigenvalues},
      {"components", components},
      {"isolated_vertices",
       {{"states", isolated_states}, {"signals", isolated_signals}}},
      {"tolerance", report.tol},
      {"stability_tolerance", report.stability_tol},
  };
}

json ensemble_stats_json(const EnsembleStats& stats, const json& config) {
  json mean_trace = json::array();
  for (const auto& s : stats.mean_trace) {
    mean_trace.push_back({{"n", s.n},
                          {"mean_potential", s.h},
                          {"mean_t_over_n", s.t_over_n}});
  }
  return json{
      {"kind", "ensemble_stats"},
      {"config", config},
      {"replications", static_cast<int>(stats.replications.size())},
      {"steps", stats.steps},
      {"master_seed", stats.master_seed},
      {"unresolved", stats.unresolved},
      {"census", census_json(stats.census)},
      {"census_up_to_relabeling",
       census_json(stats.census_up_to_relabeling)},
      {"mean_trace", mean_trace},
  };
}

OccupationMeasure read_occupation(const json& doc) {
  const char* key = nullptr;
  for (const char* candidate : {"occupation", "weights", "counts"}) {
    if (doc.contains(candidate)) {
      key = candidate;
      break;
    }
  }
  if (key == nullptr) {
    throw std::runtime_error(
        "input document has no occupation/weights/counts matrix");
  }
  const auto& rows = doc.at(key);
  if (!rows.is_array() || rows.empty() || !rows.front().is_array()) {
    throw std::runtime_error("matrix field '" + std::string(key) +
                             "' must be a nested array");
  }
  const int m1 = static_cast<int>(rows.size());
  const int m2 = static_cast<int>(rows.front().size());
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(m1) * m2);
  double sum = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != m2) {
      throw std::runtime_error("matrix rows have inconsistent lengths");
    }
    for (const auto& v : row) {
      w.push_back(v.get<double>());
      sum += w.back();
    }
  }
  if (sum <= 0) throw std::runtime_error("matrix has nonpositive total");
  for (auto& v : w) v /= sum;
  return OccupationMeasure::from_weights(m1, m2, std::move(w));
}

}  // namespace siggame::io
