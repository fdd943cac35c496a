#pragma once

#include <string>

#include "json.hpp"
#include "siggame/equilibrium.hpp"
#include "siggame/game.hpp"
#include "siggame/harness.hpp"
#include "siggame/ode.hpp"

// File formats shared by the command-line tool and the tests. CSVs open
// with one '#' metadata line carrying the run configuration, then the
// header row; JSON documents embed the configuration under "config".
// All indices in files are 1-based.

namespace siggame::io {

using nlohmann::json;

// Refuses to clobber an existing file unless forced.
void ensure_writable(const std::string& path, bool force);

void write_text(const std::string& path, const std::string& text,
                bool force);

std::string read_text(const std::string& path);

// n, x_i_j..., H, Tn_over_n
std::string trace_csv(const ReplicationResult& result,
                      const std::string& config_comment);
json trace_json(const ReplicationResult& result, const json& config);

// t, x_i_j..., H
std::string trajectory_csv(const Trajectory& traj,
                           const std::string& config_comment);
json trajectory_json(const Trajectory& traj, const json& config);

json terminal_state_json(const ReplicationResult& result,
                         const json& config);

json stability_report_json(const StabilityReport& report,
                           const json& config);

json ensemble_stats_json(const EnsembleStats& stats, const json& config);

// Accepts any document holding an "occupation", "weights" or "counts"
// matrix (nested arrays), including the terminal-state files written by
// the simulate command.
OccupationMeasure read_occupation(const json& doc);

}  // namespace siggame::io
