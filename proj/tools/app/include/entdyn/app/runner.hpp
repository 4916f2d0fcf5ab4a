#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "entdyn/app/config.hpp"
#include "entdyn/entanglement.hpp"
#include "entdyn/volterra.hpp"

namespace entdyn::app {

struct RunResult {
  Trajectory trajectory;
  std::optional<CouplingRegime> regime;
  std::optional<volterra::GridAmplitude> oracle;
  std::optional<double> oracle_max_deviation;
};

RunResult execute(const RunConfig& cfg);

/// Header `t,re_q,im_q,abs_q2,K1,K2,C`, 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);
/// Header `t,re_q,im_q`.
std::string oracle_csv(const volterra::GridAmplitude& grid);
/// Keys: esd_time, revivals, plateau, oracle_max_deviation, regime.
std::string summary_json(const RunResult& result);

struct WrittenFiles {
  std::vector<std::filesystem::path> paths;
};

/// Writes <stem>.csv, <stem>.json and, with the oracle enabled,
/// <stem>_oracle.csv into `out_dir` (created if needed).
WrittenFiles write_outputs(const RunResult& result, const std::filesystem::path& out_dir,
                           const std::string& stem);

struct SweepPoint {
  double value = 0.0;
  RunResult result;
};

/// Runs every axis value independently (concurrently when hardware allows);
/// results come back in axis order.
std::vector<SweepPoint> execute_sweep(const SweepConfig& cfg);

/// Header `value,esd_time,revivals,plateau`; absent events are empty cells.
std::string sweep_table_csv(const std::vector<SweepPoint>& points);

/// Per-point files <stem>_<i>.* plus <stem>_sweep.csv.
WrittenFiles write_sweep_outputs(const std::vector<SweepPoint>& points,
                                 const std::filesystem::path& out_dir, const std::string& stem);

}  // namespace entdyn::app
