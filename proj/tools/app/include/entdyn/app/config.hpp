#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entdyn/dynamics.hpp"
#include "entdyn/reservoir.hpp"

namespace entdyn::app {

struct GridSpec {
  double t_max = 1.0;
  std::size_t n = 1001;
};

struct OracleSpec {
  bool enabled = false;
  double step = 1e-3;
};

struct OutputSpec {
  std::string path = "run";  // file stem inside the output directory
  std::string format = "csv";
};

/// One scenario. Rates and times are in units of the model's reference rate
/// (gamma or gamma1); nothing is rescaled internally.
struct RunConfig {
  SpectralModel model = DetunedLorentzian{};
  BellLikeInit initial;
  GridSpec grid;
  OracleSpec oracle;
  OutputSpec output;
};

struct SweepAxis {
  std::string key;  // a numeric config key, e.g. "model.delta"
  std::vector<double> values;
};

struct SweepConfig {
  RunConfig base;
  SweepAxis axis;
};

/// Flat `key = value` text with dotted keys; `#` starts a comment. Unknown,
/// duplicate and missing keys are ParseErrors carrying the line number;
/// physically invalid models are InvalidModel.
///
///   model.kind      lorentzian | bandgap
///   model.gamma model.lambda model.delta                 (lorentzian)
///   model.gamma1 model.gamma2 model.lambda1 model.lambda2 (bandgap)
///   initial.family  phi | psi
///   initial.alpha   initial.delta (optional, default 0)
///   grid.t_max      grid.n (>= 16)
///   oracle.enabled  true | false (optional)   oracle.step (optional)
///   output.path (optional)   output.format (optional, csv)
RunConfig parse_run_config(std::string_view text);

/// As parse_run_config plus `sweep.key` and `sweep.values` (comma separated).
SweepConfig parse_sweep_config(std::string_view text);

RunConfig load_run_config(const std::string& path);
SweepConfig load_sweep_config(const std::string& path);

/// Serializes back to the text format; parse_run_config(to_text(c)) == c.
std::string to_text(const RunConfig& cfg);

/// Sets one numeric key (as accepted by sweeps) and re-validates.
void set_numeric(RunConfig& cfg, std::string_view key, double value);

/// Built-in scenarios.
///   fig1-d0 fig1-d2 fig1-d5 fig1-d8 : Lorentzian, gamma=1, lambda=0.1,
///       delta = {0, 2, 5, 8} * lambda, Psi with alpha = 1/sqrt(3), t_max = 15
///   fig2-g1 fig2-g23 fig2-g13 fig2-g0 : band gap, gamma1=1, lambda1=50,
///       lambda2=5, gamma2 = {1, 2/3, 1/3, 0}, Phi Bell state, t_max = 50
RunConfig preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace entdyn::app
