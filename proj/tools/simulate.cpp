// simulate: two-qubit entanglement dynamics in structured reservoirs.
//
//   simulate preset <name> [--out-dir DIR] [--oracle] [--quiet]
//   simulate run <config>  [--out-dir DIR] [--oracle] [--quiet]
//   simulate sweep <config> [--out-dir DIR] [--oracle] [--quiet]
//
// Exit codes: 0 ok, 1 I/O failure, 2 usage/config error, 3 invalid physical
// model, 4 numerical failure.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "entdyn/app/config.hpp"
#include "entdyn/app/runner.hpp"
#include "entdyn/error.hpp"

namespace {

using namespace entdyn;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownPreset:
    case ErrorCode::InvalidArgument:
      return 2;
    case ErrorCode::InvalidModel:
      return 3;
    case ErrorCode::NonPhysicalAmplitude:
    case ErrorCode::NotAState:
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::StepTooLarge:
    case ErrorCode::GridTooCoarse:
      return 4;
    case ErrorCode::IoFailure:
      return 1;
  }
  return 1;
}

std::string describe(const Trajectory& tr) {
  std::string s = tr.esd_time ? fmt::format("esd_time={:.6g}", *tr.esd_time) : "esd_time=none";
  s += fmt::format(" revivals={}", tr.revivals.size());
  s += tr.plateau ? fmt::format(" plateau={:.6g}", *tr.plateau) : " plateau=none";
  return s;
}

void report(const app::RunResult& r, const app::WrittenFiles& files, bool quiet) {
  if (quiet) return;
  std::string line = describe(r.trajectory);
  if (r.oracle_max_deviation) line += fmt::format(" oracle_max_deviation={:.3g}", *r.oracle_max_deviation);
  std::puts(line.c_str());
  for (const auto& p : files.paths) std::printf("wrote %s\n", p.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Exact two-qubit entanglement dynamics in structured zero-temperature reservoirs"};
  cli.require_subcommand(1);
  cli.fallthrough();

  std::string out_dir = ".";
  bool force_oracle = false;
  bool quiet = false;
  cli.add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();
  cli.add_flag("--oracle", force_oracle, "Cross-check q(t) against the Volterra solver");
  cli.add_flag("--quiet", quiet, "Suppress the console summary");

  std::string preset_name;
  auto* preset_cmd = cli.add_subcommand("preset", "Run a built-in scenario");
  preset_cmd->add_option("name", preset_name, "fig1-d0|fig1-d2|fig1-d5|fig1-d8|fig2-g1|fig2-g23|fig2-g13|fig2-g0")
      ->required();

  std::string config_path;
  auto* run_cmd = cli.add_subcommand("run", "Run a scenario from a config file");
  run_cmd->add_option("config", config_path, "Config file")->required();

  std::string sweep_path;
  auto* sweep_cmd = cli.add_subcommand("sweep", "Run a one-axis parameter sweep");
  sweep_cmd->add_option("config", sweep_path, "Sweep config file")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sweep_cmd) {
      auto cfg = app::load_sweep_config(sweep_path);
      if (force_oracle) cfg.base.oracle.enabled = true;
      const auto points = app::execute_sweep(cfg);
      const auto files = app::write_sweep_outputs(points, out_dir, cfg.base.output.path);
      if (!quiet) {
        for (const auto& p : points)
          std::printf("%s=%.6g: %s\n", cfg.axis.key.c_str(), p.value,
                      describe(p.result.trajectory).c_str());
        std::printf("wrote %zu files, table %s\n", files.paths.size(),
                    files.paths.back().string().c_str());
      }
      return 0;
    }

    app::RunConfig cfg = *preset_cmd ? app::preset(preset_name) : app::load_run_config(config_path);
    if (force_oracle) cfg.oracle.enabled = true;
    const auto result = app::execute(cfg);
    const auto files = app::write_outputs(result, out_dir, cfg.output.path);
    report(result, files, quiet);
    return 0;
  } catch (const Error& e) {
    std::fprintf(stderr, "simulate: %s: %s\n", std::string(to_string(e.code())).c_str(), e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "simulate: %s\n", e.what());
    return 1;
  }
}
