#include "entdyn/app/runner.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "entdyn/error.hpp"

namespace entdyn::app {

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "failed writing '" + path.string() + "'");
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create '" + dir.string() + "': " + ec.message());
}

}  // namespace

RunResult execute(const RunConfig& cfg) {
  const AmplitudeFn q(cfg.model);
  const XState initial = bell_like_state(cfg.initial);
  auto sample_at = [&](double t) { return concurrence_x(initial, q(t), t); };

  EventThresholds th;
  th.time_tolerance = 1e-6 / std::max(reference_rate(cfg.model), 1e-300);

  RunResult out;
  out.trajectory = analyze(sample_concurrence(q, initial, cfg.grid.t_max, cfg.grid.n), sample_at, th);
  out.regime = coupling_regime(cfg.model);

  if (cfg.oracle.enabled) {
    const SpectralModel model = cfg.model;
    auto grid = volterra::solve([&model](double tau) { return kernel(model, tau); },
                                {cfg.oracle.step, cfg.grid.t_max});
    out.oracle_max_deviation = volterra::max_deviation(grid, [&](double t) { return q(t); });
    out.oracle = std::move(grid);
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,re_q,im_q,abs_q2,K1,K2,C\n";
  out.reserve(out.size() + traj.samples.size() * 140);
  for (const auto& s : traj.samples) {
    out += fmt::format("{},{},{},{},{},{},{}\n", num(s.t), num(s.q.real()), num(s.q.imag()),
                       num(std::norm(s.q)), num(s.K1), num(s.K2), num(s.C));
  }
  return out;
}

std::string oracle_csv(const volterra::GridAmplitude& grid) {
  std::string out = "t,re_q,im_q\n";
  for (std::size_t k = 0; k < grid.times.size(); ++k)
    out += fmt::format("{},{},{}\n", num(grid.times[k]), num(grid.values[k].real()),
                       num(grid.values[k].imag()));
  return out;
}

std::string summary_json(const RunResult& result) {
  using nlohmann::json;
  const auto& tr = result.trajectory;
  json j = json::object();
  j["esd_time"] = tr.esd_time ? json(*tr.esd_time) : json(nullptr);
  json revivals = json::array();
  for (const auto& w : tr.revivals) revivals.push_back({w.death, w.rebirth});
  j["revivals"] = std::move(revivals);
  j["plateau"] = tr.plateau ? json(*tr.plateau) : json(nullptr);
  j["oracle_max_deviation"] =
      result.oracle_max_deviation ? json(*result.oracle_max_deviation) : json(nullptr);
  j["regime"] = result.regime ? json(std::string(to_string(*result.regime))) : json(nullptr);
  return j.dump(2) + "\n";
}

WrittenFiles write_outputs(const RunResult& result, const std::filesystem::path& out_dir,
                           const std::string& stem) {
  ensure_dir(out_dir);
  WrittenFiles files;
  files.paths.push_back(out_dir / (stem + ".csv"));
  write_text(files.paths.back(), trajectory_csv(result.trajectory));
  files.paths.push_back(out_dir / (stem + ".json"));
  write_text(files.paths.back(), summary_json(result));
  if (result.oracle) {
    files.paths.push_back(out_dir / (stem + "_oracle.csv"));
    write_text(files.paths.back(), oracle_csv(*result.oracle));
  }
  return files;
}

std::vector<SweepPoint> execute_sweep(const SweepConfig& cfg) {
  std::vector<RunConfig> configs;
  for (double v : cfg.axis.values) {
    RunConfig c = cfg.base;
    set_numeric(c, cfg.axis.key, v);
    configs.push_back(std::move(c));
  }

  std::vector<SweepPoint> points(configs.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < configs.size(); begin += workers) {
    const std::size_t end = std::min(configs.size(), begin + workers);
    std::vector<std::future<RunResult>> batch;
    for (std::size_t i = begin; i < end; ++i)
      batch.push_back(std::async(std::launch::async, [&configs, i] { return execute(configs[i]); }));
    for (std::size_t i = begin; i < end; ++i)
      points[i] = {cfg.axis.values[i], batch[i - begin].get()};
  }
  return points;
}

std::string sweep_table_csv(const std::vector<SweepPoint>& points) {
  std::string out = "value,esd_time,revivals,plateau\n";
  for (const auto& p : points) {
    const auto& tr = p.result.trajectory;
    out += fmt::format("{},{},{},{}\n", num(p.value), tr.esd_time ? num(*tr.esd_time) : "",
                       tr.revivals.size(), tr.plateau ? num(*tr.plateau) : "");
  }
  return out;
}

WrittenFiles write_sweep_outputs(const std::vector<SweepPoint>& points,
                                 const std::filesystem::path& out_dir, const std::string& stem) {
  WrittenFiles files;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto f = write_outputs(points[i].result, out_dir, fmt::format("{}_{}", stem, i));
    files.paths.insert(files.paths.end(), f.paths.begin(), f.paths.end());
  }
  files.paths.push_back(out_dir / (stem + "_sweep.csv"));
  write_text(files.paths.back(), sweep_table_csv(points));
  return files;
}

}  // namespace entdyn::app
