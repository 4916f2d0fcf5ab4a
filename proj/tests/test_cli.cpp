#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("entdyn_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int simulate(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(ENTDYN_SIMULATE_EXE) + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const char* kBandGap = R"(model.kind = bandgap
model.gamma1 = 1
model.gamma2 = 1
model.lambda1 = 50
model.lambda2 = 5
initial.family = phi
initial.alpha = 0.70710678118654746
grid.t_max = 50
grid.n = 5001
output.path = fig2-g1
)";

}  // namespace

TEST(Cli, PresetWritesFiles) {
  const auto dir = scratch_dir("preset");
  ASSERT_EQ(simulate("preset fig1-d0 --out-dir " + dir.string(), dir / "log"), 0) << slurp(dir / "log");
  EXPECT_TRUE(fs::exists(dir / "fig1-d0.csv"));
  const auto json = slurp(dir / "fig1-d0.json");
  EXPECT_EQ(json.find("\"esd_time\": null"), std::string::npos);
  EXPECT_NE(json.find("\"regime\": \"strong\""), std::string::npos);
  EXPECT_NE(slurp(dir / "log").find("esd_time="), std::string::npos);
}

TEST(Cli, QuietAndOracleFlags) {
  const auto dir = scratch_dir("flags");
  ASSERT_EQ(simulate("preset fig1-d2 --quiet --oracle --out-dir " + dir.string(), dir / "log"), 0);
  EXPECT_TRUE(slurp(dir / "log").empty());
  EXPECT_TRUE(fs::exists(dir / "fig1-d2_oracle.csv"));
}

TEST(Cli, RunConfigMatchesPreset) {
  const auto dir = scratch_dir("run");
  write(dir / "g1.cfg", kBandGap);
  ASSERT_EQ(simulate("run " + (dir / "g1.cfg").string() + " --quiet --out-dir " + (dir / "a").string(), dir / "log"), 0)
      << slurp(dir / "log");
  ASSERT_EQ(simulate("preset fig2-g1 --quiet --out-dir " + (dir / "b").string(), dir / "log"), 0);
  EXPECT_EQ(slurp(dir / "a" / "fig2-g1.csv"), slurp(dir / "b" / "fig2-g1.csv"));
  EXPECT_FALSE(slurp(dir / "a" / "fig2-g1.csv").empty());
}

TEST(Cli, SweepWritesTable) {
  const auto dir = scratch_dir("sweep");
  std::string text = kBandGap;
  text += "sweep.key = model.gamma2\nsweep.values = 1, 0.6666666666666666, 0.3333333333333333, 0\n";
  text.replace(text.find("output.path = fig2-g1"), 21, "output.path = g2");
  write(dir / "s.cfg", text);
  ASSERT_EQ(simulate("sweep " + (dir / "s.cfg").string() + " --out-dir " + dir.string(), dir / "log"), 0)
      << slurp(dir / "log");
  const auto table = slurp(dir / "g2_sweep.csv");
  std::istringstream in(table);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "value,esd_time,revivals,plateau");
  int rows = 0, plateaus = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.back() != ',') ++plateaus;
  }
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(plateaus, 1);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(fs::exists(dir / ("g2_" + std::to_string(i) + ".csv")));
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch_dir("codes");
  EXPECT_EQ(simulate("preset nope", dir / "log"), 2);
  EXPECT_NE(slurp(dir / "log").find("UnknownPreset"), std::string::npos);

  EXPECT_EQ(simulate("", dir / "log"), 2);
  EXPECT_EQ(simulate("frobnicate", dir / "log"), 2);

  write(dir / "typo.cfg", std::string(kBandGap) + "model.lamda2 = 4\n");
  EXPECT_EQ(simulate("run " + (dir / "typo.cfg").string(), dir / "log"), 2);
  EXPECT_NE(slurp(dir / "log").find("line 11"), std::string::npos);

  EXPECT_EQ(simulate("run " + (dir / "missing.cfg").string(), dir / "log"), 2);

  std::string bad = kBandGap;
  bad.replace(bad.find("model.gamma2 = 1"), 16, "model.gamma2 = 2");
  write(dir / "bad.cfg", bad);
  EXPECT_EQ(simulate("run " + (dir / "bad.cfg").string(), dir / "log"), 3);
  EXPECT_NE(slurp(dir / "log").find("center of resonance"), std::string::npos);

  // Oracle step far too coarse for a strong, slowly decaying kernel.
  std::string stiff = R"(model.kind = lorentzian
model.gamma = 2000000
model.lambda = 0.01
model.delta = 0
initial.family = phi
initial.alpha = 0.7
grid.t_max = 5
grid.n = 101
oracle.enabled = true
oracle.step = 0.5
)";
  write(dir / "stiff.cfg", stiff);
  EXPECT_EQ(simulate("run " + (dir / "stiff.cfg").string() + " --out-dir " + dir.string(), dir / "log"), 4)
      << slurp(dir / "log");

  EXPECT_EQ(simulate("--help", dir / "log"), 0);
}
