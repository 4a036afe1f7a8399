#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oscimax.hpp"

using namespace oscimax;
namespace fs = std::filesystem;

namespace {

const fs::path kTmp = fs::temp_directory_path() / "oscimax_cli_test";

int run(const std::string& args) {
  fs::create_directories(kTmp);
  const std::string cmd = std::string(OSCIMAX_CLI) + " " + args + " > " + (kTmp / "stdout.txt").string() + " 2> " +
                          (kTmp / "stderr.txt").string();
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path write_gaussian(std::size_t m, double half) {
  const Axis ax = Axis::symmetric(m, half);
  SpectralField f(UniformGrid({ax}), Representation::spatial);
  for (std::size_t k = 0; k < ax.m; ++k) f[k] = std::exp(-0.5 * ax.x(k) * ax.x(k));
  const fs::path p = kTmp / "gauss.csv";
  fs::create_directories(kTmp);
  write_field_csv(p.string(), f);
  return p;
}

fs::path only_run_dir(const fs::path& root, const std::string& id) {
  fs::path found;
  for (const auto& e : fs::directory_iterator(root))
    if (e.path().filename().string().rfind(id + "-", 0) == 0) found = e.path();
  return found;
}

}  // namespace

TEST(Cli, HelpOnEverySubcommand) {
  EXPECT_EQ(run("--help"), 0);
  for (const char* sc : {"evolve", "maximal", "check", "sharpness", "converge", "probe", "suite"})
    EXPECT_EQ(run(std::string(sc) + " --help"), 0) << sc;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("check nosuch"), 2);
  EXPECT_EQ(run("evolve --t 1 --input /nonexistent.csv --out x.csv"), 2);
  EXPECT_EQ(run("check vdc --set nosuchkey=1"), 2);
  const fs::path cfg = kTmp / "bad.json";
  std::ofstream(cfg) << R"({"seed": 7, "colour": "blue"})";
  EXPECT_EQ(run("--config " + cfg.string() + " suite --emit-config"), 2);
}

TEST(Cli, EmittedConfigRoundTrips) {
  ASSERT_EQ(run("suite --emit-config"), 0);
  const std::string first = slurp(kTmp / "stdout.txt");
  const fs::path cfg = kTmp / "emitted.json";
  std::ofstream(cfg) << first;
  ASSERT_EQ(run("--config " + cfg.string() + " suite --emit-config"), 0);
  EXPECT_EQ(slurp(kTmp / "stdout.txt"), first);
  const fs::path shipped = fs::path(OSCIMAX_SOURCE_DIR) / "configs" / "default.json";
  ASSERT_EQ(run("--config " + shipped.string() + " suite --emit-config"), 0);
  EXPECT_EQ(slurp(kTmp / "stdout.txt"), first);
}

// Gaussian e^{-x^2/2}: S_t f(x) = sqrt(2pi) sqrt(pi/c) e^{-x^2/(4c)}, c = 1/2 - it.
TEST(Cli, EvolveMatchesClosedForm) {
  const auto in = write_gaussian(512, 32.0);
  const fs::path out = kTmp / "evolved.csv";
  ASSERT_EQ(run("evolve --a 2 --t 0.5 --input " + in.string() + " --out " + out.string()), 0);
  std::ifstream is(out);
  const auto g = read_field_csv(is);
  const auto& ax = g.grid.axis(0);
  const cplx c(0.5, -0.5);
  for (std::size_t k = 0; k < ax.m; ++k) {
    const double x = ax.x(k);
    const cplx ref = std::sqrt(kTwoPi) * std::sqrt(kPi / c) * std::exp(-x * x / (4.0 * c));
    EXPECT_NEAR(std::abs(g[k] - ref), 0.0, 1e-10) << x;
  }
}

// A single-node spike has a flat spectrum reaching the band edge.
TEST(Cli, EvolveAliasingIsNumericalError) {
  const fs::path in = kTmp / "spike.csv";
  {
    const Axis ax = Axis::symmetric(64, 8.0);
    SpectralField f(UniformGrid({ax}), Representation::spatial);
    f[ax.m / 2] = 1.0;
    write_field_csv(in.string(), f);
  }
  EXPECT_EQ(run("evolve --t 20 --input " + in.string() + " --out " + (kTmp / "x.csv").string()), 3);
}

TEST(Cli, MaximalDominatesEachTime) {
  const auto in = write_gaussian(256, 32.0);
  const fs::path out = kTmp / "max.csv";
  ASSERT_EQ(run("maximal --input " + in.string() + " --count 16 --out " + out.string()), 0);
  std::ifstream is(out);
  const auto m = read_field_csv(is);
  const auto& ax = m.grid.axis(0);
  for (std::size_t k = 0; k < ax.m; k += 7) {
    const double x = ax.x(k);
    // |S_t f(x)| = 2pi (1+4t^2)^{-1/4} e^{-x^2/(2(1+4t^2))}; t -> 0 gives a lower bound at every x
    const double t = 1e-4, d = 1.0 + 4.0 * t * t;
    EXPECT_GE(m[k].real(), kTwoPi * std::pow(d, -0.25) * std::exp(-x * x / (2.0 * d)) - 1e-9);
    EXPECT_EQ(m[k].imag(), 0.0);
  }
}

TEST(Cli, CheckLemma2WritesReport) {
  const fs::path root = kTmp / "runs_l2";
  fs::remove_all(root);
  ASSERT_EQ(run("--out " + root.string() + " check lemma2 --a 3 --alpha 1.0"), 0);
  const auto dir = only_run_dir(root, "LEMMA2_DECAY");
  ASSERT_FALSE(dir.empty());
  std::ifstream in(dir / "report.json");
  const json j = json::parse(in);
  EXPECT_EQ(j["scenario"], "LEMMA2_DECAY");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_DOUBLE_EQ(j["predicted"].get<double>(), -0.75);  // slope -beta
  EXPECT_EQ(j["seed"], 7);
  EXPECT_TRUE(fs::exists(dir / "samples.csv"));
}

TEST(Cli, SeedAndWorkersDoNotChangeDeterministicOutput) {
  const fs::path r1 = kTmp / "runs_w1", r2 = kTmp / "runs_w2";
  fs::remove_all(r1);
  fs::remove_all(r2);
  ASSERT_EQ(run("--seed 3 --out " + r1.string() + " check ttkernel --set thm5_cases=5 --set samples=50"), 0);
  ASSERT_EQ(std::system(("OSCIMAX_WORKERS=2 " + std::string(OSCIMAX_CLI) + " --seed 3 --out " + r2.string() +
                         " check ttkernel --set thm5_cases=5 --set samples=50 > /dev/null")
                            .c_str()),
            0);
  const auto d1 = only_run_dir(r1, "TT_KERNEL_BOUND"), d2 = only_run_dir(r2, "TT_KERNEL_BOUND");
  EXPECT_EQ(slurp(d1 / "report.json"), slurp(d2 / "report.json"));
  EXPECT_EQ(slurp(d1 / "samples.csv"), slurp(d2 / "samples.csv"));
}
