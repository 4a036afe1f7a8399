#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oscimax.hpp"

using namespace oscimax;
namespace fs = std::filesystem;

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(format_double(-2.0), "-2");
  EXPECT_EQ(format_double(NAN), "nan");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  for (double v : {1e-300, 3.14159, 6.02e23, -7.5e-9}) EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
}

TEST(MergeSettings, KeysAndTypes) {
  const json d = {{"a", 2.0}, {"cases", {1, 2}}, {"name", "x"}};
  const json m = merge_settings(d, {{"a", 3}, {"cases", {5}}}, "T");
  EXPECT_EQ(m["a"], 3);
  EXPECT_EQ(m["cases"], json({5}));
  EXPECT_EQ(m["name"], "x");
  EXPECT_EQ(merge_settings(d, nullptr, "T"), d);
  EXPECT_THROW(merge_settings(d, {{"b", 1}}, "T"), ConfigError);
  EXPECT_THROW(merge_settings(d, {{"a", "two"}}, "T"), ConfigError);
  EXPECT_THROW(merge_settings(d, {{"cases", 1}}, "T"), ConfigError);
  EXPECT_THROW(merge_settings(d, json::array(), "T"), ConfigError);
}

TEST(Rng, DeterministicStreams) {
  Rng a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    differs = differs || x != c.uniform();
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(Rng::stream(7, 3).uniform(), Rng::stream(7, 3).uniform());
  EXPECT_NE(Rng::stream(7, 3).uniform(), Rng::stream(7, 4).uniform());
  Rng r(1);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(5), 5u);
}

TEST(FieldCsv, RoundTrip1D) {
  const Axis ax = Axis::symmetric(16, 4.0);
  SpectralField f(UniformGrid({ax}), Representation::spatial);
  for (std::size_t k = 0; k < ax.m; ++k) f[k] = cplx(std::sin(ax.x(k)), 1.0 / 3.0 * double(k));
  std::stringstream ss;
  write_field_csv(ss, f);
  EXPECT_EQ(ss.str().substr(0, 9), "x,re,im\n-");
  const auto g = read_field_csv(ss);
  ASSERT_EQ(g.grid.dim(), 1u);
  EXPECT_EQ(g.grid.axis(0).m, ax.m);
  EXPECT_DOUBLE_EQ(g.grid.axis(0).h, ax.h);
  for (std::size_t k = 0; k < ax.m; ++k) EXPECT_EQ(g[k], f[k]);
}

TEST(FieldCsv, RoundTrip2D) {
  const Axis a0 = Axis::symmetric(8, 2.0), a1 = Axis::symmetric(4, 3.0);
  SpectralField f(UniformGrid({a0, a1}), Representation::spatial);
  for (std::size_t p = 0; p < f.size(); ++p) f[p] = cplx(double(p) * 0.1, -double(p));
  std::stringstream ss;
  write_field_csv(ss, f);
  EXPECT_EQ(ss.str().substr(0, 10), "x,y,re,im\n");
  const auto g = read_field_csv(ss);
  ASSERT_EQ(g.grid.dim(), 2u);
  EXPECT_EQ(g.grid.axis(0).m, 8u);
  EXPECT_EQ(g.grid.axis(1).m, 4u);
  for (std::size_t p = 0; p < f.size(); ++p) EXPECT_EQ(g[p], f[p]);
}

TEST(FieldCsv, RejectsBadInput) {
  std::stringstream bad_header("a,b,c\n1,2,3\n");
  EXPECT_THROW(read_field_csv(bad_header), ConfigError);
  std::stringstream uneven("x,re,im\n-1,0,0\n0,0,0\n0.5,0,0\n1,0,0\n");
  EXPECT_THROW(read_field_csv(uneven), ConfigError);
  std::stringstream junk("x,re,im\n-1,0,zz\n0,0,0\n");
  EXPECT_THROW(read_field_csv(junk), ConfigError);
}

TEST(Config, RoundTripAndValidation) {
  Config c;
  c.seed = 11;
  c.grid.m2 = 512;
  c.a = 3.0;
  c.scenarios.push_back({"VDC", {{"alpha", 0.7}}});
  const json j = config_to_json(c);
  EXPECT_EQ(config_to_json(config_from_json(j)), j);
  EXPECT_EQ(config_to_json(config_from_json(json::object())), config_to_json(Config{}));
  EXPECT_THROW(config_from_json({{"bogus", 1}}), ConfigError);
  EXPECT_THROW(config_from_json({{"grid", {{"m1", 1000}}}}), ConfigError);
  EXPECT_THROW(config_from_json({{"law", {{"a", 1.0}}}}), ConfigError);
  EXPECT_THROW(config_from_json({{"seed", -1}}), ConfigError);
  EXPECT_THROW(config_from_json({{"scenarios", {{{"id", "X"}, {"extra", 1}}}}}), ConfigError);
}

TEST(Config, ShippedDefaultMatchesBuiltIn) {
  const fs::path p = fs::path(OSCIMAX_SOURCE_DIR) / "configs" / "default.json";
  EXPECT_EQ(config_to_json(load_config(p.string())), config_to_json(Config{}));
}

TEST(Persist, WritesReportAndSamples) {
  ScenarioResult r;
  r.id = "DEMO";
  r.settings = {{"k", 1}};
  r.reports.push_back(check_report("DEMO", "slope", 0.51, 0.5, 0.05, BoundKind::two_sided));
  r.samples.columns = {"report", "x", "y"};
  r.samples.add({0, 1.5, 2.0});
  EXPECT_THROW(r.samples.add({0, 1}), DimensionError);
  const fs::path root = fs::temp_directory_path() / "oscimax_persist_test";
  fs::remove_all(root);
  const auto d1 = persist(r, root, "S");
  const auto d2 = persist(r, root, "S");
  EXPECT_NE(d1, d2);
  std::ifstream in(d1 / "report.json");
  const json j = json::parse(in);
  EXPECT_EQ(j["scenario"], "DEMO");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["reports"].size(), 1u);
  EXPECT_DOUBLE_EQ(j["fitted"].get<double>(), 0.51);
  std::ifstream cs(d1 / "samples.csv");
  std::string head, row;
  std::getline(cs, head);
  std::getline(cs, row);
  EXPECT_EQ(head, "report,x,y");
  EXPECT_EQ(row, "0,1.5,2");
  fs::remove_all(root);
}

TEST(Registry, IdsAndLookup) {
  std::vector<std::string> graded;
  for (const auto& s : scenario_registry())
    if (s.graded) graded.push_back(s.id);
  EXPECT_EQ(graded.size(), 15u);
  EXPECT_EQ(find_scenario("RIESZ_BOUND").id, "RIESZ_BOUND");
  EXPECT_FALSE(find_scenario("OPEN_Q2_PROBE").graded);
  EXPECT_THROW(find_scenario("NOPE"), ConfigError);
  EXPECT_THROW(run_scenario("VDC", {{"unknown", 1}}, 7), ConfigError);
}

TEST(Registry, SameSeedSameReport) {
  const auto a = run_scenario("MAJORIZATION", json::object(), 7);
  const auto b = run_scenario("MAJORIZATION", json::object(), 7);
  EXPECT_EQ(result_to_json(a).dump(), result_to_json(b).dump());
  EXPECT_EQ(a.samples.to_csv(), b.samples.to_csv());
  EXPECT_EQ(a.overall(), Verdict::pass);
  const auto c = run_scenario("MAJORIZATION", json::object(), 8);
  EXPECT_NE(a.samples.to_csv(), c.samples.to_csv());
}

TEST(Registry, ProbesAreInformational) {
  const auto r = run_scenario("ONEHALF_PROBE", json::object(), 7);
  for (const auto& rep : r.reports) EXPECT_EQ(rep.verdict, Verdict::informational);
  EXPECT_EQ(r.overall(), Verdict::informational);
}
