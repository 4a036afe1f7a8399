#ifndef OSCIMAX_EXPERIMENTS_HPP
#define OSCIMAX_EXPERIMENTS_HPP

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oscimax/error.hpp"
#include "oscimax/fit.hpp"

#ifndef OSCIMAX_VERSION
#define OSCIMAX_VERSION "1.0.0"
#endif

namespace oscimax {

using json = nlohmann::json;

inline constexpr const char* kArtifactVersion = OSCIMAX_VERSION;

/// Shortest round-trip text for a double; identical input gives identical bytes.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

/// Raw samples behind a scenario's reports; the first column is the report index.
struct SampleTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row) {
    if (row.size() != columns.size()) throw DimensionError("sample row width does not match the header");
    rows.push_back(std::move(row));
  }
  std::string to_csv() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < columns.size(); ++j) os << (j ? "," : "") << columns[j];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << format_double(r[j]);
      os << '\n';
    }
    return os.str();
  }
};

struct ScenarioResult {
  std::string id;
  json settings;
  std::uint64_t seed = 0;
  std::vector<ExponentReport> reports;
  SampleTable samples;
  json details = json::object();
  std::string error;  // numerical failure recorded instead of thrown

  /// fail if any report fails; pass if at least one passes; informational otherwise.
  Verdict overall() const {
    bool any_pass = false;
    for (const auto& r : reports) {
      if (r.verdict == Verdict::fail) return Verdict::fail;
      any_pass = any_pass || r.verdict == Verdict::pass;
    }
    return any_pass ? Verdict::pass : Verdict::informational;
  }
};

using Runner = std::function<ScenarioResult(const json& settings, std::uint64_t seed)>;

struct ScenarioInfo {
  std::string id;
  std::string description;
  bool graded = true;  // probes are informational and excluded from the suite
  json defaults;
  Runner run;
};

/// Overrides must name existing keys; values keep the default's JSON type class.
inline json merge_settings(const json& defaults, const json& overrides, const std::string& where) {
  json out = defaults;
  if (overrides.is_null()) return out;
  if (!overrides.is_object()) throw ConfigError(where + ": overrides must be an object");
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    if (!defaults.contains(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    const json& d = defaults[it.key()];
    const json& v = it.value();
    const bool same = (d.is_number() && v.is_number()) || (d.is_array() && v.is_array()) ||
                      (d.is_boolean() && v.is_boolean()) || (d.is_string() && v.is_string()) ||
                      (d.is_object() && v.is_object());
    if (!same) throw ConfigError(where + ": key '" + it.key() + "' has the wrong type");
    out[it.key()] = v;
  }
  return out;
}

inline json report_to_json(const ExponentReport& r) {
  return json{{"label", r.label},         {"fitted", r.fitted},       {"predicted", r.predicted},
              {"tolerance", r.tolerance}, {"residual", r.residual},   {"bound", to_string(r.bound)},
              {"window", {r.window_lo, r.window_hi}},
              {"used", r.used},           {"dropped", r.dropped},     {"verdict", to_string(r.verdict)},
              {"note", r.note}};
}

/// report.json body. Top-level fitted/predicted/tolerance/residual describe the
/// first report; the full list follows under "reports".
inline json result_to_json(const ScenarioResult& res) {
  json j;
  j["scenario"] = res.id;
  j["settings"] = res.settings;
  j["seed"] = res.seed;
  const ExponentReport first = res.reports.empty() ? ExponentReport{} : res.reports.front();
  j["fitted"] = first.fitted;
  j["predicted"] = first.predicted;
  j["tolerance"] = first.tolerance;
  j["residual"] = first.residual;
  j["verdict"] = to_string(res.overall());
  j["artifact_version"] = kArtifactVersion;
  j["reports"] = json::array();
  for (const auto& r : res.reports) j["reports"].push_back(report_to_json(r));
  j["details"] = res.details;
  if (!res.error.empty()) j["error"] = res.error;
  return j;
}

/// UTC stamp used only in directory names, never inside files.
inline std::string run_stamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

/// Writes <root>/<id>-<stamp>/report.json and samples.csv; returns the directory.
inline std::filesystem::path persist(const ScenarioResult& res, const std::filesystem::path& root,
                                     const std::string& stamp) {
  namespace fs = std::filesystem;
  fs::path dir = root / (res.id + "-" + stamp);
  for (int k = 2; fs::exists(dir); ++k) dir = root / (res.id + "-" + stamp + "-" + std::to_string(k));
  fs::create_directories(dir);
  std::ofstream rj(dir / "report.json", std::ios::binary);
  rj << result_to_json(res).dump(2) << '\n';
  std::ofstream cs(dir / "samples.csv", std::ios::binary);
  cs << res.samples.to_csv();
  if (!rj || !cs) throw Error("could not write reports to " + dir.string());
  return dir;
}

/// Portable uniform draws: the same seed gives the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return std::uint64_t(uniform() * double(n)); }
  /// Independent stream for case k of a scenario.
  static Rng stream(std::uint64_t seed, std::uint64_t k) { return Rng(seed * 0x9E3779B97F4A7C15ULL + k + 1); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oscimax

#endif  // OSCIMAX_EXPERIMENTS_HPP
