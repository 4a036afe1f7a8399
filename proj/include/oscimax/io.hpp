#ifndef OSCIMAX_IO_HPP
#define OSCIMAX_IO_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oscimax/error.hpp"
#include "oscimax/experiments.hpp"
#include "oscimax/spectral.hpp"

namespace oscimax {

// ---------------------------------------------------------------------------
// sampled fields: CSV with header x,re,im (1D) or x,y,re,im (2D), row-major
// with x slowest, exactly as the grid stores them

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

inline double parse_num(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ConfigError("line " + std::to_string(line) + ": not a number '" + s + "'");
  return v;
}

/// Recovers a symmetric axis from its distinct node coordinates.
inline Axis axis_from_nodes(const std::vector<double>& nodes, const char* name) {
  const std::size_t m = nodes.size();
  if (m < 4 || m % 2 != 0) throw ConfigError(std::string("field CSV: ") + name + " needs an even count >= 4 of nodes");
  const double h = (nodes.back() - nodes.front()) / double(m - 1);
  if (!(h > 0.0)) throw ConfigError(std::string("field CSV: ") + name + " nodes must increase");
  const Axis ax(m, h);
  for (std::size_t k = 0; k < m; ++k)
    if (std::abs(nodes[k] - ax.x(k)) > 1e-9 * std::max(1.0, ax.extent()))
      throw ConfigError(std::string("field CSV: ") + name + " nodes are not a symmetric uniform grid (x_k = (k - m/2) h)");
  return ax;
}

}  // namespace detail

inline SpectralField read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("field CSV is empty");
  const auto head = detail::split_csv(line);
  const bool two = head == std::vector<std::string>{"x", "y", "re", "im"};
  if (!two && head != std::vector<std::string>{"x", "re", "im"})
    throw ConfigError("field CSV header must be 'x,re,im' or 'x,y,re,im'");
  std::vector<std::vector<double>> rows;
  for (std::size_t ln = 2; std::getline(in, line); ++ln) {
    if (line.empty() || line == "\r") continue;
    const auto cells = detail::split_csv(line);
    if (cells.size() != head.size()) throw ConfigError("line " + std::to_string(ln) + ": wrong number of columns");
    std::vector<double> r;
    for (const auto& c : cells) r.push_back(detail::parse_num(c, ln));
    rows.push_back(std::move(r));
  }
  if (!two) {
    std::vector<double> xs;
    for (const auto& r : rows) xs.push_back(r[0]);
    const UniformGrid g({detail::axis_from_nodes(xs, "x")});
    SpectralField f(g, Representation::spatial);
    for (std::size_t k = 0; k < rows.size(); ++k) f[k] = cplx(rows[k][1], rows[k][2]);
    return f;
  }
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (xs.empty() || r[0] != xs.back()) xs.push_back(r[0]);
    if (xs.size() == 1) ys.push_back(r[1]);
  }
  if (xs.size() * ys.size() != rows.size()) throw ConfigError("field CSV: rows do not form a full x-by-y grid");
  const UniformGrid g({detail::axis_from_nodes(xs, "x"), detail::axis_from_nodes(ys, "y")});
  SpectralField f(g, Representation::spatial);
  for (std::size_t p = 0; p < rows.size(); ++p) {
    const auto idx = g.unravel(p);
    if (rows[p][0] != xs[idx[0]] || rows[p][1] != ys[idx[1]]) throw ConfigError("field CSV: rows are not in x-major order");
    f[p] = cplx(rows[p][2], rows[p][3]);
  }
  return f;
}

inline SpectralField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return read_field_csv(in);
}

inline void write_field_csv(std::ostream& os, const SpectralField& f) {
  require_rep(f, Representation::spatial, "write_field_csv");
  const auto& g = f.grid;
  if (g.dim() > 2) throw DimensionError("field CSV holds 1D or 2D fields");
  os << (g.dim() == 1 ? "x,re,im\n" : "x,y,re,im\n");
  for (std::size_t p = 0; p < f.size(); ++p) {
    const auto x = g.point(p);
    for (double c : x) os << format_double(c) << ',';
    os << format_double(f[p].real()) << ',' << format_double(f[p].imag()) << '\n';
  }
}

inline void write_field_csv(const std::string& path, const SpectralField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  write_field_csv(os, f);
  if (!os) throw Error("write failed for " + path);
}

// ---------------------------------------------------------------------------
// configuration

struct GridConfig {
  std::size_t m1 = 65536;
  double half_extent1 = 256.0;
  std::size_t m2 = 1024;
  double half_extent2 = 64.0;
};

struct ScenarioEntry {
  std::string id;
  json overrides = json::object();
};

struct Config {
  std::string output_dir = "runs";
  std::uint64_t seed = 7;
  std::size_t workers = 0;  // 0: hardware concurrency
  GridConfig grid;
  double a = 2.0;
  std::vector<ScenarioEntry> scenarios;  // empty: every graded scenario
};

namespace detail {

inline void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

template <class T>
T get_as(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": bad value for '" + key + "'");
  }
}

inline std::size_t get_count(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(where + ": '" + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace detail

/// Validates everything, including scenario ids and override keys, before any run.
inline Config config_from_json(const json& j) {
  detail::only_keys(j, {"output_dir", "seed", "workers", "grid", "law", "scenarios"}, "config");
  Config c;
  if (j.contains("output_dir")) c.output_dir = detail::get_as<std::string>(j, "output_dir", "config");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      throw ConfigError("config: 'seed' must be a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("workers")) c.workers = detail::get_count(j, "workers", "config");
  if (j.contains("grid")) {
    const json& g = j["grid"];
    detail::only_keys(g, {"m1", "half_extent1", "m2", "half_extent2"}, "config.grid");
    if (g.contains("m1")) c.grid.m1 = detail::get_count(g, "m1", "config.grid");
    if (g.contains("m2")) c.grid.m2 = detail::get_count(g, "m2", "config.grid");
    if (g.contains("half_extent1")) c.grid.half_extent1 = detail::get_as<double>(g, "half_extent1", "config.grid");
    if (g.contains("half_extent2")) c.grid.half_extent2 = detail::get_as<double>(g, "half_extent2", "config.grid");
    for (std::size_t m : {c.grid.m1, c.grid.m2})
      if (m < 4 || (m & (m - 1)) != 0) throw ConfigError("config.grid: point counts must be powers of two >= 4");
    if (!(c.grid.half_extent1 > 0.0) || !(c.grid.half_extent2 > 0.0))
      throw ConfigError("config.grid: extents must be positive");
  }
  if (j.contains("law")) {
    detail::only_keys(j["law"], {"a"}, "config.law");
    if (j["law"].contains("a")) c.a = detail::get_as<double>(j["law"], "a", "config.law");
    if (!(c.a > 1.0)) throw ConfigError("config.law: a must exceed 1");
  }
  if (j.contains("scenarios")) {
    if (!j["scenarios"].is_array()) throw ConfigError("config: 'scenarios' must be an array");
    for (const auto& e : j["scenarios"]) {
      detail::only_keys(e, {"id", "overrides"}, "config.scenarios[]");
      ScenarioEntry s;
      s.id = detail::get_as<std::string>(e, "id", "config.scenarios[]");
      if (e.contains("overrides")) s.overrides = e["overrides"];
      c.scenarios.push_back(std::move(s));
    }
  }
  return c;
}

inline json config_to_json(const Config& c) {
  json j;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["grid"] = {{"m1", c.grid.m1}, {"half_extent1", c.grid.half_extent1}, {"m2", c.grid.m2},
               {"half_extent2", c.grid.half_extent2}};
  j["law"] = {{"a", c.a}};
  j["scenarios"] = json::array();
  for (const auto& s : c.scenarios) j["scenarios"].push_back({{"id", s.id}, {"overrides", s.overrides}});
  return j;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace oscimax

#endif  // OSCIMAX_IO_HPP
