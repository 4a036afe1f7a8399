// oscimax: command-line front end for the dispersive maximal-estimate experiments.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscimax.hpp"

using namespace oscimax;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kNumerical = 3 };

struct Global {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string out;
  std::vector<std::string> sets;  // key=<json>
};

json parse_sets(const std::vector<std::string>& sets) {
  json o = json::object();
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    try {
      o[key] = json::parse(val);
    } catch (const json::parse_error&) {
      o[key] = val;
    }
  }
  return o;
}

/// Config-level grid and law settings, applied where a scenario has the matching key.
json config_overrides(const Config& c, const ScenarioInfo& info) {
  json o = json::object();
  const json& d = info.defaults;
  const json grid = {{"m1", c.grid.m1}, {"half_extent1", c.grid.half_extent1}, {"m2", c.grid.m2},
                     {"half_extent2", c.grid.half_extent2}};
  for (auto it = grid.begin(); it != grid.end(); ++it)
    if (d.contains(it.key())) o[it.key()] = it.value();
  if (d.contains("a") && d["a"].is_number()) o["a"] = c.a;
  for (const auto& e : c.scenarios)
    if (e.id == info.id)
      for (auto it = e.overrides.begin(); it != e.overrides.end(); ++it) o[it.key()] = it.value();
  return o;
}

void print_result(const ScenarioResult& r) {
  for (const auto& rep : r.reports) {
    std::printf("%-22s %-52s fitted=%-12s predicted=%-10s tol=%-8s rms=%-10s %s\n", r.id.c_str(), rep.label.c_str(),
                format_double(rep.fitted).c_str(), format_double(rep.predicted).c_str(),
                format_double(rep.tolerance).c_str(), format_double(rep.residual).c_str(), to_string(rep.verdict));
  }
  if (!r.error.empty()) std::printf("%-22s numerical error: %s\n", r.id.c_str(), r.error.c_str());
  std::printf("%-22s => %s\n", r.id.c_str(), to_string(r.overall()));
  std::fflush(stdout);
}

class Session {
 public:
  explicit Session(const Global& g) : g_(g) {
    if (!g.config_path.empty()) cfg_ = load_config(g.config_path);
    if (!std::getenv("OSCIMAX_WORKERS") && cfg_.workers > 0) set_worker_count(cfg_.workers);
    seed_ = g.seed.value_or(cfg_.seed);
    root_ = g.out.empty() ? cfg_.output_dir : g.out;
  }

  const Config& config() const { return cfg_; }

  /// Runs, prints and persists each scenario; returns the exit code.
  int run(const std::vector<std::pair<std::string, json>>& jobs) {
    const std::string stamp = run_stamp();
    bool fail = false, numerical = false;
    for (const auto& [id, cli] : jobs) {
      const auto& info = find_scenario(id);
      json o = config_overrides(cfg_, info);
      for (auto it = cli.begin(); it != cli.end(); ++it) o[it.key()] = it.value();
      const auto res = run_scenario(id, o, seed_);
      print_result(res);
      const auto dir = persist(res, root_, stamp);
      std::printf("%-22s wrote %s\n", id.c_str(), dir.string().c_str());
      fail = fail || res.overall() == Verdict::fail;
      numerical = numerical || !res.error.empty();
    }
    return numerical ? kNumerical : (fail ? kFail : kOk);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  const Global& g_;
  Config cfg_;
  std::uint64_t seed_ = 7;
  std::string root_;
};

DispersionLaw law_for(const std::vector<double>& a, std::size_t n) {
  if (a.size() == 1) return DispersionLaw::uniform(n, a[0]);
  if (a.size() != n) throw ConfigError("--a needs 1 or " + std::to_string(n) + " values");
  return DispersionLaw(a);
}

TimeVector times_for(const std::vector<double>& t, std::size_t n) {
  if (t.size() == 1) return TimeVector(n, t[0]);
  if (t.size() != n) throw ConfigError("--t needs 1 or " + std::to_string(n) + " values");
  return TimeVector(t.begin(), t.end());
}

json cartesian(const std::vector<double>& a, const std::vector<double>& b) {
  json out = json::array();
  for (double x : a)
    for (double y : b) out.push_back({x, y});
  return out;
}

const std::map<std::string, std::string> kCheck = {{"lemma1", "LEMMA1_DECAY"},   {"lemma2", "LEMMA2_DECAY"},
                                                   {"lemma3", "LEMMA3_MAJORANT"}, {"vdc", "VDC"},
                                                   {"ttkernel", "TT_KERNEL_BOUND"}, {"riesz", "RIESZ_BOUND"}};
const std::map<std::string, std::string> kSharp = {{"thm3", "THM3_NECESSITY"},
                                                   {"thm4", "THM4_NECESSITY"},
                                                   {"thm6", "THM6_RATIO"},
                                                   {"thm7", "THM7_USTAR"}};
const std::map<std::string, std::string> kProbe = {{"open-q2", "OPEN_Q2_PROBE"}, {"onehalf", "ONEHALF_PROBE"}};

std::vector<std::string> keys(const std::map<std::string, std::string>& m) {
  std::vector<std::string> k;
  for (const auto& kv : m) k.push_back(kv.first);
  return k;
}

std::string resolve_id(const std::string& name) {
  for (const auto* m : {&kCheck, &kSharp, &kProbe}) {
    auto it = m->find(name);
    if (it != m->end()) return it->second;
  }
  return find_scenario(name).id;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on maximal estimates for dispersive evolutions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kArtifactVersion));
  Global g;
  app.add_option("--seed", g.seed, "seed for all randomness (default: config seed, else 7)");
  app.add_option("--config", g.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "output: run directory root, or the CSV file for evolve/maximal");
  app.add_option("--set", g.sets, "scenario setting override key=<json>, repeatable");

  std::vector<double> a{2.0}, t, alpha, s, eps, q;
  std::string input, mode = "star", which;
  std::size_t count = 128;
  double T = 1.0, tmin = 1e-4;
  bool emit = false;

  auto* evolve_cmd = app.add_subcommand("evolve", "sample S_t f for f read from CSV (x[,y],re,im)");
  evolve_cmd->add_option("--a", a, "dispersion exponents (one, or one per axis)");
  evolve_cmd->add_option("--t", t, "times (one, or one per axis)")->required();
  evolve_cmd->add_option("--input", input, "input field CSV")->required()->check(CLI::ExistingFile);

  auto* max_cmd = app.add_subcommand("maximal", "maximal function over a time grid for f read from CSV");
  max_cmd->add_option("--a", a, "dispersion exponents");
  max_cmd->add_option("--input", input, "input field CSV")->required()->check(CLI::ExistingFile);
  max_cmd->add_option("--mode", mode, "star (times in (0,1)) or doublestar (times in [-T,T])")
      ->check(CLI::IsMember({"star", "doublestar"}));
  max_cmd->add_option("--count", count, "candidate times per axis");
  max_cmd->add_option("--T", T, "doublestar time range");
  max_cmd->add_option("--tmin", tmin, "smallest nonzero candidate |t|");

  auto* check_cmd = app.add_subcommand("check", "oscillatory-integral and kernel bounds");
  check_cmd->add_option("which", which, "what to check")->required()->check(CLI::IsMember(keys(kCheck)));
  check_cmd->add_option("--a", a, "dispersion exponents to sweep");
  check_cmd->add_option("--alpha", alpha, "weight exponents (lemma2, vdc)");
  check_cmd->add_option("--s", s, "weight exponents (lemma1)");
  check_cmd->add_option("--eps", eps, "log exponents (lemma3)");

  auto* sharp_cmd = app.add_subcommand("sharpness", "necessity families and section-5 counterexamples");
  sharp_cmd->add_option("which", which, "family")->required()->check(CLI::IsMember(keys(kSharp)));
  sharp_cmd->add_option("--s", s, "Sobolev exponents (thm6, thm7)");
  sharp_cmd->add_option("--q", q, "Lebesgue exponent (thm4)");

  auto* conv_cmd = app.add_subcommand("converge", "rerun a scenario at doubled resolution and compare fits");
  conv_cmd->add_option("which", which, "scenario id or alias")->required();

  auto* probe_cmd = app.add_subcommand("probe", "informational probes of open cases");
  probe_cmd->add_option("which", which, "probe")->required()->check(CLI::IsMember(keys(kProbe)));

  auto* suite_cmd = app.add_subcommand("suite", "run every pass-graded scenario (or the config's list)");
  suite_cmd->add_flag("--emit-config", emit, "print the effective configuration and exit");

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    Session session(g);
    const json cli = parse_sets(g.sets);

    if (evolve_cmd->parsed() || max_cmd->parsed()) {
      if (g.out.empty()) throw ConfigError("--out <file.csv> is required");
      const auto f = read_field_csv(input);
      const std::size_t n = f.grid.dim();
      const auto law = law_for(a, n);
      if (evolve_cmd->parsed()) {
        write_field_csv(g.out, evolve(f, law, times_for(t, n)));
      } else {
        const auto grid = mode == "star" ? TimeSearchGrid::star(n, count) : TimeSearchGrid::doublestar(n, count, T, tmin);
        const auto m = maximal_field(f, law, grid);
        SpectralField out(f.grid, Representation::spatial);
        for (std::size_t p = 0; p < out.size(); ++p) out[p] = m.value[p];
        write_field_csv(g.out, out);
      }
      return kOk;
    }

    if (check_cmd->parsed()) {
      json o = json::object();
      if (which == "lemma1") {
        if (check_cmd->count("--a")) o["a"] = a;
        if (!s.empty()) o["s"] = s;
      } else if (which == "lemma2") {
        if (check_cmd->count("--a") || !alpha.empty()) {
          if (!check_cmd->count("--a") || alpha.empty()) throw ConfigError("lemma2 needs both --a and --alpha");
          o["cases"] = cartesian(a, alpha);
        }
      } else if (which == "lemma3") {
        if (check_cmd->count("--a")) o["a"] = a;
        if (!eps.empty()) o["eps"] = eps;
      } else if (which == "vdc") {
        if (alpha.size() > 1) throw ConfigError("vdc takes one --alpha");
        if (!alpha.empty()) o["alpha"] = alpha[0];
      }
      for (auto it = cli.begin(); it != cli.end(); ++it) o[it.key()] = it.value();
      return session.run({{kCheck.at(which), o}});
    }

    if (sharp_cmd->parsed()) {
      json o = json::object();
      if (!s.empty()) {
        if (which != "thm6" && which != "thm7") throw ConfigError("--s applies to thm6 and thm7");
        o["s"] = s;
      }
      if (!q.empty()) {
        if (which != "thm4" || q.size() != 1) throw ConfigError("--q takes one value and applies to thm4");
        o["q"] = q[0];
      }
      for (auto it = cli.begin(); it != cli.end(); ++it) o[it.key()] = it.value();
      return session.run({{kSharp.at(which), o}});
    }

    if (probe_cmd->parsed()) return session.run({{kProbe.at(which), cli}});

    if (conv_cmd->parsed()) {
      const auto id = resolve_id(which);
      const auto c = converge(id, cli, session.seed());
      for (std::size_t i = 0; i < c.labels.size(); ++i)
        std::printf("%-22s %-52s base=%-12s refined=%-12s tol=%s\n", id.c_str(), c.labels[i].c_str(),
                    format_double(c.base[i]).c_str(), format_double(c.refined[i]).c_str(),
                    format_double(c.tolerance[i]).c_str());
      std::printf("%-22s => %s\n", id.c_str(), c.under_resolved ? "under-resolved" : "resolved");
      return c.under_resolved ? kFail : kOk;
    }

    if (suite_cmd->parsed()) {
      if (emit) {
        std::cout << config_to_json(session.config()).dump(2) << '\n';
        return kOk;
      }
      std::vector<std::pair<std::string, json>> jobs;
      if (!session.config().scenarios.empty()) {
        for (const auto& e : session.config().scenarios) jobs.push_back({resolve_id(e.id), cli});
      } else {
        for (const auto& info : scenario_registry())
          if (info.graded) jobs.push_back({info.id, cli});
      }
      return session.run(jobs);
    }
  } catch (const AccuracyError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumerical;
  } catch (const AliasingError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumerical;
  } catch (const DivergenceError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumerical;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
