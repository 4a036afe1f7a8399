// Acceptance run: the full suite twice with seed 7, then one line per criterion.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> scenarios;
};

const std::vector<Criterion> kCriteria = {
    {1, "evolution identities", {"UNITARITY", "SEMIGROUP", "SCALING_COV"}},
    {2, "weighted decay exponent beta", {"LEMMA2_DECAY"}},
    {3, "|xi|^{-s} weighted decay under C|x|^{s-1}", {"LEMMA1_DECAY"}},
    {4, "log-weighted majorant", {"LEMMA3_MAJORANT"}},
    {5, "N-family necessity exponents", {"THM4_NECESSITY"}},
    {6, "f_v family homogeneous norm slope", {"THM3_NECESSITY"}},
    {7, "TT* kernel, Lf ratio, box ratio, U*", {"TT_KERNEL_BOUND", "THM6_RATIO", "THM7_USTAR", "MAJORIZATION"}},
    {8, "T_t f -> f convergence", {"CONVERGENCE_COROLLARY"}},
    {9, "Riesz potential bounds", {"RIESZ_BOUND"}},
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_suite(const fs::path& out, const fs::path& log) {
  const std::string cmd =
      std::string(OSCIMAX_CLI) + " --seed 7 --out " + out.string() + " suite > " + log.string() + " 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

/// scenario id -> run directory
std::map<std::string, fs::path> run_dirs(const fs::path& root) {
  std::map<std::string, fs::path> m;
  if (!fs::exists(root)) return m;
  for (const auto& e : fs::directory_iterator(root)) {
    if (!e.is_directory()) continue;
    const std::string name = e.path().filename().string();
    const auto dash = name.find('-');  // ids have no dashes, stamps follow the first one
    if (dash == std::string::npos) continue;
    m[name.substr(0, dash)] = e.path();
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_runs");
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path a = root / "A", b = root / "B";
  const int rc_a = run_suite(a, root / "A.log");
  const int rc_b = run_suite(b, root / "B.log");
  std::printf("suite exit codes: %d, %d\n", rc_a, rc_b);

  const auto dirs_a = run_dirs(a), dirs_b = run_dirs(b);
  bool all = true;
  for (const auto& c : kCriteria) {
    bool ok = true;
    std::string why;
    for (const auto& id : c.scenarios) {
      auto it = dirs_a.find(id);
      if (it == dirs_a.end()) {
        ok = false;
        why += " " + id + ":missing";
        continue;
      }
      const json j = json::parse(slurp(it->second / "report.json"));
      if (j.contains("error")) {
        ok = false;
        why += " " + id + ":error";
      }
      for (const auto& r : j["reports"])
        if (r["verdict"] == "fail") {
          ok = false;
          why += " " + id + ":[" + r["label"].get<std::string>() + "]";
        }
      if (j["verdict"] != "pass") ok = false;
    }
    all = all && ok;
    std::printf("criterion %d %-45s %s%s\n", c.number, c.title.c_str(), ok ? "PASS" : "FAIL", why.c_str());
  }

  bool same = !dirs_a.empty() && dirs_a.size() == dirs_b.size();
  std::string why;
  for (const auto& [id, da] : dirs_a) {
    auto it = dirs_b.find(id);
    if (it == dirs_b.end()) {
      same = false;
      why += " " + id + ":missing";
      continue;
    }
    for (const char* f : {"report.json", "samples.csv"})
      if (slurp(da / f) != slurp(it->second / f)) {
        same = false;
        why += " " + id + "/" + f;
      }
  }
  all = all && same;
  std::printf("criterion 10 %-44s %s%s\n", "byte-identical reports for seed 7", same ? "PASS" : "FAIL", why.c_str());
  return all ? 0 : 1;
}
