// Runs every acceptance campaign at its default size and prints one line per
// criterion. Exit status is nonzero when any criterion fails.
#include <cstdio>
#include <string>
#include <vector>

#include "detlines/campaigns.hpp"

using namespace detlines;

namespace {

struct Criterion {
  std::string label;
  std::vector<std::string> campaigns;
  double time_limit;  // seconds, 0 when none
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"perturbation symmetry and transitivity", {"symmetry", "transitivity"}, 60},
      {"independence of pseudo-inverse and triple choices", {"independence"}, 60},
      {"torsion independent of complement choices", {"torsion-choices"}, 0},
      {"torsion commutes with perturbation", {"pertor"}, 120},
      {"explicit formula matches the general algorithm", {"special"}, 0},
      {"stabilization sign of torsion", {"dilzer"}, 0},
      {"perturbation scalar invariant under stabilization", {"dirsumper"}, 0},
      {"square-zero perturbations of the identity have determinant 1", {"trivnil"}, 0},
      {"determinant equality for twisted perturbations", {"detequ"}, 0},
      {"holomorphic perturbation functions", {"holo"}, 0},
      {"transition functions and cocycle identity", {"transition"}, 0},
      {"torsion section constant and equal to its sign", {"torsion-section"}, 0},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    bool ok = true;
    double elapsed = 0;
    size_t trials = 0, checks = 0, failures = 0;
    std::string note;
    for (const std::string& name : c.campaigns) {
      try {
        const Report r = run_campaign(name, CampaignConfig{});
        trials += r.trials;
        checks += r.checks;
        failures += r.failures.size();
        elapsed += r.elapsed;
        if (!r.ok()) {
          ok = false;
          if (note.empty()) note = " first=" + r.failures.front().case_id;
        }
      } catch (const std::exception& e) {
        ok = false;
        note = std::string(" error=") + e.what();
      }
    }
    if (c.time_limit > 0 && elapsed >= c.time_limit) {
      ok = false;
      note += " over time limit";
    }
    if (!ok) ++failed;
    std::printf("%s: %s trials=%zu checks=%zu failures=%zu elapsed=%.2fs%s\n", c.label.c_str(),
                ok ? "PASS" : "FAIL", trials, checks, failures, elapsed, note.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
