#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detlines/json_io.hpp"

namespace detlines {

struct FailureRecord {
  std::string case_id;
  Json inputs;
  std::string expected;
  std::string actual;
};

struct Report {
  std::string campaign;
  uint64_t seed = 0;
  size_t trials = 0;
  size_t max_dim = 0;
  std::string field = "gaussian";
  size_t checks = 0;       // exact comparisons performed
  double elapsed = 0.0;    // seconds
  std::vector<FailureRecord> failures;  // sorted by case id

  bool ok() const { return failures.empty(); }
};

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);

struct CampaignConfig {
  uint64_t seed = 1;
  std::optional<size_t> trials;    // campaign default when absent
  std::optional<size_t> max_dim;   // campaign default when absent
  bool gaussian = true;
  std::optional<std::vector<Gaussian>> grid;  // holomorphic campaigns only
  // Test fixture: shifts every expected value by one so each check fails.
  bool corrupt_oracle = false;
};

// symmetry, transitivity, independence, torsion-choices, pertor, special,
// dilzer, dirsumper, trivnil, detequ, holo, transition, torsion-section
const std::vector<std::string>& campaign_names();
size_t default_trials(const std::string& name);
size_t default_max_dim(const std::string& name);

// Trial t uses the sub-seed derive_seed(seed, t). Throws ConfigError for an
// unknown name or an unusable configuration.
Report run_campaign(const std::string& name, const CampaignConfig& cfg);

// Ad-hoc scalars from JSON input:
//   homology               complex -> homology dims, Euler characteristic, folded dims
//   torsion                {"d1", "d2", "map"} -> torsion scalar of the cone triangle
//   perturbation           {"d", "delta"} on the same chains -> P(Delta, D)
//   perturbation-function  {"d", "delta"} polynomial families -> rational function
const std::vector<std::string>& compute_kinds();
Json compute(const std::string& kind, const Json& input,
             const std::optional<std::vector<Gaussian>>& grid = std::nullopt);

}  // namespace detlines
