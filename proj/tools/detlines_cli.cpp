// Command-line front end: verification campaigns and ad-hoc scalar computations.
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "detlines/campaigns.hpp"

using namespace detlines;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct VerifyArgs {
  uint64_t seed = 1;
  std::optional<size_t> trials;
  std::optional<size_t> max_dim;
  std::string field = "gaussian";
  std::string grid_path;
  std::string out_path;
  bool corrupt_oracle = false;
};

struct ComputeArgs {
  std::string kind;
  std::string input_path;
  std::string grid_path;
  std::string out_path;
};

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot write " + out_path);
  out << j.dump(2) << "\n";
}

std::vector<Gaussian> load_grid(const std::string& path) {
  return grid_from_json(read_json_file(path));
}

int run_verify(const std::string& name, const VerifyArgs& a) {
  CampaignConfig cfg;
  cfg.seed = a.seed;
  cfg.trials = a.trials;
  cfg.max_dim = a.max_dim;
  cfg.gaussian = parse_kind(a.field) == ScalarKind::gaussian;
  cfg.corrupt_oracle = a.corrupt_oracle;
  if (!a.grid_path.empty()) cfg.grid = load_grid(a.grid_path);

  const Report rep = run_campaign(name, cfg);
  if (!a.out_path.empty()) emit(report_to_json(rep), a.out_path);
  std::cout << name << ": " << (rep.ok() ? "PASS" : "FAIL") << " trials=" << rep.trials
            << " checks=" << rep.checks << " failures=" << rep.failures.size()
            << " elapsed=" << rep.elapsed << "s\n";
  const size_t shown = std::min<size_t>(rep.failures.size(), 5);
  for (size_t k = 0; k < shown; ++k) {
    const auto& f = rep.failures[k];
    std::cerr << "  " << f.case_id << ": expected " << f.expected << ", got " << f.actual << "\n";
  }
  return rep.ok() ? kOk : kFailed;
}

int run_compute(const ComputeArgs& a) {
  const Json in = read_json_file(a.input_path);
  std::optional<std::vector<Gaussian>> grid;
  if (!a.grid_path.empty()) grid = load_grid(a.grid_path);
  emit(compute(a.kind, in, grid), a.out_path);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinant lines, torsion and perturbation isomorphisms in exact arithmetic"};
  app.require_subcommand(1);

  VerifyArgs verify;
  std::map<CLI::App*, std::string> campaigns;
  for (const auto& name : campaign_names()) {
    CLI::App* sub = app.add_subcommand("verify-" + name, "Run the " + name + " campaign");
    sub->add_option("--seed", verify.seed, "Master seed")->capture_default_str();
    sub->add_option("--trials", verify.trials, "Number of trials (campaign default when omitted)");
    sub->add_option("--max-dim", verify.max_dim, "Dimension bound (campaign default when omitted)");
    sub->add_option("--field", verify.field, "Scalar field of generated instances")
        ->check(CLI::IsMember({"rational", "gaussian"}))
        ->capture_default_str();
    sub->add_option("--grid", verify.grid_path, "JSON list of grid points")->check(CLI::ExistingFile);
    sub->add_option("--out", verify.out_path, "Write the report JSON here");
    sub->add_flag("--corrupt-oracle", verify.corrupt_oracle)->group("");  // test fixture
    campaigns[sub] = name;
  }

  ComputeArgs comp_args;
  CLI::App* comp = app.add_subcommand("compute", "Compute a scalar from an input file");
  comp->add_option("kind", comp_args.kind, "homology | torsion | perturbation | perturbation-function")
      ->required()
      ->check(CLI::IsMember(compute_kinds()));
  comp->add_option("input", comp_args.input_path, "Input JSON file")->required()->check(CLI::ExistingFile);
  comp->add_option("--grid", comp_args.grid_path, "JSON list of grid points")->check(CLI::ExistingFile);
  comp->add_option("--out", comp_args.out_path, "Write the result JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (const auto& [sub, name] : campaigns) {
      if (sub->parsed()) return run_verify(name, verify);
    }
    return run_compute(comp_args);
  } catch (const ReconstructionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
