#include "doctest.h"

#include <string>

#include "detlines/campaigns.hpp"
#include "detlines/generators.hpp"
#include "detlines/json_io.hpp"

using namespace detlines;

namespace {

std::string data_path(const std::string& name) { return std::string(DETLINES_TEST_DATA) + "/" + name; }

Json without_elapsed(const Report& r) {
  Json j = report_to_json(r);
  j.erase("elapsed");
  return j;
}

}  // namespace

TEST_CASE("generators are deterministic") {
  GenProfile p;
  p.max_dim = 4;
  p.seed = 42;
  CHECK(complex_to_json(gen_random_complex(p)) == complex_to_json(gen_random_complex(p)));
  const Z2Complex a = gen_random_z2(7, 3, 2), b = gen_random_z2(7, 3, 2);
  CHECK(a.dp == b.dp);
  CHECK(a.dm == b.dm);
}

TEST_CASE("generator honours requested dimensions and homology") {
  GenProfile p;
  p.lo = 0;
  p.hi = 1;
  p.dims = {{0, 2}, {1, 1}};
  p.homology = {{0, 1}, {1, 0}};
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    p.seed = seed;
    const ChainComplex d = gen_random_complex(p);
    CHECK_NOTHROW(validate_complex(d));
    const HomologyData h = homology(d);
    CHECK(h.degrees.at(0).dim() == 1);
    CHECK(h.degrees.at(1).dim() == 0);
  }
  p.homology = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(gen_random_complex(p), DimensionError);

  const GenProfile e = exact_profile(3, 0, 3, 4);
  for (const auto& [j, piece] : homology(gen_random_complex(e)).degrees) CHECK(piece.dim() == 0);

  GenProfile empty;
  empty.dims = {{0, 0}, {1, 0}, {2, 0}};
  CHECK(gen_random_complex(empty).space.total() == 0);

  const Z2Complex z = gen_random_z2(5, 3, 3, true, std::pair<size_t, size_t>{1, 1});
  CHECK(homology(z).plus.dim() == 1);
  CHECK(homology(z).minus.dim() == 1);
}

TEST_CASE("chain map generator") {
  GenProfile p;
  p.max_dim = 3;
  p.seed = 11;
  const ChainComplex d1 = gen_random_complex(p);
  p.seed = 12;
  const ChainComplex d2 = gen_random_complex(p);
  const ChainMap zero = gen_chain_map(0, d1, d2);
  for (const auto& [j, m] : zero.comps) CHECK(m.is_zero());
  const ChainMap a = gen_chain_map(5, d1, d2);
  CHECK_NOTHROW(validate_chain_map(d1, d2, a));

  // chain maps F[0] -> F[0]: one parameter; F[0] -> F[1]: none
  ChainComplex x, y;
  x.space.dims[0] = 1;
  y.space.dims[1] = 1;
  CHECK(chain_map_space_dim(x, x) == 1);
  CHECK(chain_map_space_dim(x, y) == 0);
}

TEST_CASE("json round trips") {
  GenProfile p;
  p.max_dim = 3;
  p.seed = 9;
  const ChainComplex d = gen_random_complex(p);
  const Json j = complex_to_json(d);
  CHECK(complex_to_json(complex_from_json(j)) == j);

  const ChainMap a = gen_chain_map(3, d, d);
  CHECK(chain_map_to_json(chain_map_from_json(chain_map_to_json(a), d, d)) == chain_map_to_json(a));

  const Z2Complex z = gen_random_z2(4, 2, 3);
  const Z2Complex z2 = z2_from_json(z2_to_json(z));
  CHECK(z2.dp == z.dp);
  CHECK(z2.dm == z.dm);

  const PolyFamilyData fam = gen_poly_family(p, 2);
  CHECK(family_to_json(family_from_json(family_to_json(fam.family))) == family_to_json(fam.family));

  const std::vector<Gaussian> grid = default_grid(12);
  CHECK(grid_from_json(grid_to_json(grid)) == grid);
}

TEST_CASE("json input errors") {
  CHECK_THROWS_AS(complex_from_json(read_json_file(data_path("bad_complex.json"))), ValidationError);
  CHECK_THROWS_AS(grid_from_json(read_json_file(data_path("duplicate_grid.json"))), ParseError);
  CHECK_THROWS_AS(read_json_file(data_path("missing.json")), ParseError);
  CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"degrees": {"x": 1}})")), ParseError);
  CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"degrees": {"0": 1, "1": 1}, "differentials": {"1": [["1", "2"]]}})")),
                  ParseError);
  CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"field": "rational", "degrees": {"0": 1, "1": 1}, "differentials": {"1": [["i"]]}})")),
                  ParseError);
}

TEST_CASE("reports round trip") {
  Report r;
  r.campaign = "symmetry";
  r.seed = 3;
  r.trials = 2;
  r.max_dim = 4;
  r.checks = 2;
  r.failures.push_back({"trial-00001", Json{{"trial_seed", 9}}, "1", "2"});
  const Json j = report_to_json(r);
  CHECK(j.at("ok") == false);
  CHECK(report_to_json(report_from_json(j)) == j);
}

TEST_CASE("campaign runner") {
  CHECK(campaign_names().size() == 13);
  CampaignConfig cfg;
  cfg.trials = 5;
  CHECK_THROWS_AS(run_campaign("no-such-campaign", cfg), ConfigError);

  const Report a = run_campaign("symmetry", cfg), b = run_campaign("symmetry", cfg);
  CHECK(a.ok());
  CHECK(a.trials == 5);
  CHECK(a.checks == 5);
  CHECK(without_elapsed(a) == without_elapsed(b));

  cfg.corrupt_oracle = true;
  const Report bad = run_campaign("symmetry", cfg);
  CHECK(bad.failures.size() == 5);
  CHECK(bad.failures.front().case_id == "trial-00000");
  CHECK(bad.failures.front().inputs.contains("d1"));

  CampaignConfig short_grid;
  short_grid.trials = 1;
  short_grid.grid = default_grid(3);
  CHECK_THROWS_AS(run_campaign("torsion-section", short_grid), ConfigError);

  CampaignConfig rational;
  rational.trials = 5;
  rational.gaussian = false;
  const Report r = run_campaign("transitivity", rational);
  CHECK(r.ok());
  CHECK(r.field == "rational");
}

TEST_CASE("compute") {
  CHECK(compute("torsion", read_json_file(data_path("triangle.json"))).at("scalar") == "-1");
  CHECK(compute("perturbation", read_json_file(data_path("pair.json"))).at("scalar") == "6");
  CHECK(compute("perturbation-function", read_json_file(data_path("worked_family.json"))).at("function") ==
        "1 + z");
  const Json h = compute("homology", read_json_file(data_path("complex.json")));
  CHECK(h.at("homology").at("0") == 1);
  CHECK(h.at("homology").at("1") == 0);
  CHECK(h.at("euler_characteristic") == 1);
  CHECK_THROWS_AS(compute("volume", Json::object()), ConfigError);
  CHECK_THROWS_AS(compute("torsion", Json::object()), ParseError);
}
