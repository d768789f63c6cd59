#include "detlines/campaigns.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>

#include "detlines/generators.hpp"
#include "detlines/perturbation.hpp"
#include "detlines/torsion.hpp"

namespace detlines {

namespace {

struct Context {
  size_t max_dim = 0;
  bool gaussian = true;
  ScalarKind field = ScalarKind::gaussian;
  std::vector<Gaussian> grid;   // holomorphic campaigns; empty means campaign default
  std::vector<Gaussian> grid2;  // second grid for grid-independence
};

// Collects the checks of one trial.
class Trial {
 public:
  Trial(std::string id, bool corrupt, std::vector<FailureRecord>& out, size_t& checks)
      : id_(std::move(id)), corrupt_(corrupt), out_(out), checks_(checks) {}

  void set_inputs(Json j) { inputs_ = std::move(j); }
  const Json& inputs() const { return inputs_; }

  void check(const std::string& sub, Gaussian expected, const Gaussian& actual) {
    if (corrupt_) expected += Gaussian(1);
    record(sub, expected == actual, expected.str(), actual.str());
  }
  void check(const std::string& sub, RatFunc expected, const RatFunc& actual) {
    if (corrupt_) expected += RatFunc(1);
    record(sub, expected == actual, expected.str(), actual.str());
  }
  void check_true(const std::string& sub, bool ok, const std::string& expected,
                  const std::string& actual) {
    record(sub, ok != corrupt_, expected, actual);
  }
  void error(const std::exception& e) {
    ++checks_;
    out_.push_back({id_, inputs_, "no error", std::string("error: ") + e.what()});
  }

 private:
  void record(const std::string& sub, bool ok, std::string expected, std::string actual) {
    ++checks_;
    if (ok) return;
    out_.push_back({sub.empty() ? id_ : id_ + "/" + sub, inputs_, std::move(expected),
                    std::move(actual)});
  }

  std::string id_;
  bool corrupt_;
  std::vector<FailureRecord>& out_;
  size_t& checks_;
  Json inputs_ = Json::object();
};

using TrialFn = std::function<void(const Context&, uint64_t, Trial&)>;

Json seed_inputs(uint64_t sub) {
  Json j = Json::object();
  j["trial_seed"] = sub;
  return j;
}

size_t pick_dim(Rng& rng, size_t max_dim) {
  return static_cast<size_t>(rng.uniform(0, static_cast<long>(max_dim)));
}

struct Triangle {
  ChainComplex d1, d2;
  ChainMap a;
};

// Degrees 0..2, each dimension at most max_dim.
Triangle random_triangle(uint64_t sub, uint64_t stream, const Context& c) {
  GenProfile p;
  p.lo = 0;
  p.hi = 2;
  p.max_dim = c.max_dim;
  p.gaussian = c.gaussian;
  p.seed = derive_seed(sub, stream);
  Triangle t;
  t.d1 = gen_random_complex(p);
  p.seed = derive_seed(sub, stream + 1);
  t.d2 = gen_random_complex(p);
  t.a = gen_chain_map(derive_seed(sub, stream + 2), t.d1, t.d2, c.gaussian);
  validate_complex(t.d1);
  validate_complex(t.d2);
  validate_chain_map(t.d1, t.d2, t.a);
  return t;
}

void add_triangle(Json& j, const std::string& prefix, const Triangle& t, ScalarKind field) {
  j[prefix + "1"] = complex_to_json(t.d1, field);
  j[prefix + "2"] = complex_to_json(t.d2, field);
  j[prefix + "_map"] = chain_map_to_json(t.a, field);
}

Z2Complex checked_z2(uint64_t seed, size_t np, size_t nm, bool gaussian) {
  Z2Complex d = gen_random_z2(seed, np, nm, gaussian);
  validate_z2(d);
  return d;
}

Gaussian pscalar(const Z2Complex& from, const Z2Complex& to) {
  return complex_perturbation_scalar(from, to).scalar;
}

void run_symmetry(const Context& c, uint64_t sub, Trial& tr) {
  Rng rng(sub);
  const size_t np = pick_dim(rng, c.max_dim), nm = pick_dim(rng, c.max_dim);
  const Z2Complex d1 = checked_z2(derive_seed(sub, 1), np, nm, c.gaussian);
  const Z2Complex d2 = checked_z2(derive_seed(sub, 2), np, nm, c.gaussian);
  Json in = seed_inputs(sub);
  in["d1"] = z2_to_json(d1, c.field);
  in["d2"] = z2_to_json(d2, c.field);
  tr.set_inputs(std::move(in));
  // P(D2, D1) against P(D1, D2)^{-1}
  tr.check("", pscalar(d2, d1).inv(), pscalar(d1, d2));
}

void run_transitivity(const Context& c, uint64_t sub, Trial& tr) {
  Rng rng(sub);
  const size_t np = pick_dim(rng, c.max_dim), nm = pick_dim(rng, c.max_dim);
  const Z2Complex d1 = checked_z2(derive_seed(sub, 1), np, nm, c.gaussian);
  const Z2Complex d2 = checked_z2(derive_seed(sub, 2), np, nm, c.gaussian);
  const Z2Complex d3 = checked_z2(derive_seed(sub, 3), np, nm, c.gaussian);
  Json in = seed_inputs(sub);
  in["d1"] = z2_to_json(d1, c.field);
  in["d2"] = z2_to_json(d2, c.field);
  in["d3"] = z2_to_json(d3, c.field);
  tr.set_inputs(std::move(in));
  tr.check("", pscalar(d1, d3), pscalar(d2, d3) * pscalar(d1, d2));
}

void run_independence(const Context& c, uint64_t sub, Trial& tr) {
  Rng rng(sub);
  const size_t np = pick_dim(rng, c.max_dim), nm = pick_dim(rng, c.max_dim);
  const Z2Complex d1 = checked_z2(derive_seed(sub, 1), np, nm, c.gaussian);
  const Z2Complex d2 = checked_z2(derive_seed(sub, 2), np, nm, c.gaussian);
  Json in = seed_inputs(sub);
  in["d1"] = z2_to_json(d1, c.field);
  in["d2"] = z2_to_json(d2, c.field);
  tr.set_inputs(std::move(in));
  const Gaussian reference = pscalar(d1, d2);
  const Z2Homology h1 = homology(d1), h2 = homology(d2);
  for (uint64_t k = 0; k < 5; ++k) {
    Rng choice(derive_seed(sub, 100 + k));
    ComplexPerturbationOptions o;
    o.rng = &choice;
    o.gaussian = c.gaussian;
    // at index zero both triple constructions apply; alternate between them
    if (index(d1) == 0) o.branch = (k % 2) ? Branch::nonpositive : Branch::nonnegative;
    tr.check("choice-" + std::to_string(k), reference,
             complex_perturbation_scalar(d1, d2, h1, h2, o).scalar);
  }
}

void run_torsion_choices(const Context& c, uint64_t sub, Trial& tr) {
  const Triangle t = random_triangle(sub, 1, c);
  Json in = seed_inputs(sub);
  add_triangle(in, "d", t, c.field);
  tr.set_inputs(std::move(in));
  const TriangleData td = triangle_data(t.d1, t.d2, t.a);
  const Gaussian canonical = torsion_scalar(td.hexagon).scalar;
  for (uint64_t k = 0; k < 3; ++k) {
    Rng choice(derive_seed(sub, 50 + k));
    tr.check("choice-" + std::to_string(k), canonical,
             torsion_scalar(td.hexagon, random_choices(td.hexagon, choice, c.gaussian)).scalar);
  }
}

void run_pertor(const Context& c, uint64_t sub, Trial& tr) {
  const Triangle d = random_triangle(sub, 1, c);
  Triangle e;
  e.d1 = gen_on_chains(d.d1.space, derive_seed(sub, 4), c.gaussian);
  e.d2 = gen_on_chains(d.d2.space, derive_seed(sub, 5), c.gaussian);
  e.a = gen_chain_map(derive_seed(sub, 6), e.d1, e.d2, c.gaussian);
  validate_complex(e.d1);
  validate_complex(e.d2);
  validate_chain_map(e.d1, e.d2, e.a);
  Json in = seed_inputs(sub);
  add_triangle(in, "d", d, c.field);
  add_triangle(in, "delta", e, c.field);
  tr.set_inputs(std::move(in));

  const TriangleData td = triangle_data(d.d1, d.d2, d.a);
  const TriangleData te = triangle_data(e.d1, e.d2, e.a);
  const Gaussian t_d = torsion_scalar(td.hexagon).scalar;
  const Gaussian t_e = torsion_scalar(te.hexagon).scalar;
  const Gaussian p1 = pscalar(td.triangle.d1, te.triangle.d1);
  const Gaussian p2 = pscalar(td.triangle.d2, te.triangle.d2);
  const Gaussian pc = pscalar(td.triangle.cone, te.triangle.cone);
  // both paths |D2| -> |Delta1| (x) |C^B|
  tr.check("", t_e * p2, p1 * pc * t_d);
}

void run_special(const Context& c, uint64_t sub, Trial& tr) {
  Rng rng(sub);
  const size_t np = pick_dim(rng, c.max_dim), nm = pick_dim(rng, c.max_dim);
  const Z2Complex d = checked_z2(derive_seed(sub, 1), np, nm, c.gaussian);
  Json in = seed_inputs(sub);
  in["d"] = z2_to_json(d, c.field);
  tr.set_inputs(std::move(in));
  for (bool full : {false, true}) {
    Rng inst_rng(derive_seed(sub, 20 + (full ? 1 : 0)));
    SpecialOptions o;
    o.full = full;
    o.gaussian = c.gaussian;
    const SpecialInstance si = make_special_instance(d, inst_rng, o);
    validate_special_instance(si);
    const Gaussian general = pscalar(si.stabilized(), si.perturbed());
    const std::string tag = full ? "exact" : "general";
    tr.check(tag, general, special_perturbation_scalar(si).scalar);
    if (full) tr.check("exact-wedge", Gaussian(1), general * special_source_wedge(si));
  }
}

void run_dilzer(const Context& c, uint64_t sub, Trial& tr) {
  const Triangle t = random_triangle(sub, 1, c);
  const TriangleData td = triangle_data(t.d1, t.d2, t.a);
  // the sign only holds when each summand has index -Ind(D^k), i.e. the
  // stabilized complexes have index zero
  Rng rng(derive_seed(sub, 70));
  auto sizes = [&](long ind) {
    const long lo = std::max<long>(0, -ind);
    const long plus = rng.uniform(lo, lo + 2);
    return std::pair<size_t, size_t>(static_cast<size_t>(plus), static_cast<size_t>(plus + ind));
  };
  const auto [np, nm] = sizes(index(td.triangle.d1));
  const auto [mp, mm] = sizes(index(td.triangle.d2));
  Json in = seed_inputs(sub);
  add_triangle(in, "d", t, c.field);
  in["stabilization"] = {{"n_plus", np}, {"n_minus", nm}, {"m_plus", mp}, {"m_minus", mm}};
  tr.set_inputs(std::move(in));
  const Gaussian base = torsion_scalar(td.hexagon).scalar;
  const Gaussian stabilized = torsion_scalar(stabilize_hexagon(td.hexagon, np, nm, mp, mm)).scalar;
  const size_t exponent = nm + np * (mp + mm);
  tr.check("", Gaussian(exponent % 2 ? -1 : 1), stabilized / base);
}

void run_dirsumper(const Context& c, uint64_t sub, Trial& tr) {
  Rng rng(sub);
  const size_t np = pick_dim(rng, c.max_dim), nm = pick_dim(rng, c.max_dim);
  const Z2Complex d = checked_z2(derive_seed(sub, 1), np, nm, c.gaussian);
  const Z2Complex delta = checked_z2(derive_seed(sub, 2), np, nm, c.gaussian);
  // trivial summand of index -ind(D), so both stabilized complexes have index zero
  const long ind = index(d);
  const long lo = std::max<long>(0, -ind);
  const size_t cp = static_cast<size_t>(rng.uniform(lo, lo + 2));
  const size_t cm = static_cast<size_t>(static_cast<long>(cp) + ind);
  Json in = seed_inputs(sub);
  in["d"] = z2_to_json(d, c.field);
  in["delta"] = z2_to_json(delta, c.field);
  in["stabilization"] = {{"plus", cp}, {"minus", cm}};
  tr.set_inputs(std::move(in));
  const Stabilized sd = stabilize(d, cp, cm), se = stabilize(delta, cp, cm);
  tr.check("", pscalar(d, delta), pscalar(sd.complex, se.complex) * sd.embedding / se.embedding);
}

void run_trivnil(const Context& c, uint64_t sub, Trial& tr) {
  Rng rng(sub);
  const size_t n = pick_dim(rng, c.max_dim);
  const Mat a = random_square_zero(rng, n, c.gaussian), b = random_square_zero(rng, n, c.gaussian);
  Json in = seed_inputs(sub);
  in["a"] = matrix_to_json(a);
  in["b"] = matrix_to_json(b);
  tr.set_inputs(std::move(in));
  if (!(a * a).is_zero() || !(b * b).is_zero()) throw ValidationError("generated map does not square to zero");
  const Mat one = Mat::identity(n);
  tr.check("", Gaussian(1), det_class_det((one + a) * (one + b)));
}

void run_detequ(const Context& c, uint64_t sub, Trial& tr) {
  Rng rng(sub);
  const size_t w = pick_dim(rng, c.max_dim);
  const size_t v = pick_dim(rng, w);
  const DetEquInstance d = make_detequ_instance(rng, v, w, c.gaussian);
  Json in = seed_inputs(sub);
  in["t"] = matrix_to_json(d.t);
  in["s"] = matrix_to_json(d.s);
  in["omega"] = matrix_to_json(d.omega);
  in["n"] = matrix_to_json(d.n_map);
  tr.set_inputs(std::move(in));
  validate_detequ_instance(d);
  const DetEquSides sides = detequ_sides(d);
  tr.check("", sides.det_omega_sigma, sides.det_sigma_tilde);
}

HoloFamily worked_family(bool perturbed) {
  HoloFamily f;
  f.space.dims = {{-1, 1}, {0, 1}};
  const Polynomial entry = perturbed ? Polynomial(std::vector<Gaussian>{Gaussian(1), Gaussian(1)})
                                     : Polynomial(Gaussian(1));
  f.diffs[0] = PolyMat{{entry}};
  return f;
}

void check_held_out(Trial& tr, const std::string& tag, const FunctionResult& r, size_t need) {
  tr.check_true(tag + "/held-out-count", r.held_out.size() >= need,
                ">= " + std::to_string(need), std::to_string(r.held_out.size()));
  for (size_t k = 0; k < r.held_out.size(); ++k) {
    const Sample& s = r.held_out[k];
    tr.check(tag + "/held-out-" + std::to_string(k), s.value, r.f.eval(s.point));
  }
}

void run_holo(const Context& c, uint64_t sub, Trial& tr) {
  GenProfile p = exact_profile(derive_seed(sub, 1), 0, 3, c.max_dim, c.gaussian);
  GenProfile q = p;
  q.seed = derive_seed(sub, 2);
  const PolyFamilyData f1 = gen_poly_family(p, 2, true), f2 = gen_poly_family(q, 2, true);
  Json in = seed_inputs(sub);
  in["d"] = family_to_json(f1.family);
  in["delta"] = family_to_json(f2.family);
  tr.set_inputs(std::move(in));
  validate_family(f1.family);
  validate_family(f2.family);
  const std::vector<Gaussian> grid = c.grid.empty() ? default_grid(200) : c.grid;
  const FunctionResult r =
      perturbation_function(f1.family, f2.family, 0, 0, grid, std::nullopt, 10, GridPolicy::exclude);
  check_held_out(tr, "function", r, 10);
}

void run_holo_worked(const Context& c, Trial& tr) {
  const HoloFamily d = worked_family(false), delta = worked_family(true);
  Json in = Json::object();
  in["d"] = family_to_json(d);
  in["delta"] = family_to_json(delta);
  tr.set_inputs(std::move(in));
  const std::vector<Gaussian> grid = c.grid.empty() ? default_grid(40) : c.grid;
  const FunctionResult r = perturbation_function(d, delta, 0, 0, grid, std::nullopt, 10,
                                                 GridPolicy::exclude);
  tr.check("", RatFunc(Polynomial(std::vector<Gaussian>{Gaussian(1), Gaussian(1)})), r.f);
  check_held_out(tr, "function", r, 10);
}

void run_transition(const Context& c, uint64_t sub, Trial& tr) {
  GenProfile p;
  p.lo = 0;
  p.hi = 2;
  p.max_dim = c.max_dim;
  p.gaussian = c.gaussian;
  p.seed = derive_seed(sub, 1);
  const PolyFamilyData fam = gen_poly_family(p, 2);
  Json in = seed_inputs(sub);
  in["family"] = family_to_json(fam.family);
  tr.set_inputs(std::move(in));
  validate_family(fam.family);
  const std::vector<Gaussian> grid = c.grid.empty() ? default_grid(150) : c.grid;

  Rng r2(derive_seed(sub, 2)), r3(derive_seed(sub, 3));
  TrivializationOptions o1, o2, o3;
  o1.gaussian = o2.gaussian = o3.gaussian = c.gaussian;
  o1.policy = o2.policy = o3.policy = GridPolicy::exclude;
  o2.rng = &r2;
  o2.extra = 1;
  o3.rng = &r3;
  const LocalTrivialization t1 = build_local_trivialization(fam.family, Gaussian(0), grid, o1);
  const LocalTrivialization t2 = build_local_trivialization(fam.family, Gaussian(1), grid, o2);
  const LocalTrivialization t3 =
      build_local_trivialization(fam.family, Gaussian(Rational(0), Rational(1)), grid, o3);

  // transition_function rejects a result that vanishes somewhere on the grid
  const FunctionResult f12 = transition_function(fam.family, t1, t2, grid);
  const FunctionResult f23 = transition_function(fam.family, t2, t3, grid);
  const FunctionResult f13 = transition_function(fam.family, t1, t3, grid);
  check_held_out(tr, "t12", f12, 10);
  check_held_out(tr, "t23", f23, 10);
  check_held_out(tr, "t13", f13, 10);
  tr.check("cocycle", f13.f, f23.f * f12.f);
}

void run_torsion_section(const Context& c, uint64_t sub, Trial& tr) {
  GenProfile p;
  p.lo = 0;
  p.hi = 2;
  p.max_dim = c.max_dim;
  p.gaussian = c.gaussian;
  p.seed = derive_seed(sub, 1);
  const PolyFamilyData fa = gen_poly_family(p, 2);
  p.seed = derive_seed(sub, 2);
  const PolyFamilyData fb = gen_poly_family(p, 2);
  const PolyChainMap a = gen_poly_chain_map(derive_seed(sub, 3), fa, fb, c.gaussian);
  Json in = seed_inputs(sub);
  in["d"] = family_to_json(fa.family);
  in["delta"] = family_to_json(fb.family);
  in["map"] = poly_map_to_json(a);
  tr.set_inputs(std::move(in));
  validate_family(fa.family);
  validate_family(fb.family);
  validate_family_map(fa.family, fb.family, a);

  std::vector<Gaussian> both = c.grid;
  both.insert(both.end(), c.grid2.begin(), c.grid2.end());
  TrivializationOptions o;
  o.gaussian = c.gaussian;
  const TrivializationPair pair = cone_trivialization(fa.family, fb.family, a, Gaussian(0), both, o);
  const Gaussian first = torsion_section_constant(fa.family, fb.family, a, pair, c.grid);
  const Gaussian second = torsion_section_constant(fa.family, fb.family, a, pair, c.grid2);
  tr.check("sign", Gaussian(torsion_section_sign(pair)), first);
  tr.check("grid-independence", first, second);
}

struct CampaignSpec {
  size_t trials;
  size_t max_dim;
  TrialFn fn;
};

const std::map<std::string, CampaignSpec>& registry() {
  static const std::map<std::string, CampaignSpec> r = {
      {"symmetry", {200, 6, run_symmetry}},
      {"transitivity", {200, 6, run_transitivity}},
      {"independence", {50, 6, run_independence}},
      {"torsion-choices", {100, 3, run_torsion_choices}},
      {"pertor", {100, 5, run_pertor}},
      {"special", {50, 4, run_special}},
      {"dilzer", {50, 3, run_dilzer}},
      {"dirsumper", {50, 4, run_dirsumper}},
      {"trivnil", {100, 6, run_trivnil}},
      {"detequ", {50, 6, run_detequ}},
      {"holo", {20, 4, run_holo}},
      {"transition", {10, 3, run_transition}},
      {"torsion-section", {10, 3, run_torsion_section}},
  };
  return r;
}

const CampaignSpec& lookup(const std::string& name) {
  const auto& r = registry();
  auto it = r.find(name);
  if (it == r.end()) throw ConfigError("unknown campaign \"" + name + "\"");
  return it->second;
}

std::string case_id(size_t t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "trial-%05zu", t);
  return buf;
}

bool contains(const std::vector<Gaussian>& pts, const Gaussian& z) {
  return std::find(pts.begin(), pts.end(), z) != pts.end();
}

Json compute_homology(const Json& in) {
  const ChainComplex d = complex_from_json(in);
  Json dims = Json::object();
  for (const auto& [j, piece] : homology(d).degrees) dims[std::to_string(j)] = piece.dim();
  const Z2Homology h = homology(fold_z2(d));
  return {{"homology", dims},
          {"euler_characteristic", euler_characteristic(d)},
          {"folded", {{"plus", h.plus.dim()}, {"minus", h.minus.dim()}}}};
}

Json compute_torsion(const Json& in) {
  const ChainComplex d1 = complex_from_json(in.at("d1"));
  const ChainComplex d2 = complex_from_json(in.at("d2"));
  const ChainMap a = chain_map_from_json(in.at("map"), d1, d2);
  const LineIso t = triangle_torsion(d1, d2, a);
  return {{"scalar", t.scalar.str()}, {"source", t.source}, {"target", t.target}};
}

Json compute_perturbation(const Json& in) {
  const ChainComplex d = complex_from_json(in.at("d"));
  const ChainComplex delta = complex_from_json(in.at("delta"));
  if (!(d.space == delta.space)) throw ParseError("\"d\" and \"delta\" must live on the same chains");
  const LineIso p = complex_perturbation_scalar(fold_z2(d), fold_z2(delta));
  return {{"scalar", p.scalar.str()}, {"source", p.source}, {"target", p.target}};
}

Json compute_perturbation_function(const Json& in, const std::vector<Gaussian>& grid) {
  const HoloFamily d = family_from_json(in.at("d"));
  const HoloFamily delta = family_from_json(in.at("delta"));
  if (!(d.space == delta.space)) throw ParseError("\"d\" and \"delta\" must live on the same chains");
  const FunctionResult r =
      perturbation_function(d, delta, 0, 0, grid, std::nullopt, 10, GridPolicy::exclude);
  return {{"function", r.f.str()},
          {"numerator", r.f.num().str()},
          {"denominator", r.f.den().str()},
          {"samples", r.samples.size()},
          {"held_out", r.held_out.size()},
          {"excluded", grid_to_json(r.excluded)}};
}

}  // namespace

const std::vector<std::string>& compute_kinds() {
  static const std::vector<std::string> kinds = {"homology", "torsion", "perturbation",
                                                 "perturbation-function"};
  return kinds;
}

Json compute(const std::string& kind, const Json& input,
             const std::optional<std::vector<Gaussian>>& grid) {
  try {
    if (kind == "homology") return compute_homology(input);
    if (kind == "torsion") return compute_torsion(input);
    if (kind == "perturbation") return compute_perturbation(input);
    if (kind == "perturbation-function") {
      return compute_perturbation_function(input, grid ? *grid : default_grid(200));
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad input: ") + e.what());
  }
  throw ConfigError("unknown computation \"" + kind + "\"");
}

const std::vector<std::string>& campaign_names() {
  static const std::vector<std::string> names = {
      "symmetry", "transitivity", "independence", "torsion-choices", "pertor",
      "special",  "dilzer",       "dirsumper",    "trivnil",         "detequ",
      "holo",     "transition",   "torsion-section"};
  return names;
}

size_t default_trials(const std::string& name) { return lookup(name).trials; }
size_t default_max_dim(const std::string& name) { return lookup(name).max_dim; }

Report run_campaign(const std::string& name, const CampaignConfig& cfg) {
  const CampaignSpec& spec = lookup(name);
  Context ctx;
  ctx.max_dim = cfg.max_dim.value_or(spec.max_dim);
  ctx.gaussian = cfg.gaussian;
  ctx.field = cfg.gaussian ? ScalarKind::gaussian : ScalarKind::rational;
  if (cfg.grid) ctx.grid = *cfg.grid;
  if (name == "holo" && ctx.max_dim < 2) throw ConfigError("holo needs --max-dim >= 2");
  if (name == "torsion-section") {
    if (ctx.grid.empty()) ctx.grid = default_grid(15);
    if (ctx.grid.size() < 15) {
      throw ConfigError("torsion-section needs at least 15 grid points, got " +
                        std::to_string(ctx.grid.size()));
    }
    // disjoint second grid of the same size
    const std::vector<Gaussian> pool = default_grid(3 * ctx.grid.size());
    for (const auto& z : pool) {
      if (ctx.grid2.size() == ctx.grid.size()) break;
      if (!contains(ctx.grid, z)) ctx.grid2.push_back(z);
    }
  }

  Report rep;
  rep.campaign = name;
  rep.seed = cfg.seed;
  rep.trials = cfg.trials.value_or(spec.trials);
  rep.max_dim = ctx.max_dim;
  rep.field = kind_name(ctx.field);

  const auto start = std::chrono::steady_clock::now();
  for (size_t t = 0; t < rep.trials; ++t) {
    const uint64_t sub = derive_seed(cfg.seed, t);
    Trial tr(case_id(t), cfg.corrupt_oracle, rep.failures, rep.checks);
    tr.set_inputs(seed_inputs(sub));
    try {
      spec.fn(ctx, sub, tr);
    } catch (const std::exception& e) {
      tr.error(e);
    }
  }
  if (name == "holo") {
    Trial tr("worked-example", cfg.corrupt_oracle, rep.failures, rep.checks);
    try {
      run_holo_worked(ctx, tr);
    } catch (const std::exception& e) {
      tr.error(e);
    }
  }
  rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::stable_sort(rep.failures.begin(), rep.failures.end(),
                   [](const FailureRecord& a, const FailureRecord& b) { return a.case_id < b.case_id; });
  return rep;
}

Json report_to_json(const Report& r) {
  Json j;
  j["campaign"] = r.campaign;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["max_dim"] = r.max_dim;
  j["field"] = r.field;
  j["checks"] = r.checks;
  j["elapsed"] = r.elapsed;
  Json fails = Json::array();
  for (const auto& f : r.failures) {
    fails.push_back({{"case_id", f.case_id},
                     {"inputs", f.inputs},
                     {"expected", f.expected},
                     {"actual", f.actual}});
  }
  j["failures"] = std::move(fails);
  j["ok"] = r.ok();
  return j;
}

Report report_from_json(const Json& j) {
  try {
    Report r;
    r.campaign = j.at("campaign").get<std::string>();
    r.seed = j.at("seed").get<uint64_t>();
    r.trials = j.at("trials").get<size_t>();
    r.max_dim = j.value("max_dim", size_t{0});
    r.field = j.value("field", std::string("gaussian"));
    r.checks = j.value("checks", size_t{0});
    r.elapsed = j.at("elapsed").get<double>();
    for (const auto& f : j.at("failures")) {
      r.failures.push_back({f.at("case_id").get<std::string>(), f.at("inputs"),
                            f.at("expected").get<std::string>(), f.at("actual").get<std::string>()});
    }
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad report: ") + e.what());
  }
}

}  // namespace detlines
