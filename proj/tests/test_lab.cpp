#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hu/error.hpp"
#include "hu/io.hpp"
#include "hu/lab.hpp"
#include "hu/rng.hpp"

using namespace hu;

namespace {

GenSpec spec_of(std::uint64_t seed, const char* group, const char* action, const char* module, double delta,
                NoiseKind noise = NoiseKind::uniform_box) {
  GenSpec s;
  s.seed = seed;
  s.group_spec = group;
  s.action = ActionSpec::parse(action);
  s.module_spec = module;
  s.delta = delta;
  s.noise_kind = noise;
  return s;
}

bool exact_truth(const GeneratedInstance& gi) {
  const InstanceData& inst = gi.instance;
  const Group& g = inst.group();
  const auto& mod = inst.module();
  for (Element y = 0; y < g.order(); ++y) {
    for (Element z = 0; z < g.order(); ++z) {
      if (gi.truth.H0[g.mul(y, z)] != mod.act_dual(gi.truth.H0[y], z) + gi.truth.H0[z]) return false;
    }
  }
  for (Point x = 0; x < inst.action().size(); ++x) {
    for (Element y = 0; y < g.order(); ++y) {
      if (gi.truth.F0[inst.action().act(x, y)] != mod.act_dual(gi.truth.F0[x], y) + gi.truth.H0[y]) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("splitmix streams") {
  SplitMix64 a = SplitMix64::stream(5, "xi"), b = SplitMix64::stream(5, "xi"), c = SplitMix64::stream(5, "u");
  const auto a1 = a.next();
  CHECK(a1 == b.next());
  CHECK(a1 != c.next());
  SplitMix64 r(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.below(7) < 7);
  }
  CHECK(SplitMix64::fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(SplitMix64::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("action specs") {
  CHECK(ActionSpec::parse("self").kind == ActionKind::self);
  CHECK(ActionSpec::parse("trivial:5").trivial_points == 5);
  CHECK(ActionSpec::parse("coset:2,3").generators == std::vector<Element>{2, 3});
  CHECK(ActionSpec::parse("coset:2").str() == "coset:2");
  CHECK(ActionSpec::parse("coset:2").build(symmetric(3)).size() == 3);
  CHECK_THROWS_AS(ActionSpec::parse("orbit"), Error);
}

TEST_CASE("generation is deterministic") {
  const GenSpec s = spec_of(42, "symmetric:3", "self", "signperm:d=3,norm=two", 0.3);
  const std::string a = io::dump(io::generated_to_json(s, gen_instance(s)));
  const std::string b = io::dump(io::generated_to_json(s, gen_instance(s)));
  CHECK(a == b);
  GenSpec t = s;
  t.seed = 43;
  CHECK(io::dump(io::generated_to_json(t, gen_instance(t))) != a);

  const GenSpec c6 = spec_of(42, "cyclic:6", "self", "trivial:d=1,norm=sup", 0.3);
  CHECK(io::dump(io::generated_to_json(c6, gen_instance(c6))) == io::dump(io::generated_to_json(c6, gen_instance(c6))));
}

TEST_CASE("generated instances satisfy the hypothesis and carry exact ground truth") {
  const std::vector<GenSpec> specs = {
      spec_of(1, "cyclic:2", "self", "sign:d=1,norm=sup", 0.1),
      spec_of(2, "cyclic:6", "self", "swap:d=2,norm=one", 0.5, NoiseKind::boundary_extremal),
      spec_of(3, "symmetric:3", "coset:2", "trivial:d=2,norm=two", 1.0),
      spec_of(4, "dihedral:4", "trivial:2", "perm:d=4,norm=sup", 0.01),
      spec_of(5, "product:cyclic:2,symmetric:3", "self", "signperm:d=2,norm=two", 0.2,
              NoiseKind::boundary_extremal),
      spec_of(6, "cyclic:5", "coset:0,1", "perm:d=1,norm=one", 0.7),
  };
  for (const GenSpec& s : specs) {
    CAPTURE(s.describe());
    const GeneratedInstance gi = gen_instance(s);
    CHECK(check_hypothesis(gi.instance) <= s.delta);
    CHECK(exact_truth(gi));
    double worst_noise = 0;
    for (const auto& v : gi.truth.u) worst_noise = std::max(worst_noise, gi.instance.module().dual_norm(v));
    for (const auto& v : gi.truth.v) worst_noise = std::max(worst_noise, gi.instance.module().dual_norm(v));
    CHECK(worst_noise <= s.delta / 3);
  }
  GenSpec none = spec_of(7, "cyclic:4", "self", "sign:d=2,norm=sup", 0.4, NoiseKind::none);
  const GeneratedInstance exact = gen_instance(none);
  CHECK(check_hypothesis(exact.instance) == 0.0);
  const StabilizationReport r = stabilize(exact.instance);
  for (std::size_t y = 0; y < r.H.size(); ++y) CHECK(exact.instance.module().dual_norm(r.H[y] - exact.truth.H0[y]) <= 1e-12);
  CHECK(r.measured.bound_F <= 1e-12);
}

TEST_CASE("inconsistent generator specs") {
  auto code = [](const GenSpec& s) {
    try {
      gen_instance(s);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Parse;
  };
  CHECK(code(spec_of(1, "symmetric:3", "coset:2", "sign:d=1,norm=sup", 0.1)) == Errc::InconsistentSpec);
  CHECK(code(spec_of(1, "cyclic:3", "self", "sign:d=1,norm=sup", 0.1)) == Errc::InconsistentSpec);
  CHECK(code(spec_of(1, "cyclic:3", "self", "trivial", -0.1)) == Errc::InconsistentSpec);
}

TEST_CASE("extremal noise makes the H bound sharp") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenSpec s = spec_of(seed, "cyclic:2", "self", "sign:d=1,norm=sup", 0.3, NoiseKind::boundary_extremal);
    const StabilizationReport r = stabilize(gen_instance(s).instance);
    CHECK(r.guarantees.all());
    if (r.delta_min > 0) CHECK(r.measured.bound_H / r.delta_min >= 0.99);
  }
}

TEST_CASE("suite runs") {
  const SuiteReport empty = run_suite({});
  CHECK(empty.entries.empty());
  CHECK(empty.passed == 0);
  CHECK(empty.failed == 0);

  const auto specs = default_suite(60, 9);
  CHECK(specs.size() == 60);
  const SuiteReport one = run_suite(specs, 1);
  const SuiteReport four = run_suite(specs, 4);
  CHECK(one.failed == 0);
  CHECK(io::dump(io::suite_to_json(one)) == io::dump(io::suite_to_json(four)));
  CHECK(one.worst_margin_H >= -1e-9);
  CHECK(one.max_bound_H_ratio <= 1.0 + 1e-9);

  // Suite entries agree with running the stabilizer directly.
  for (std::size_t i = 0; i < 10; ++i) {
    const StabilizationReport r = stabilize(gen_instance(specs[i]).instance, specs[i].mean_m);
    CHECK(one.entries[i].delta_min == r.delta_min);
    CHECK(one.entries[i].measured.bound_H == r.measured.bound_H);
    CHECK(one.entries[i].measured.bound_F == r.measured.bound_F);
  }
  for (const auto& e : one.entries) {
    if (e.recovery) CHECK(*e.recovery <= e.delta + e.delta / 3 + e.tolerance);
  }
}

TEST_CASE("coset corpus") {
  const SuiteReport r = run_suite(coset_suite(24, 3), 2);
  CHECK(r.entries.size() == 24);
  CHECK(r.failed == 0);
}

TEST_CASE("foelner sweep") {
  const auto flat = foelner_sweep(1, {10, 100}, 2.0, 0.0, 1);
  for (const SweepRow& row : flat) {
    CHECK(row.measured_cocycle_defect == 0.0);
    CHECK(row.bound_H == 0.0);
  }
  const auto rows = foelner_sweep(1, {10, 100, 1000}, 2.0, 0.1, 1);
  REQUIRE(rows.size() == 3);
  for (const SweepRow& row : rows) {
    CHECK(row.certified);
    CHECK(row.bound_H <= 0.2 + 1e-12);
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double ratio = rows[i].certified_bound / rows[i + 1].certified_bound;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 12.0);
  }
  const std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("N,measured_cocycle_defect,certified_bound,bound_H,bound_F\n", 0) == 0);
  CHECK(csv == sweep_csv(foelner_sweep(1, {10, 100, 1000}, 2.0, 0.1, 1)));
  CHECK_THROWS_AS(foelner_sweep(1, {100, 10}, 2.0, 0.1, 1), Error);
}
