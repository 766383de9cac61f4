#include "hu/lab.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <thread>

#include "hu/error.hpp"
#include "hu/rng.hpp"

namespace hu {

std::string_view action_kind_name(ActionKind kind) noexcept {
  switch (kind) {
    case ActionKind::self: return "self";
    case ActionKind::coset: return "coset";
    case ActionKind::trivial: return "trivial";
  }
  return "?";
}

std::string_view noise_kind_name(NoiseKind kind) noexcept {
  switch (kind) {
    case NoiseKind::uniform_box: return "uniform_box";
    case NoiseKind::boundary_extremal: return "boundary_extremal";
    case NoiseKind::none: return "none";
  }
  return "?";
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "uniform_box") return NoiseKind::uniform_box;
  if (name == "boundary_extremal") return NoiseKind::boundary_extremal;
  if (name == "none") return NoiseKind::none;
  throw Error(Errc::UnknownSpec, "unknown noise kind '" + std::string(name) + "'");
}

namespace {

std::size_t parse_index(std::string_view text, std::string_view context) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(Errc::UnknownSpec, "bad number in '" + std::string(context) + "'");
  }
  return value;
}

}  // namespace

ActionSpec ActionSpec::parse(std::string_view text) {
  ActionSpec spec;
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "self" && rest.empty()) {
    spec.kind = ActionKind::self;
  } else if (kind == "trivial") {
    spec.kind = ActionKind::trivial;
    if (!rest.empty()) spec.trivial_points = parse_index(rest, text);
  } else if (kind == "coset") {
    spec.kind = ActionKind::coset;
    std::string_view items = rest;
    while (!items.empty()) {
      const auto comma = items.find(',');
      spec.generators.push_back(parse_index(items.substr(0, comma), text));
      if (comma == std::string_view::npos) break;
      items = items.substr(comma + 1);
    }
  } else {
    throw Error(Errc::UnknownSpec, "unknown action spec '" + std::string(text) + "'");
  }
  return spec;
}

std::string ActionSpec::str() const {
  switch (kind) {
    case ActionKind::self: return "self";
    case ActionKind::trivial: return "trivial:" + std::to_string(trivial_points);
    case ActionKind::coset: {
      std::string s = "coset:";
      for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? "," : "") + std::to_string(generators[i]);
      return s;
    }
  }
  return "?";
}

GAction ActionSpec::build(const Group& g) const {
  switch (kind) {
    case ActionKind::self: return right_action_self(g);
    case ActionKind::trivial: return trivial_action(g, trivial_points);
    case ActionKind::coset: return coset_space(g, generators).action();
  }
  throw Error(Errc::UnknownSpec, "unknown action kind");
}

std::string GenSpec::describe() const {
  char delta_buf[32];
  std::snprintf(delta_buf, sizeof delta_buf, "%.17g", delta);
  return "seed=" + std::to_string(seed) + " group=" + group_spec + " action=" + action.str() +
         " module=" + module_spec + " delta=" + delta_buf + " noise=" + std::string(noise_kind_name(noise_kind)) +
         " mean=" + mean_m.str();
}

namespace {

DualVector dyadic_vector(SplitMix64& rng, std::size_t dim) {
  DualVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = (static_cast<double>(rng.below(4097)) - 2048.0) / 1024.0;
  }
  return v;
}

double gaussian(SplitMix64& rng) {
  const double u1 = rng.uniform_open_zero();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

/// A point of the `ball` norm ball of the given radius: uniform in the ball,
/// or on its sphere when `boundary` is set.
DualVector sample_ball(SplitMix64& rng, std::size_t dim, NormKind ball, double radius, bool boundary) {
  DualVector v(dim);
  if (radius == 0.0) return v;
  switch (ball) {
    case NormKind::sup: {
      for (std::size_t i = 0; i < dim; ++i) v[i] = 2.0 * rng.uniform() - 1.0;
      if (boundary) v[rng.below(dim)] = rng.coin() ? 1.0 : -1.0;
      break;
    }
    case NormKind::one: {
      // Normalized exponentials are uniform on the simplex; one extra slack
      // coordinate makes them uniform in the solid cross-polytope.
      double total = boundary ? 0.0 : -std::log(rng.uniform_open_zero());
      for (std::size_t i = 0; i < dim; ++i) {
        v[i] = -std::log(rng.uniform_open_zero());
        total += v[i];
      }
      for (std::size_t i = 0; i < dim; ++i) v[i] = (rng.coin() ? 1.0 : -1.0) * v[i] / total;
      break;
    }
    case NormKind::two: {
      double sq = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        v[i] = gaussian(rng);
        sq += v[i] * v[i];
      }
      const double len = std::sqrt(sq);
      const double r = boundary ? 1.0 : std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
      for (std::size_t i = 0; i < dim; ++i) v[i] = r * v[i] / len;
      break;
    }
  }
  return radius * v;
}

}  // namespace

GeneratedInstance gen_instance(const GenSpec& spec) {
  if (!(spec.delta > 0.0) || !std::isfinite(spec.delta)) {
    throw Error(Errc::InconsistentSpec, "delta must be positive");
  }
  const Group g = builtin_group(spec.group_spec);
  const DualModule module = builtin_module(spec.module_spec, g);
  const GAction action = spec.action.build(g);
  if (spec.action.kind == ActionKind::coset && action.size() > 1 && !module.is_trivial()) {
    throw Error(Errc::InconsistentSpec, "coset spaces of proper subgroups need the trivial module");
  }
  const std::size_t d = module.dim();

  auto xi_rng = SplitMix64::stream(spec.seed, "xi");
  auto xiF_rng = SplitMix64::stream(spec.seed, "xiF");
  auto u_rng = SplitMix64::stream(spec.seed, "u");
  auto v_rng = SplitMix64::stream(spec.seed, "v");

  GroundTruth truth;
  const DualVector xi = dyadic_vector(xi_rng, d);
  for (Element y = 0; y < g.order(); ++y) truth.H0.push_back(module.act_dual(xi, y) - xi);

  switch (spec.action.kind) {
    case ActionKind::self: {
      const DualVector xiF = dyadic_vector(xiF_rng, d);
      for (Element y = 0; y < g.order(); ++y) truth.F0.push_back(module.act_dual(xiF, y) + truth.H0[y]);
      break;
    }
    case ActionKind::coset: {
      const DualVector c = module.is_trivial() ? dyadic_vector(xiF_rng, d) : -1.0 * xi;
      truth.F0.assign(action.size(), c);
      break;
    }
    case ActionKind::trivial: {
      for (Point x = 0; x < action.size(); ++x) {
        truth.F0.push_back(module.is_trivial() ? dyadic_vector(xiF_rng, d) : -1.0 * xi);
      }
      break;
    }
  }

  // Slightly inside δ/3 so rounding in f and h cannot push the residual past δ.
  const double radius = spec.noise_kind == NoiseKind::none ? 0.0 : spec.delta / 3.0 * (1.0 - 1e-12);
  const bool boundary = spec.noise_kind == NoiseKind::boundary_extremal;
  const NormKind ball = dual_kind(module.norm());
  for (Point x = 0; x < action.size(); ++x) truth.u.push_back(sample_ball(u_rng, d, ball, radius, boundary));
  for (Element y = 0; y < g.order(); ++y) truth.v.push_back(sample_ball(v_rng, d, ball, radius, boundary));

  VectorTable f;
  VectorTable h;
  for (Point x = 0; x < action.size(); ++x) f.push_back(truth.F0[x] + truth.u[x]);
  for (Element y = 0; y < g.order(); ++y) h.push_back(truth.H0[y] + truth.v[y]);

  GeneratedInstance out{InstanceData(action, module, std::move(f), std::move(h)), std::move(truth)};
  const double dm = check_hypothesis(out.instance);
  if (dm > spec.delta) {
    throw std::logic_error("generated instance violates the hypothesis: " + spec.describe());
  }
  return out;
}

namespace {

SuiteEntry run_one(const GenSpec& spec) {
  SuiteEntry e;
  e.spec = spec.describe();
  e.delta = spec.delta;
  try {
    const GeneratedInstance gen = gen_instance(spec);
    const StabilizationReport r = stabilize(gen.instance, spec.mean_m);
    e.delta_min = r.delta_min;
    e.measured = r.measured;
    e.scale = r.scale;
    e.tolerance = r.tolerance;
    e.guarantees = r.guarantees;
    e.hypothesis_ok = r.delta_min <= spec.delta;
    if (gen.instance.module().is_trivial()) {
      double worst = 0.0;
      for (Element y = 0; y < gen.instance.group().order(); ++y) {
        worst = std::max(worst, gen.instance.module().dual_norm(r.H[y] - gen.truth.H0[y]));
      }
      e.recovery = worst;
      e.recovery_ok = worst <= spec.delta + spec.delta / 3.0 + r.tolerance;
    }
    e.passed = e.hypothesis_ok && e.guarantees.all() && e.recovery_ok;
  } catch (const std::exception& ex) {
    e.error = ex.what();
    e.passed = false;
  }
  return e;
}

unsigned resolve_threads(unsigned requested, std::size_t work) {
  unsigned threads = requested;
  if (threads == 0) {
    if (const char* env = std::getenv("HU_THREADS")) threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(work, 1)));
}

}  // namespace

SuiteReport run_suite(const std::vector<GenSpec>& specs, unsigned threads) {
  SuiteReport report;
  report.entries.resize(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) report.entries[i] = run_one(specs[i]);
  };
  const unsigned n = resolve_threads(threads, specs.size());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool first = true;
  for (const SuiteEntry& e : report.entries) {
    e.passed ? ++report.passed : ++report.failed;
    if (!e.error.empty()) continue;
    const double mh = e.delta_min - e.measured.bound_H;
    const double mf = 2.0 * e.delta_min - e.measured.bound_F;
    report.worst_margin_H = first ? mh : std::min(report.worst_margin_H, mh);
    report.worst_margin_F = first ? mf : std::min(report.worst_margin_F, mf);
    first = false;
    if (e.delta_min > 0.0) report.max_bound_H_ratio = std::max(report.max_bound_H_ratio, e.measured.bound_H / e.delta_min);
  }
  return report;
}

std::vector<GenSpec> default_suite(std::size_t count, std::uint64_t seed) {
  static const std::vector<std::string> groups = {
      "cyclic:2",  "cyclic:3",  "cyclic:4",  "cyclic:5",  "cyclic:6",    "cyclic:7",
      "cyclic:8",  "cyclic:9",  "cyclic:10", "cyclic:11", "cyclic:12",   "dihedral:3",
      "dihedral:4", "dihedral:5", "dihedral:6", "symmetric:3", "symmetric:4",
      "product:cyclic:2,cyclic:2", "product:cyclic:2,cyclic:3", "product:cyclic:3,cyclic:3",
      "product:cyclic:2,symmetric:3", "product:cyclic:2,dihedral:4"};
  static const std::size_t dims[] = {1, 2, 4};
  static const char* norms[] = {"one", "two", "sup"};
  static const char* kinds[] = {"trivial", "sign", "swap", "perm", "signperm"};

  std::map<std::string, bool> supported;
  auto module_ok = [&](const std::string& group_spec, const Group& g, const std::string& module_spec) {
    const std::string key = group_spec + "|" + module_spec;
    if (const auto it = supported.find(key); it != supported.end()) return it->second;
    bool ok = true;
    try {
      builtin_module(module_spec, g);
    } catch (const Error&) {
      ok = false;
    }
    supported.emplace(key, ok);
    return ok;
  };

  auto rng = SplitMix64::stream(seed, "suite");
  std::vector<GenSpec> specs;
  specs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GenSpec s;
    s.seed = rng.next();
    s.group_spec = groups[i % groups.size()];
    const Group g = builtin_group(s.group_spec);
    const std::size_t d = dims[(i / groups.size()) % 3];
    const std::string options = ":d=" + std::to_string(d) + ",norm=" + norms[rng.below(3)];

    const auto roll = rng.below(10);
    if (roll < 6) {
      s.action.kind = ActionKind::self;
    } else if (roll < 8) {
      s.action.kind = ActionKind::trivial;
      s.action.trivial_points = 1 + rng.below(4);
    } else {
      s.action.kind = ActionKind::coset;
      s.action.generators = {static_cast<Element>(rng.below(g.order()))};
    }
    std::vector<std::string> candidates;
    for (const char* k : kinds) {
      if (module_ok(s.group_spec, g, k + options)) candidates.push_back(k + options);
    }
    s.module_spec = candidates[rng.below(candidates.size())];
    if (s.action.kind == ActionKind::coset && g.closure(s.action.generators).size() < g.order()) {
      s.module_spec = "trivial" + options;
    }
    s.delta = 0.01 + 0.99 * rng.uniform();
    s.noise_kind = i % 2 == 0 ? NoiseKind::uniform_box : NoiseKind::boundary_extremal;
    if (rng.coin()) {
      s.mean_m.kind = MeanKind::pullback;
      s.mean_m.x0 = rng.below(s.action.build(g).size());
    }
    specs.push_back(std::move(s));
  }
  return specs;
}

std::vector<GenSpec> coset_suite(std::size_t count, std::uint64_t seed) {
  static const std::size_t dims[] = {1, 2, 4};
  static const char* norms[] = {"one", "two", "sup"};
  auto rng = SplitMix64::stream(seed, "coset-suite");
  std::vector<GenSpec> specs;
  for (std::size_t i = 0; i < count; ++i) {
    GenSpec s;
    s.seed = rng.next();
    s.group_spec = "symmetric:3";
    s.action.kind = ActionKind::coset;
    s.action.generators = {2};
    s.module_spec = "trivial:d=" + std::to_string(dims[i % 3]) + ",norm=" + norms[rng.below(3)];
    s.delta = 0.01 + 0.99 * rng.uniform();
    s.noise_kind = i % 2 == 0 ? NoiseKind::uniform_box : NoiseKind::boundary_extremal;
    if (rng.coin()) {
      s.mean_m.kind = MeanKind::pullback;
      s.mean_m.x0 = rng.below(3);
    }
    specs.push_back(std::move(s));
  }
  return specs;
}

std::pair<ZTable, ZTable> foelner_data(std::size_t rank, std::size_t radius, double slope, double amplitude,
                                       std::uint64_t seed, std::size_t shift_radius) {
  const std::uint64_t key = SplitMix64::mix(seed ^ SplitMix64::fnv1a("foelner-noise"));
  ZTable f{ZBox(rank, radius + shift_radius), {}};
  f.values.reserve(f.box.size());
  for (std::size_t i = 0; i < f.box.size(); ++i) {
    const ZPoint x = f.box.point(i);
    std::uint64_t hsh = key;
    double linear = 0.0;
    for (long long c : x) {
      hsh = SplitMix64::mix(hsh ^ SplitMix64::mix(static_cast<std::uint64_t>(c) * 0x9E3779B97F4A7C15ULL + 1));
      linear += static_cast<double>(c);
    }
    const double eta = amplitude == 0.0 ? 0.0 : ((hsh >> 63) != 0 ? amplitude : -amplitude);
    f.values.push_back(DualVector{slope * linear + eta});
  }
  ZTable h{ZBox(rank, shift_radius), {}};
  for (std::size_t i = 0; i < h.box.size(); ++i) {
    double linear = 0.0;
    for (long long c : h.box.point(i)) linear += static_cast<double>(c);
    h.values.push_back(DualVector{slope * linear});
  }
  return {std::move(f), std::move(h)};
}

std::vector<SweepRow> foelner_sweep(std::size_t rank, const std::vector<std::size_t>& radii, double slope,
                                    double amplitude, std::uint64_t seed, std::size_t shift_radius) {
  if (!std::is_sorted(radii.begin(), radii.end())) {
    throw Error(Errc::InconsistentSpec, "sweep radii must be ascending");
  }
  std::vector<SweepRow> rows;
  for (std::size_t n : radii) {
    const auto [f, h] = foelner_data(rank, n, slope, amplitude, seed, shift_radius);
    const FoelnerReport r = stabilize_foelner_z(n, f, h, NormKind::sup);
    rows.push_back({n, r.measured_cocycle_defect, r.certified_cocycle_bound, r.bound_H, r.bound_F, r.defects_certified});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "N,measured_cocycle_defect,certified_bound,bound_H,bound_F\n";
  char buf[160];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", r.radius, r.measured_cocycle_defect,
                  r.certified_bound, r.bound_H, r.bound_F);
    out += buf;
  }
  return out;
}

}  // namespace hu
