#include "hu/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <iostream>
#include <optional>

#include "hu/error.hpp"
#include "hu/foelner.hpp"
#include "hu/io.hpp"
#include "hu/lab.hpp"
#include "hu/stabilizer.hpp"

namespace hu::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct Options {
  std::string bundle;
  std::string group;
  std::string action;
  std::string module;
  std::string f;
  std::string h;
  std::string H_file;
  std::string F_file;
  std::string mean_m = "uniform";
  std::string mean_n = "uniform";
  std::string out;
  std::uint64_t seed = 1;
  double delta = 0.1;
  std::string noise = "uniform_box";
  std::size_t count = 500;
  std::string corpus = "default";
  std::string radii = "10,100,1000";
  std::size_t rank = 1;
  double slope = 2.0;
  double amplitude = 0.1;
  std::size_t shift_radius = 3;
  std::optional<double> tolerance;
};

std::optional<fs::path> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

io::InstancePaths instance_paths(const Options& o) {
  io::InstancePaths p;
  p.bundle = opt_path(o.bundle);
  if (!o.group.empty()) p.group = o.group;
  p.action = opt_path(o.action);
  p.module = opt_path(o.module);
  p.f = opt_path(o.f);
  p.h = opt_path(o.h);
  return p;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
  } else {
    io::write_file(o.out, text);
  }
}

int exit_for(const Error& e) {
  switch (error_class(e.code())) {
    case ErrorClass::Structural: return kStructuralViolation;
    case ErrorClass::Configuration: return kConfigError;
    case ErrorClass::Input: return kInputError;
  }
  return kInputError;
}

void check_tolerance(const Options& o) {
  if (o.tolerance && !(*o.tolerance >= 1e-12)) {
    throw Error(Errc::Parse, "--tolerance must be >= 1e-12");
  }
}

int cmd_validate(const Options& o, std::ostream& out) {
  const bool full = !o.bundle.empty() || (!o.action.empty() && !o.module.empty() && !o.f.empty() && !o.h.empty());
  if (full) {
    const io::LoadedInstance loaded = io::load_instance(instance_paths(o));
    out << "ok: group of order " << loaded.instance.group().order() << ", " << loaded.instance.action().size()
        << " points, module of dimension " << loaded.instance.module().dim() << "\n";
    return kOk;
  }
  std::optional<Group> group;
  if (!o.group.empty()) {
    group = io::group_from_json(is_builtin_group_spec(o.group) ? json(o.group) : io::read_file(o.group));
    out << "ok: group of order " << group->order() << "\n";
  }
  if (!o.action.empty()) {
    const json node = io::read_file(o.action);
    const GAction a = io::action_from_json(node, fs::path(o.action).parent_path(), group ? &*group : nullptr);
    if (!group) group = a.group();
    out << "ok: action on " << a.size() << " points\n";
  }
  if (!o.module.empty()) {
    if (!group) throw Error(Errc::Parse, "validating a module needs --group or --action");
    const DualModule m = io::module_from_json(io::read_file(o.module), *group);
    out << "ok: module of dimension " << m.dim() << "\n";
  }
  if (!o.f.empty()) io::table_from_json(io::read_file(o.f), "X");
  if (!o.h.empty()) io::table_from_json(io::read_file(o.h), "G");
  if (!group && o.f.empty() && o.h.empty()) throw Error(Errc::Parse, "nothing to validate");
  return kOk;
}

json load_z_node(const std::string& path, const Options& o, const char* key) {
  if (!path.empty()) return io::read_file(path);
  if (o.bundle.empty()) throw Error(Errc::Parse, std::string("no ") + key + " given");
  const json bundle = io::read_file(o.bundle);
  if (!bundle.contains(key)) throw Error(Errc::Parse, std::string("bundle has no ") + key);
  return io::resolve(bundle.at(key), fs::path(o.bundle).parent_path());
}

int cmd_stabilize(const Options& o, std::ostream& out, std::ostream& err) {
  check_tolerance(o);
  const MeanSpec m_spec = MeanSpec::parse(o.mean_m);
  const MeanSpec n_spec = MeanSpec::parse(o.mean_n);
  if (m_spec.kind == MeanKind::foelner_box) {
    const ZTable f = io::ztable_from_json(load_z_node(o.f, o, "f"));
    const ZTable h = io::ztable_from_json(load_z_node(o.h, o, "h"));
    if (f.box.rank() != m_spec.rank) throw Error(Errc::DimensionMismatch, "mean rank differs from the data rank");
    NormKind norm = NormKind::sup;
    if (!o.module.empty()) norm = parse_norm(io::read_file(o.module).at("norm").get<std::string>());
    const FoelnerReport r = stabilize_foelner_z(m_spec.radius, f, h, norm, o.tolerance);
    const json digests{{"f", io::digest(io::ztable_to_json(f))}, {"h", io::digest(io::ztable_to_json(h))}};
    emit(o, io::dump(io::foelner_report_to_json(r, digests)), out);
    return r.holds() ? kOk : kBoundViolation;
  }
  const io::LoadedInstance loaded = io::load_instance(instance_paths(o));
  const StabilizationReport r = stabilize(loaded.instance, m_spec, n_spec, o.tolerance);
  if (r.orbit_is_proper) {
    err << "warning: the orbit of x0 = " << m_spec.x0 << " is a proper subset of X; the pullback mean ignores other orbits\n";
  }
  emit(o, io::dump(io::report_to_json(r, loaded.digests)), out);
  return r.guarantees.all() ? kOk : kBoundViolation;
}

/// A function table, or a report carrying the table under `key`.
VectorTable load_solution_table(const std::string& path, const char* key, std::string_view domain) {
  if (path.empty()) throw Error(Errc::Parse, std::string("no ") + key + " table given");
  const json node = io::read_file(path);
  if (node.is_object() && node.contains(key) && node.at(key).is_array()) {
    VectorTable t;
    for (const auto& row : node.at(key)) t.emplace_back(row.get<std::vector<double>>());
    return t;
  }
  return io::table_from_json(node, domain);
}

int cmd_verify(const Options& o, std::ostream& out) {
  check_tolerance(o);
  const io::LoadedInstance loaded = io::load_instance(instance_paths(o));
  const VectorTable H = load_solution_table(o.H_file, "H", "G");
  const VectorTable F = load_solution_table(o.F_file, "F", "X");
  const double delta_min = check_hypothesis(loaded.instance);
  const Verification v = verify_solution(loaded.instance, H, F);
  const double tol = o.tolerance.value_or(kDefaultToleranceFactor) * loaded.instance.scale();
  const Guarantees g = judge(v, delta_min, tol);
  out << "delta_min " << io::format_double(delta_min) << "\n"
      << "cocycle_residual " << io::format_double(v.cocycle_residual) << (g.cocycle ? " ok" : " FAIL") << "\n"
      << "equivariance_residual " << io::format_double(v.equivariance_residual) << (g.equivariance ? " ok" : " FAIL") << "\n"
      << "bound_H " << io::format_double(v.bound_H) << (g.bound_H ? " ok" : " FAIL") << "\n"
      << "bound_F " << io::format_double(v.bound_F) << (g.bound_F ? " ok" : " FAIL") << "\n";
  return g.all() ? kOk : kBoundViolation;
}

int cmd_gen(const Options& o, std::ostream& out) {
  GenSpec spec;
  spec.seed = o.seed;
  spec.group_spec = o.group.empty() ? "cyclic:2" : o.group;
  spec.action = ActionSpec::parse(o.action.empty() ? "self" : o.action);
  spec.module_spec = o.module.empty() ? "trivial:d=1,norm=sup" : o.module;
  spec.delta = o.delta;
  spec.noise_kind = parse_noise_kind(o.noise);
  const GeneratedInstance gen = gen_instance(spec);
  emit(o, io::dump(io::generated_to_json(spec, gen)), out);
  return kOk;
}

int cmd_suite(const Options& o, std::ostream& out) {
  std::vector<GenSpec> specs;
  if (o.corpus == "default") {
    specs = default_suite(o.count, o.seed);
  } else if (o.corpus == "coset") {
    specs = coset_suite(o.count, o.seed);
  } else {
    throw Error(Errc::Parse, "unknown corpus '" + o.corpus + "'");
  }
  const SuiteReport r = run_suite(specs);
  if (!o.out.empty()) io::write_file(o.out, io::dump(io::suite_to_json(r)));
  out << "instances " << r.entries.size() << "\n"
      << "passed " << r.passed << "\n"
      << "failed " << r.failed << "\n"
      << "worst_margin_H " << io::format_double(r.worst_margin_H) << "\n"
      << "worst_margin_F " << io::format_double(r.worst_margin_F) << "\n"
      << "max_bound_H_ratio " << io::format_double(r.max_bound_H_ratio) << "\n";
  return r.failed == 0 ? kOk : kBoundViolation;
}

std::vector<std::size_t> parse_radii(const std::string& text) {
  std::vector<std::size_t> radii;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty()) {
      throw Error(Errc::Parse, "bad radius '" + std::string(item) + "'");
    }
    radii.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (radii.empty()) throw Error(Errc::Parse, "no radii given");
  if (!std::is_sorted(radii.begin(), radii.end()) ||
      std::adjacent_find(radii.begin(), radii.end()) != radii.end()) {
    throw Error(Errc::Parse, "--radii must be strictly ascending");
  }
  return radii;
}

int cmd_foelner(const Options& o, std::ostream& out) {
  const auto rows = foelner_sweep(o.rank, parse_radii(o.radii), o.slope, o.amplitude, o.seed, o.shift_radius);
  emit(o, sweep_csv(rows), out);
  for (const SweepRow& r : rows) {
    if (!r.certified) return kBoundViolation;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyers-Ulam stabilization of approximate cocycle data on finite group actions"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;

  auto instance_flags = [&o](CLI::App* sub) {
    sub->add_option("--bundle", o.bundle, "Bundle file inlining or referencing group, action, module, f, h");
    sub->add_option("--group", o.group, "Group file or builtin spec (cyclic:6, product:cyclic:2,cyclic:3)");
    sub->add_option("--action", o.action, "Action file");
    sub->add_option("--module", o.module, "Module file");
    sub->add_option("--f", o.f, "Function table on X");
    sub->add_option("--h", o.h, "Function table on G");
  };

  auto* validate = app.add_subcommand("validate", "Check group, action and module invariants");
  instance_flags(validate);

  auto* stab = app.add_subcommand("stabilize", "Construct the exact cocycle H and equivariant F");
  instance_flags(stab);
  stab->add_option("--mean-m", o.mean_m, "Mean on X: uniform | pullback:x0=K | foelner:r=R,N=N");
  stab->add_option("--mean-n", o.mean_n, "Mean on G: uniform");
  stab->add_option("--out", o.out, "Report path (stdout if omitted)");
  stab->add_option("--tolerance", o.tolerance, "Tolerance factor replacing 1e-9 (>= 1e-12)");

  auto* verify = app.add_subcommand("verify", "Measure the stability conclusion for given H and F");
  instance_flags(verify);
  verify->add_option("--H-file", o.H_file, "Table of H on G, or a report")->required();
  verify->add_option("--F-file", o.F_file, "Table of F on X, or a report")->required();
  verify->add_option("--tolerance", o.tolerance, "Tolerance factor replacing 1e-9 (>= 1e-12)");

  auto* gen = app.add_subcommand("gen", "Generate a seeded instance with ground truth");
  gen->add_option("--seed", o.seed, "Seed");
  gen->add_option("--group", o.group, "Builtin group spec");
  gen->add_option("--action", o.action, "self | trivial:K | coset:g1,g2");
  gen->add_option("--module", o.module, "Builtin module spec, e.g. sign:d=2,norm=sup");
  gen->add_option("--delta", o.delta, "Noise budget delta > 0");
  gen->add_option("--noise", o.noise, "uniform_box | boundary_extremal | none");
  gen->add_option("--out", o.out, "Output path (stdout if omitted)");

  auto* suite = app.add_subcommand("suite", "Run the randomized stability suite");
  suite->add_option("--count", o.count, "Number of instances");
  suite->add_option("--seed", o.seed, "Seed");
  suite->add_option("--corpus", o.corpus, "default | coset");
  suite->add_option("--out", o.out, "Suite report path");

  auto* foelner = app.add_subcommand("foelner", "Box-mean sweep on Z^r");
  foelner->add_option("--radii", o.radii, "Ascending comma-separated radii");
  foelner->add_option("--rank", o.rank, "Rank r of Z^r");
  foelner->add_option("--slope", o.slope, "Slope of the linear part");
  foelner->add_option("--amplitude", o.amplitude, "Noise amplitude");
  foelner->add_option("--seed", o.seed, "Seed");
  foelner->add_option("--shift-radius", o.shift_radius, "Largest tested shift |y|");
  foelner->add_option("--out", o.out, "CSV path (stdout if omitted)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (stab->parsed()) return cmd_stabilize(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
    if (suite->parsed()) return cmd_suite(o, out);
    if (foelner->parsed()) return cmd_foelner(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace hu::cli
