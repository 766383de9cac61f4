#include "hu/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hu/error.hpp"
#include "hu/rng.hpp"

namespace hu::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

bool is_flat_numeric(const json& a) {
  for (const auto& e : a) {
    if (!e.is_number()) return false;
  }
  return true;
}

void write(const json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(key).dump() + ": ";
        write(item, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      if (is_flat_numeric(v)) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          write(v[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(v[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

template <class F>
auto parse_guard(F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& ex) {
    throw Error(Errc::Parse, ex.what());
  }
}

}  // namespace

std::string dump(const json& value) {
  std::string out;
  write(value, out, 0);
  out += "\n";
  return out;
}

std::string digest(const json& value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(SplitMix64::fnv1a(dump(value))));
  return buf;
}

json read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_guard([&] { return json::parse(ss.str()); });
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Parse, "cannot write '" + path.string() + "'");
  out << text;
}

json resolve(const json& node, const fs::path& base) {
  if (node.is_string()) {
    const std::string s = node.get<std::string>();
    if (is_builtin_group_spec(s)) return node;
    const fs::path p = fs::path(s).is_absolute() || base.empty() ? fs::path(s) : base / s;
    return read_file(p);
  }
  return node;
}

json to_json(const Group& g) {
  return json{{"order", g.order()}, {"table", g.table()}, {"names", g.names()}};
}

Group group_from_json(const json& raw, const fs::path& base) {
  const json node = resolve(raw, base);
  if (node.is_string()) return builtin_group(node.get<std::string>());
  return parse_guard([&] {
    if (!node.is_object()) throw Error(Errc::Parse, "group must be an object or builtin spec");
    if (node.contains("builtin")) return builtin_group(node.at("builtin").get<std::string>());
    const auto table = node.at("table").get<Group::Table>();
    if (node.contains("order") && node.at("order").get<std::size_t>() != table.size()) {
      throw Error(Errc::Parse, "order does not match the table");
    }
    auto names = node.value("names", std::vector<std::string>{});
    return Group::from_table(table, std::move(names));
  });
}

json to_json(const GAction& a) {
  return json{{"group", to_json(a.group())}, {"size", a.size()}, {"act", a.table()}};
}

GAction action_from_json(const json& raw, const fs::path& base, const Group* group_override) {
  const json node = resolve(raw, base);
  return parse_guard([&] {
    if (!node.is_object()) throw Error(Errc::Parse, "action must be an object");
    std::optional<Group> loaded;
    if (!group_override) {
      if (!node.contains("group")) throw Error(Errc::Parse, "action lacks a group");
      loaded = group_from_json(node.at("group"), base);
    }
    const Group& g = group_override ? *group_override : *loaded;
    if (node.value("self", false)) return right_action_self(g);
    if (node.contains("trivial")) return trivial_action(g, node.at("trivial").get<std::size_t>());
    if (node.contains("coset")) return coset_space(g, node.at("coset").get<std::vector<Element>>()).action();
    const auto act = node.at("act").get<GAction::Table>();
    if (node.contains("size") && node.at("size").get<std::size_t>() != act.size()) {
      throw Error(Errc::Parse, "size does not match the act table");
    }
    return GAction::from_table(g, act);
  });
}

json to_json(const DualModule& m) {
  json matrices = json::array();
  for (Element y = 0; y < m.group().order(); ++y) {
    const Matrix& mat = m.matrix(y);
    json rows = json::array();
    for (std::size_t i = 0; i < mat.dim; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < mat.dim; ++j) row.push_back(mat.at(i, j));
      rows.push_back(std::move(row));
    }
    matrices.push_back(std::move(rows));
  }
  return json{{"dim", m.dim()}, {"norm", std::string(norm_name(m.norm()))}, {"matrices", matrices}};
}

DualModule module_from_json(const json& node, const Group& g) {
  return parse_guard([&] {
    if (node.is_string()) return builtin_module(node.get<std::string>(), g);
    if (!node.is_object()) throw Error(Errc::Parse, "module must be an object");
    if (node.contains("builtin")) return builtin_module(node.at("builtin").get<std::string>(), g);
    NormedSpace space{node.at("dim").get<std::size_t>(), parse_norm(node.at("norm").get<std::string>())};
    if (space.dim == 0) throw Error(Errc::Parse, "module dimension must be positive");
    if (node.value("trivial", false)) return DualModule::trivial(space, g);
    std::vector<Matrix> ms;
    for (const auto& rows : node.at("matrices")) {
      Matrix m{space.dim, {}};
      if (rows.size() != space.dim) throw Error(Errc::DimensionMismatch, "matrix has the wrong number of rows");
      for (const auto& row : rows) {
        if (row.size() != space.dim) throw Error(Errc::DimensionMismatch, "matrix row has the wrong length");
        for (const auto& v : row) m.entries.push_back(v.get<double>());
      }
      ms.push_back(std::move(m));
    }
    return DualModule::build(space, g, std::move(ms));
  });
}

namespace {

json values_json(const VectorTable& t) {
  json values = json::array();
  for (const DualVector& v : t) values.push_back(std::vector<double>(v.coords().begin(), v.coords().end()));
  return values;
}

VectorTable values_from(const json& values, std::size_t dim) {
  VectorTable t;
  for (const auto& row : values) {
    auto coords = row.get<std::vector<double>>();
    if (coords.size() != dim) throw Error(Errc::DimensionMismatch, "table value has the wrong dimension");
    t.emplace_back(std::move(coords));
  }
  return t;
}

}  // namespace

json table_to_json(const VectorTable& t, std::string_view domain) {
  return json{{"domain", std::string(domain)},
              {"dim", t.empty() ? 0 : t.front().dim()},
              {"values", values_json(t)}};
}

VectorTable table_from_json(const json& node, std::string_view expected_domain) {
  return parse_guard([&] {
    const auto domain = node.at("domain").get<std::string>();
    if (!expected_domain.empty() && domain != expected_domain) {
      throw Error(Errc::DomainMismatch, "table domain is '" + domain + "', expected '" + std::string(expected_domain) + "'");
    }
    return values_from(node.at("values"), node.at("dim").get<std::size_t>());
  });
}

json ztable_to_json(const ZTable& t) {
  return json{{"domain", "Z^r"},
              {"rank", t.box.rank()},
              {"radius", t.box.radius()},
              {"dim", t.values.empty() ? 0 : t.values.front().dim()},
              {"values", values_json(t.values)}};
}

bool is_ztable(const json& node) {
  return node.is_object() && node.contains("domain") && node.at("domain") == "Z^r";
}

ZTable ztable_from_json(const json& node) {
  return parse_guard([&] {
    if (!is_ztable(node)) throw Error(Errc::Parse, "expected a Z^r table");
    ZTable t{ZBox(node.at("rank").get<std::size_t>(), node.at("radius").get<std::size_t>()),
             values_from(node.at("values"), node.at("dim").get<std::size_t>())};
    if (t.values.size() != t.box.size()) {
      throw Error(Errc::DomainMismatch, "Z^r table has " + std::to_string(t.values.size()) +
                                            " values, box has " + std::to_string(t.box.size()));
    }
    return t;
  });
}

LoadedInstance load_instance(const InstancePaths& paths) {
  json bundle = json::object();
  fs::path base;
  if (paths.bundle) {
    bundle = read_file(*paths.bundle);
    base = paths.bundle->parent_path();
  }
  auto node_for = [&](const char* key, const std::optional<fs::path>& path) -> json {
    if (path) return read_file(*path);
    if (!bundle.contains(key)) throw Error(Errc::Parse, std::string("no ") + key + " given");
    return resolve(bundle.at(key), base);
  };

  const json action_node = node_for("action", paths.action);
  std::optional<Group> group;
  if (paths.group) {
    group = group_from_json(json(*paths.group), {});
  } else if (bundle.contains("group")) {
    group = group_from_json(bundle.at("group"), base);
  } else if (action_node.is_object() && action_node.contains("group")) {
    group = group_from_json(action_node.at("group"), paths.action ? paths.action->parent_path() : base);
  } else {
    throw Error(Errc::Parse, "no group given");
  }
  GAction action = action_from_json(action_node, base, &*group);
  DualModule module = module_from_json(node_for("module", paths.module), *group);
  VectorTable f = table_from_json(node_for("f", paths.f), "X");
  VectorTable h = table_from_json(node_for("h", paths.h), "G");

  LoadedInstance out{InstanceData(action, module, f, h), json::object()};
  out.digests["group"] = digest(to_json(*group));
  out.digests["action"] = digest(to_json(out.instance.action()));
  out.digests["module"] = digest(to_json(out.instance.module()));
  out.digests["f"] = digest(table_to_json(out.instance.f(), "X"));
  out.digests["h"] = digest(table_to_json(out.instance.h(), "G"));
  return out;
}

json certificate_to_json(const MeanCertificate& c) {
  return json{{"normalization_residual", c.normalization_residual},
              {"invariance_defects", c.invariance_defects},
              {"module_equivariance_residual", c.module_equivariance_residual}};
}

namespace {

json guarantees_json(const Guarantees& g) {
  return json{{"cocycle", g.cocycle}, {"equivariance", g.equivariance}, {"bound_H", g.bound_H},
              {"bound_F", g.bound_F}, {"all", g.all()}};
}

}  // namespace

json report_to_json(const StabilizationReport& r, const json& digests) {
  return json{{"H", values_json(r.H)},
              {"F", values_json(r.F)},
              {"delta_min", r.delta_min},
              {"cocycle_residual", r.measured.cocycle_residual},
              {"equivariance_residual", r.measured.equivariance_residual},
              {"bound_H", r.measured.bound_H},
              {"bound_F", r.measured.bound_F},
              {"scale", r.scale},
              {"tolerance", r.tolerance},
              {"guarantees", guarantees_json(r.guarantees)},
              {"mean_m", r.mean_m.str()},
              {"mean_n", r.mean_n.str()},
              {"orbit_is_proper", r.orbit_is_proper},
              {"defect_certificates",
               json{{"m", certificate_to_json(r.certificate_m)}, {"n", certificate_to_json(r.certificate_n)}}},
              {"digests", digests}};
}

json foelner_report_to_json(const FoelnerReport& r, const json& digests) {
  return json{{"H", ztable_to_json(r.H)},
              {"F", ztable_to_json(r.F)},
              {"radius", r.radius},
              {"shift_radius", r.shift_radius},
              {"norm", std::string(norm_name(r.norm))},
              {"delta_min", r.delta_min},
              {"bound_H", r.bound_H},
              {"bound_F", r.bound_F},
              {"equivariance_residual", r.equivariance_residual},
              {"measured_cocycle_defect", r.measured_cocycle_defect},
              {"certified_cocycle_bound", r.certified_cocycle_bound},
              {"worst_certificate_margin", r.worst_certificate_margin},
              {"defects_certified", r.defects_certified},
              {"scale", r.scale},
              {"tolerance", r.tolerance},
              {"holds", r.holds()},
              {"defect_certificates", json{{"m", certificate_to_json(r.certificate)}}},
              {"digests", digests}};
}

json instance_to_json(const InstanceData& inst) {
  json action = to_json(inst.action());
  action.erase("group");
  return json{{"group", to_json(inst.group())},
              {"action", action},
              {"module", to_json(inst.module())},
              {"f", table_to_json(inst.f(), "X")},
              {"h", table_to_json(inst.h(), "G")}};
}

json generated_to_json(const GenSpec& spec, const GeneratedInstance& gen) {
  json out = instance_to_json(gen.instance);
  out["spec"] = json{{"seed", spec.seed},
                     {"group", spec.group_spec},
                     {"action", spec.action.str()},
                     {"module", spec.module_spec},
                     {"delta", spec.delta},
                     {"noise", std::string(noise_kind_name(spec.noise_kind))}};
  out["ground_truth"] = json{{"H0", table_to_json(gen.truth.H0, "G")},
                             {"F0", table_to_json(gen.truth.F0, "X")},
                             {"u", table_to_json(gen.truth.u, "X")},
                             {"v", table_to_json(gen.truth.v, "G")}};
  return out;
}

json suite_to_json(const SuiteReport& r) {
  json entries = json::array();
  for (const SuiteEntry& e : r.entries) {
    json j{{"spec", e.spec},
           {"delta", e.delta},
           {"delta_min", e.delta_min},
           {"cocycle_residual", e.measured.cocycle_residual},
           {"equivariance_residual", e.measured.equivariance_residual},
           {"bound_H", e.measured.bound_H},
           {"bound_F", e.measured.bound_F},
           {"scale", e.scale},
           {"tolerance", e.tolerance},
           {"guarantees", guarantees_json(e.guarantees)},
           {"hypothesis_ok", e.hypothesis_ok},
           {"recovery_ok", e.recovery_ok},
           {"passed", e.passed}};
    if (e.recovery) j["recovery"] = *e.recovery;
    if (!e.error.empty()) j["error"] = e.error;
    entries.push_back(std::move(j));
  }
  return json{{"instances", entries},
              {"summary", json{{"count", r.entries.size()},
                               {"passed", r.passed},
                               {"failed", r.failed},
                               {"worst_margin_H", r.worst_margin_H},
                               {"worst_margin_F", r.worst_margin_F},
                               {"max_bound_H_ratio", r.max_bound_H_ratio}}}};
}

}  // namespace hu::io
