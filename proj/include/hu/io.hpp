#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "hu/foelner.hpp"
#include "hu/lab.hpp"
#include "hu/stabilizer.hpp"

namespace hu::io {

using nlohmann::json;

/// printf("%.17g"), the fixed float format of every output file.
std::string format_double(double v);

/// Sorted keys, two-space indent, numeric arrays on one line, floats at 17
/// significant digits. Identical values always give identical bytes.
std::string dump(const json& value);

/// FNV-1a 64 of dump(value), as 16 hex digits.
std::string digest(const json& value);

json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// A string that is not a builtin group spec is treated as a path relative
/// to `base` and loaded; objects are returned unchanged.
json resolve(const json& node, const std::filesystem::path& base);

json to_json(const Group& g);
Group group_from_json(const json& node, const std::filesystem::path& base = {});

/// {"group": ..., "size": m, "act": [[...]]}; "self": true, "trivial": k and
/// "coset": [generators] are accepted in place of "size"/"act".
json to_json(const GAction& a);
GAction action_from_json(const json& node, const std::filesystem::path& base = {},
                         const Group* group_override = nullptr);

/// {"dim": d, "norm": "one"|"two"|"sup", "matrices": [...]} or with
/// "trivial": true instead of matrices, or {"builtin": "sign:d=2,norm=sup"}.
json to_json(const DualModule& m);
DualModule module_from_json(const json& node, const Group& g);

/// {"domain": "X"|"G", "dim": d, "values": [[...] per point]}.
json table_to_json(const VectorTable& t, std::string_view domain);
VectorTable table_from_json(const json& node, std::string_view expected_domain);

/// {"domain": "Z^r", "rank": r, "radius": R, "dim": d, "values": [...]} in
/// lexicographic box order.
json ztable_to_json(const ZTable& t);
ZTable ztable_from_json(const json& node);
bool is_ztable(const json& node);

/// A bundle inlines or references "group", "action", "module", "f" and "h".
struct LoadedInstance {
  InstanceData instance;
  json digests;  // per input component
};

struct InstancePaths {
  std::optional<std::filesystem::path> bundle;
  std::optional<std::string> group;
  std::optional<std::filesystem::path> action;
  std::optional<std::filesystem::path> module;
  std::optional<std::filesystem::path> f;
  std::optional<std::filesystem::path> h;
};

/// Explicit paths override the corresponding bundle entries.
LoadedInstance load_instance(const InstancePaths& paths);

json report_to_json(const StabilizationReport& r, const json& digests);
json foelner_report_to_json(const FoelnerReport& r, const json& digests);
json certificate_to_json(const MeanCertificate& c);
json instance_to_json(const InstanceData& inst);
json generated_to_json(const GenSpec& spec, const GeneratedInstance& gen);
json suite_to_json(const SuiteReport& r);

}  // namespace hu::io
