#include "codeprov/records.hpp"

#include <ostream>
#include <unordered_set>

#include "codeprov/error.hpp"

namespace codeprov {

using nlohmann::json;

Decimal decimal_from_json(const nlohmann::json& j, std::string_view what) {
  try {
    if (j.is_string()) return Decimal::parse(j.get<std::string>());
    if (j.is_number_integer()) return Decimal::from_int(j.get<std::int64_t>());
    if (j.is_number()) return Decimal::from_double(j.get<double>());
  } catch (const std::exception& e) {
    throw DataError(std::string(what) + ": " + e.what());
  }
  throw DataError(std::string(what) + ": expected a number");
}

std::string dump_line(const ordered_json& j) { return j.dump(-1, ' ', false, json::error_handler_t::strict); }

ordered_json to_json(const CodeSample& s) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["id"] = s.id;
  j["label"] = to_string(s.label);
  j["language"] = to_string(s.language);
  j["content"] = s.content;
  ordered_json o = ordered_json::object();
  const OriginMeta& m = s.origin;
  if (m.repo) o["repo"] = *m.repo;
  if (m.generator) o["generator"] = *m.generator;
  if (m.commit) o["commit"] = *m.commit;
  if (m.path) o["path"] = *m.path;
  if (m.timestamp) o["timestamp"] = *m.timestamp;
  if (m.task) o["task"] = *m.task;
  if (m.app_domain) o["app_domain"] = to_string(*m.app_domain);
  if (m.lossy_utf8) o["lossy_utf8"] = true;
  j["origin"] = std::move(o);
  return j;
}

ordered_json to_json(const CommitFileChange& c) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["repo"] = c.repo;
  j["commit"] = c.commit;
  j["timestamp"] = c.timestamp;
  j["path"] = c.path;
  j["change_kind"] = to_string(c.change_kind);
  if (c.pre_content) j["pre_content"] = *c.pre_content;
  if (c.post_content) j["post_content"] = *c.post_content;
  return j;
}

ordered_json to_json(const VulnRecord& v) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["cve_id"] = v.cve_id;
  j["cwe_id"] = v.cwe_id;
  j["cvss_base"] = v.cvss_base;
  j["attack_vector"] = to_string(v.attack_vector);
  j["language"] = to_string(v.language);
  j["intro_source"] = to_string(v.intro_source);
  j["fix_source"] = to_string(v.fix_source);
  j["disclosed"] = format_day(v.disclosed_day);
  j["vulnerable_fragment"] = v.vulnerable_fragment;
  j["patched_fragment"] = v.patched_fragment;
  return j;
}

namespace {

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw DataError(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw DataError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw DataError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::int64_t int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw DataError(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

void check_schema(const json& j) {
  if (!j.is_object()) throw DataError("line is not a JSON object");
  const json& v = field(j, "schema");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
    throw DataError("unsupported schema version " + v.dump());
}

template <typename E, typename Parse>
E strict_enum(const json& j, const char* key, Parse parse) {
  const std::string s = string_field(j, key);
  auto v = parse(s);
  if (!v) throw DataError(std::string("unknown ") + key + " '" + s + "'");
  return *v;
}

template <typename E, typename Parse>
E open_enum(const json& j, const char* key, Parse parse, E fallback, std::vector<std::string>& warnings) {
  const std::string s = string_field(j, key);
  auto v = parse(s);
  if (!v) {
    warnings.push_back(std::string("unknown ") + key + " '" + s + "' mapped to '" + std::string(to_string(fallback)) + "'");
    return fallback;
  }
  return *v;
}

void throw_if_invalid(const std::optional<std::string>& problem) {
  if (problem) throw DataError(*problem);
}

}  // namespace

template <>
CodeSample record_from_json<CodeSample>(const json& j, std::vector<std::string>& warnings) {
  check_schema(j);
  CodeSample s;
  s.id = string_field(j, "id");
  s.label = open_enum(j, "label", parse_label, ProvenanceLabel::Unknown, warnings);
  s.language = open_enum(j, "language", parse_language, LanguageId::Other, warnings);
  s.content = string_field(j, "content");
  if (auto it = j.find("origin"); it != j.end()) {
    const json& o = *it;
    if (!o.is_object()) throw DataError("field 'origin' must be an object");
    s.origin.repo = optional_string(o, "repo");
    s.origin.generator = optional_string(o, "generator");
    s.origin.commit = optional_string(o, "commit");
    s.origin.path = optional_string(o, "path");
    if (o.contains("timestamp")) s.origin.timestamp = int_field(o, "timestamp");
    s.origin.task = optional_string(o, "task");
    if (o.contains("app_domain"))
      s.origin.app_domain = open_enum(o, "app_domain", parse_app_domain, AppDomain::Others, warnings);
    if (auto lossy = o.find("lossy_utf8"); lossy != o.end()) {
      if (!lossy->is_boolean()) throw DataError("field 'lossy_utf8' must be a boolean");
      s.origin.lossy_utf8 = lossy->get<bool>();
    }
  }
  throw_if_invalid(validate(s));
  return s;
}

template <>
CommitFileChange record_from_json<CommitFileChange>(const json& j, std::vector<std::string>&) {
  check_schema(j);
  CommitFileChange c;
  c.repo = string_field(j, "repo");
  c.commit = string_field(j, "commit");
  c.timestamp = int_field(j, "timestamp");
  c.path = string_field(j, "path");
  c.change_kind = strict_enum<ChangeKind>(j, "change_kind", parse_change_kind);
  c.pre_content = optional_string(j, "pre_content");
  c.post_content = optional_string(j, "post_content");
  throw_if_invalid(validate(c));
  return c;
}

template <>
VulnRecord record_from_json<VulnRecord>(const json& j, std::vector<std::string>& warnings) {
  check_schema(j);
  VulnRecord v;
  v.cve_id = string_field(j, "cve_id");
  v.cwe_id = string_field(j, "cwe_id");
  const json& cvss = field(j, "cvss_base");
  if (!cvss.is_number()) throw DataError("field 'cvss_base' must be a number");
  v.cvss_base = cvss.get<double>();
  v.attack_vector = strict_enum<AttackVector>(j, "attack_vector", parse_attack_vector);
  v.language = open_enum(j, "language", parse_language, LanguageId::Other, warnings);
  v.intro_source = strict_enum<Source>(j, "intro_source", parse_source);
  v.fix_source = strict_enum<Source>(j, "fix_source", parse_source);
  const std::string disclosed = string_field(j, "disclosed");
  auto day = parse_day(disclosed);
  if (!day) throw DataError("malformed disclosed date '" + disclosed + "'");
  v.disclosed_day = *day;
  v.vulnerable_fragment = string_field(j, "vulnerable_fragment");
  v.patched_fragment = string_field(j, "patched_fragment");
  throw_if_invalid(validate(v));
  return v;
}

namespace {

std::string record_key(const CodeSample& s) { return s.id; }
std::string record_key(const CommitFileChange& c) { return c.id(); }
std::string record_key(const VulnRecord& v) { return v.cve_id; }

template <typename Record>
std::size_t write_all(std::span<const Record> records, std::ostream& out) {
  std::unordered_set<std::string> ids;
  for (const Record& r : records) {
    throw_if_invalid(validate(r));
    if constexpr (std::is_same_v<Record, CodeSample>) {
      if (!ids.insert(r.id).second) throw DataError("duplicate sample id '" + r.id + "'");
    }
  }
  for (const Record& r : records) out << dump_line(to_json(r)) << '\n';
  if (!out) throw DataError("write failure");
  return records.size();
}

template <typename Record>
ReadResult<Record> read_all(std::istream& in) {
  ReadResult<Record> result;
  std::unordered_set<std::string> ids;
  for_each_line(in, [&](std::size_t number, const std::string& text, bool lossy) {
    std::vector<std::string> warnings;
    try {
      json j = json::parse(text);
      Record r = record_from_json<Record>(j, warnings);
      if constexpr (std::is_same_v<Record, CodeSample>) {
        if (!ids.insert(r.id).second) throw DataError("duplicate sample id '" + r.id + "'");
        if (lossy) r.origin.lossy_utf8 = true;
      }
      if (lossy) warnings.push_back("invalid UTF-8 replaced in '" + record_key(r) + "'");
      result.records.push_back(std::move(r));
    } catch (const json::exception& e) {
      result.diagnostics.push_back({number, std::string("malformed JSON: ") + e.what()});
    } catch (const DataError& e) {
      result.diagnostics.push_back({number, e.what()});
    }
    for (auto& w : warnings) result.diagnostics.push_back({number, std::move(w)});
  });
  return result;
}

}  // namespace

std::size_t write_records(std::span<const CodeSample> records, std::ostream& out) { return write_all(records, out); }
std::size_t write_records(std::span<const CommitFileChange> records, std::ostream& out) {
  return write_all(records, out);
}
std::size_t write_records(std::span<const VulnRecord> records, std::ostream& out) { return write_all(records, out); }

template <>
ReadResult<CodeSample> read_records<CodeSample>(std::istream& in) {
  return read_all<CodeSample>(in);
}
template <>
ReadResult<CommitFileChange> read_records<CommitFileChange>(std::istream& in) {
  return read_all<CommitFileChange>(in);
}
template <>
ReadResult<VulnRecord> read_records<VulnRecord>(std::istream& in) {
  return read_all<VulnRecord>(in);
}

}  // namespace codeprov
