#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace codeprov {

inline constexpr int kSchemaVersion = 1;

enum class ProvenanceLabel { Human, AI, Unknown };

enum class LanguageId {
  Python,
  Java,
  Cpp,
  C,
  CSharp,
  JavaScript,
  TypeScript,
  Ruby,
  Php,
  Go,
  Rust,
  Shell,
  Scala,
  Kotlin,
  Sql,
  Html,
  Css,
  Markdown,
  Yaml,
  JupyterNotebook,
  Other,
};

enum class FileFunction { Documentation, CoreLogic, TestCode, ConfigData, Other };

enum class TechStack { DynamicScripting, StaticSystem, Declarative, Other };

enum class AppDomain {
  WebApplication,
  LanguageRuntime,
  DataManagement,
  DataScience,
  NetworkSecurity,
  Operations,
  ClientGraphics,
  PlatformsSystems,
  Others,
};

enum class ChangeKind { Added, Modified, Deleted };

enum class AttackVector { Network, Adjacent, Local, Physical };

/// Human or AI, for vulnerability introduction/fix attribution.
enum class Source { Human, AI };

// Every enumeration value has exactly one lowercase canonical string.
std::string_view to_string(ProvenanceLabel v);
std::string_view to_string(LanguageId v);
std::string_view to_string(FileFunction v);
std::string_view to_string(TechStack v);
std::string_view to_string(AppDomain v);
std::string_view to_string(ChangeKind v);
std::string_view to_string(AttackVector v);
std::string_view to_string(Source v);

/// Human-readable domain names as they appear in the application-domain table.
std::string_view display_name(AppDomain v);

std::optional<ProvenanceLabel> parse_label(std::string_view s);
std::optional<LanguageId> parse_language(std::string_view s);
std::optional<FileFunction> parse_file_function(std::string_view s);
std::optional<TechStack> parse_tech_stack(std::string_view s);
std::optional<AppDomain> parse_app_domain(std::string_view s);
std::optional<ChangeKind> parse_change_kind(std::string_view s);
std::optional<AttackVector> parse_attack_vector(std::string_view s);
std::optional<Source> parse_source(std::string_view s);

inline constexpr std::array kAllLanguages = {
    LanguageId::Python, LanguageId::Java,       LanguageId::Cpp,        LanguageId::C,
    LanguageId::CSharp, LanguageId::JavaScript, LanguageId::TypeScript, LanguageId::Ruby,
    LanguageId::Php,    LanguageId::Go,         LanguageId::Rust,       LanguageId::Shell,
    LanguageId::Scala,  LanguageId::Kotlin,     LanguageId::Sql,        LanguageId::Html,
    LanguageId::Css,    LanguageId::Markdown,   LanguageId::Yaml,       LanguageId::JupyterNotebook,
    LanguageId::Other};
inline constexpr std::array kAllAppDomains = {
    AppDomain::WebApplication,  AppDomain::LanguageRuntime, AppDomain::DataManagement,
    AppDomain::DataScience,     AppDomain::NetworkSecurity, AppDomain::Operations,
    AppDomain::ClientGraphics,  AppDomain::PlatformsSystems, AppDomain::Others};
inline constexpr std::array kAllFileFunctions = {FileFunction::Documentation, FileFunction::CoreLogic,
                                                 FileFunction::TestCode, FileFunction::ConfigData,
                                                 FileFunction::Other};
inline constexpr std::array kAllTechStacks = {TechStack::DynamicScripting, TechStack::StaticSystem,
                                              TechStack::Declarative, TechStack::Other};
inline constexpr std::array kAllAttackVectors = {AttackVector::Network, AttackVector::Adjacent,
                                                 AttackVector::Local, AttackVector::Physical};

struct OriginMeta {
  std::optional<std::string> repo;       // Human samples
  std::optional<std::string> generator;  // AI samples: generating model name
  std::optional<std::string> commit;
  std::optional<std::string> path;
  std::optional<std::int64_t> timestamp;  // UTC seconds
  std::optional<std::string> task;        // AI samples: task id from the task matrix
  std::optional<AppDomain> app_domain;
  bool lossy_utf8 = false;  // content had invalid UTF-8 replaced on ingestion

  friend bool operator==(const OriginMeta&, const OriginMeta&) = default;
};

struct CodeSample {
  std::string id;
  std::string content;
  LanguageId language = LanguageId::Other;
  ProvenanceLabel label = ProvenanceLabel::Unknown;
  OriginMeta origin;

  friend bool operator==(const CodeSample&, const CodeSample&) = default;
};

/// Pre/post contents of one file touched by one commit.
struct CommitFileChange {
  std::string repo;
  std::string commit;
  std::int64_t timestamp = 0;
  std::string path;
  std::optional<std::string> pre_content;
  std::optional<std::string> post_content;
  ChangeKind change_kind = ChangeKind::Modified;

  /// "<repo>@<commit>:<path>", the sample id used for this change downstream.
  std::string id() const { return repo + "@" + commit + ":" + path; }

  friend bool operator==(const CommitFileChange&, const CommitFileChange&) = default;
};

struct VulnRecord {
  std::string cve_id;
  std::string cwe_id;
  double cvss_base = 0.0;
  AttackVector attack_vector = AttackVector::Network;
  LanguageId language = LanguageId::Other;
  std::string vulnerable_fragment;
  std::string patched_fragment;
  Source intro_source = Source::Human;
  Source fix_source = Source::Human;
  std::int64_t disclosed_day = 0;  // days since 1970-01-01, UTC

  friend bool operator==(const VulnRecord&, const VulnRecord&) = default;
};

// Invariant checks. Return an error message, or nullopt when valid.
std::optional<std::string> validate(const CodeSample& s);
std::optional<std::string> validate(const CommitFileChange& c);
std::optional<std::string> validate(const VulnRecord& v);

bool is_cve_id(std::string_view s);
bool is_cwe_id(std::string_view s);

/// Replaces invalid UTF-8 sequences with U+FFFD. Second member is true when
/// anything was replaced.
std::pair<std::string, bool> sanitize_utf8(std::string_view bytes);

/// Decodes UTF-8 into code points; invalid bytes become U+FFFD.
std::u32string decode_utf8(std::string_view text);

// UTC calendar helpers.
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
/// Parses "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SS[Z]" into UTC seconds.
std::optional<std::int64_t> parse_utc(std::string_view text);
std::optional<std::int64_t> parse_day(std::string_view text);
std::string format_day(std::int64_t days);
std::string format_utc(std::int64_t seconds);
/// Calendar quarter label for a UTC timestamp, e.g. "2022Q1".
std::string quarter_of(std::int64_t seconds);
/// Quarter index (year * 4 + q - 1) and its inverse label.
std::int64_t quarter_index(std::int64_t seconds);
std::string quarter_label(std::int64_t index);

}  // namespace codeprov
