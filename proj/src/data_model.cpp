#include "codeprov/data_model.hpp"

#include <cctype>
#include <cstdio>
#include <regex>

namespace codeprov {

namespace {

template <typename E, std::size_t N>
using NameTable = std::array<std::pair<E, std::string_view>, N>;

constexpr NameTable<ProvenanceLabel, 3> kLabelNames{{
    {ProvenanceLabel::Human, "human"},
    {ProvenanceLabel::AI, "ai"},
    {ProvenanceLabel::Unknown, "unknown"},
}};

constexpr NameTable<LanguageId, 21> kLanguageNames{{
    {LanguageId::Python, "python"},
    {LanguageId::Java, "java"},
    {LanguageId::Cpp, "cpp"},
    {LanguageId::C, "c"},
    {LanguageId::CSharp, "csharp"},
    {LanguageId::JavaScript, "javascript"},
    {LanguageId::TypeScript, "typescript"},
    {LanguageId::Ruby, "ruby"},
    {LanguageId::Php, "php"},
    {LanguageId::Go, "go"},
    {LanguageId::Rust, "rust"},
    {LanguageId::Shell, "shell"},
    {LanguageId::Scala, "scala"},
    {LanguageId::Kotlin, "kotlin"},
    {LanguageId::Sql, "sql"},
    {LanguageId::Html, "html"},
    {LanguageId::Css, "css"},
    {LanguageId::Markdown, "markdown"},
    {LanguageId::Yaml, "yaml"},
    {LanguageId::JupyterNotebook, "jupyter"},
    {LanguageId::Other, "other"},
}};

constexpr NameTable<FileFunction, 5> kFileFunctionNames{{
    {FileFunction::Documentation, "documentation"},
    {FileFunction::CoreLogic, "core_logic"},
    {FileFunction::TestCode, "test_code"},
    {FileFunction::ConfigData, "config_data"},
    {FileFunction::Other, "other"},
}};

constexpr NameTable<TechStack, 4> kTechStackNames{{
    {TechStack::DynamicScripting, "dynamic_scripting"},
    {TechStack::StaticSystem, "static_system"},
    {TechStack::Declarative, "declarative"},
    {TechStack::Other, "other"},
}};

constexpr NameTable<AppDomain, 9> kAppDomainNames{{
    {AppDomain::WebApplication, "web_application"},
    {AppDomain::LanguageRuntime, "language_runtime"},
    {AppDomain::DataManagement, "data_management"},
    {AppDomain::DataScience, "data_science"},
    {AppDomain::NetworkSecurity, "network_security"},
    {AppDomain::Operations, "operations"},
    {AppDomain::ClientGraphics, "client_graphics"},
    {AppDomain::PlatformsSystems, "platforms_systems"},
    {AppDomain::Others, "others"},
}};

constexpr NameTable<AppDomain, 9> kAppDomainDisplay{{
    {AppDomain::WebApplication, "Web and application development"},
    {AppDomain::LanguageRuntime, "Language and runtime"},
    {AppDomain::DataManagement, "Data management and persistence"},
    {AppDomain::DataScience, "Data Science and Engineering"},
    {AppDomain::NetworkSecurity, "Network, Distribution and Security"},
    {AppDomain::Operations, "Operations and reliability"},
    {AppDomain::ClientGraphics, "Client and Graphics"},
    {AppDomain::PlatformsSystems, "Platforms and Systems"},
    {AppDomain::Others, "Others"},
}};

constexpr NameTable<ChangeKind, 3> kChangeKindNames{{
    {ChangeKind::Added, "added"},
    {ChangeKind::Modified, "modified"},
    {ChangeKind::Deleted, "deleted"},
}};

constexpr NameTable<AttackVector, 4> kAttackVectorNames{{
    {AttackVector::Network, "network"},
    {AttackVector::Adjacent, "adjacent"},
    {AttackVector::Local, "local"},
    {AttackVector::Physical, "physical"},
}};

constexpr NameTable<Source, 2> kSourceNames{{
    {Source::Human, "human"},
    {Source::AI, "ai"},
}};

template <typename E, std::size_t N>
std::string_view lookup(const NameTable<E, N>& table, E v) {
  for (const auto& [value, name] : table)
    if (value == v) return name;
  return "other";
}

template <typename E, std::size_t N>
std::optional<E> reverse(const NameTable<E, N>& table, std::string_view s) {
  for (const auto& [value, name] : table)
    if (name == s) return value;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(ProvenanceLabel v) { return lookup(kLabelNames, v); }
std::string_view to_string(LanguageId v) { return lookup(kLanguageNames, v); }
std::string_view to_string(FileFunction v) { return lookup(kFileFunctionNames, v); }
std::string_view to_string(TechStack v) { return lookup(kTechStackNames, v); }
std::string_view to_string(AppDomain v) { return lookup(kAppDomainNames, v); }
std::string_view to_string(ChangeKind v) { return lookup(kChangeKindNames, v); }
std::string_view to_string(AttackVector v) { return lookup(kAttackVectorNames, v); }
std::string_view to_string(Source v) { return lookup(kSourceNames, v); }
std::string_view display_name(AppDomain v) { return lookup(kAppDomainDisplay, v); }

std::optional<ProvenanceLabel> parse_label(std::string_view s) { return reverse(kLabelNames, s); }
std::optional<LanguageId> parse_language(std::string_view s) { return reverse(kLanguageNames, s); }
std::optional<FileFunction> parse_file_function(std::string_view s) { return reverse(kFileFunctionNames, s); }
std::optional<TechStack> parse_tech_stack(std::string_view s) { return reverse(kTechStackNames, s); }
std::optional<AppDomain> parse_app_domain(std::string_view s) { return reverse(kAppDomainNames, s); }
std::optional<ChangeKind> parse_change_kind(std::string_view s) { return reverse(kChangeKindNames, s); }
std::optional<AttackVector> parse_attack_vector(std::string_view s) { return reverse(kAttackVectorNames, s); }
std::optional<Source> parse_source(std::string_view s) { return reverse(kSourceNames, s); }

bool is_cve_id(std::string_view s) {
  static const std::regex re(R"(CVE-\d{4}-\d{4,})");
  return std::regex_match(s.begin(), s.end(), re);
}

bool is_cwe_id(std::string_view s) {
  static const std::regex re(R"(CWE-\d+)");
  return std::regex_match(s.begin(), s.end(), re);
}

namespace {

bool is_valid_utf8(std::string_view s) { return !sanitize_utf8(s).second; }

}  // namespace

std::optional<std::string> validate(const CodeSample& s) {
  if (s.id.empty()) return "sample id is empty";
  if (!is_valid_utf8(s.content)) return "sample '" + s.id + "' content is not valid UTF-8";
  if (s.label == ProvenanceLabel::Human && !s.origin.repo)
    return "human sample '" + s.id + "' lacks repository origin";
  if (s.label == ProvenanceLabel::AI && !s.origin.generator)
    return "AI sample '" + s.id + "' lacks generator model";
  return std::nullopt;
}

std::optional<std::string> validate(const CommitFileChange& c) {
  const std::string id = c.id();
  if (c.repo.empty() || c.commit.empty() || c.path.empty()) return "change '" + id + "' has empty repo/commit/path";
  for (char ch : c.commit)
    if (!std::isxdigit(static_cast<unsigned char>(ch))) return "change '" + id + "' commit is not a hex hash";
  switch (c.change_kind) {
    case ChangeKind::Added:
      if (c.pre_content || !c.post_content) return "added change '" + id + "' must have only post content";
      break;
    case ChangeKind::Deleted:
      if (!c.pre_content || c.post_content) return "deleted change '" + id + "' must have only pre content";
      break;
    case ChangeKind::Modified:
      if (!c.pre_content || !c.post_content) return "modified change '" + id + "' must have both contents";
      break;
  }
  return std::nullopt;
}

std::optional<std::string> validate(const VulnRecord& v) {
  if (!is_cve_id(v.cve_id)) return "malformed CVE id '" + v.cve_id + "'";
  if (!is_cwe_id(v.cwe_id)) return v.cve_id + ": malformed CWE id '" + v.cwe_id + "'";
  if (!(v.cvss_base >= 0.0 && v.cvss_base <= 10.0))
    return v.cve_id + ": cvss_base " + std::to_string(v.cvss_base) + " outside [0, 10]";
  if (v.vulnerable_fragment == v.patched_fragment) return v.cve_id + ": vulnerable and patched fragments are identical";
  return std::nullopt;
}

std::pair<std::string, bool> sanitize_utf8(std::string_view bytes) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(bytes.size());
  bool lossy = false;
  std::size_t i = 0;
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(bytes[k]); };
  while (i < bytes.size()) {
    const unsigned char b = byte(i);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (b < 0x80) {
      out.push_back(static_cast<char>(b));
      ++i;
      continue;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2;
      cp = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
      cp = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
      cp = b & 0x07;
    }
    bool ok = len != 0 && i + len <= bytes.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      if ((byte(i + k) & 0xC0) != 0x80) ok = false;
      else cp = (cp << 6) | (byte(i + k) & 0x3F);
    }
    if (ok) {
      // Reject overlong forms, surrogates and out-of-range code points.
      static constexpr std::uint32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
      if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) ok = false;
    }
    if (ok) {
      out.append(bytes.substr(i, len));
      i += len;
    } else {
      out.append(kReplacement);
      lossy = true;
      ++i;
    }
  }
  return {std::move(out), lossy};
}

std::u32string decode_utf8(std::string_view text) {
  const std::string clean = sanitize_utf8(text).first;
  std::u32string out;
  out.reserve(clean.size());
  for (std::size_t i = 0; i < clean.size();) {
    const auto b = static_cast<unsigned char>(clean[i]);
    std::size_t len = b < 0x80 ? 1 : (b & 0xE0) == 0xC0 ? 2 : (b & 0xF0) == 0xE0 ? 3 : 4;
    std::uint32_t cp = len == 1 ? b : len == 2 ? (b & 0x1F) : len == 3 ? (b & 0x0F) : (b & 0x07);
    for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(clean[i + k]) & 0x3F);
    out.push_back(static_cast<char32_t>(cp));
    i += len;
  }
  return out;
}

// Howard Hinnant's civil calendar algorithms.
std::int64_t days_from_civil(int year, unsigned month, unsigned day) {
  year -= month <= 2;
  const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

namespace {

struct Civil {
  int year;
  unsigned month;
  unsigned day;
};

Civil civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {static_cast<int>(y + (m <= 2)), m, d};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

}  // namespace

std::optional<std::int64_t> parse_day(std::string_view text) {
  int y = 0;
  unsigned m = 0, d = 0;
  char tail = 0;
  const std::string s(text);
  if (std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3 || s.size() != 10) return std::nullopt;
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  const std::int64_t days = days_from_civil(y, m, d);
  const Civil back = civil_from_days(days);
  if (back.month != m || back.day != d) return std::nullopt;
  return days;
}

std::optional<std::int64_t> parse_utc(std::string_view text) {
  if (text.size() == 10) {
    auto day = parse_day(text);
    if (!day) return std::nullopt;
    return *day * 86400;
  }
  if (text.size() < 19 || text[10] != 'T') return std::nullopt;
  auto day = parse_day(text.substr(0, 10));
  if (!day) return std::nullopt;
  unsigned hh = 0, mm = 0, ss = 0;
  const std::string t(text.substr(11));
  char tail[4] = {0};
  const int n = std::sscanf(t.c_str(), "%2u:%2u:%2u%3s", &hh, &mm, &ss, tail);
  if (n < 3 || hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  if (n == 4 && std::string_view(tail) != "Z") return std::nullopt;
  return *day * 86400 + hh * 3600 + mm * 60 + ss;
}

std::string format_day(std::int64_t days) {
  const Civil c = civil_from_days(days);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", c.year, c.month, c.day);
  return buf;
}

std::string format_utc(std::int64_t seconds) {
  const std::int64_t days = floor_div(seconds, 86400);
  const std::int64_t rem = seconds - days * 86400;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", format_day(days).c_str(), static_cast<int>(rem / 3600),
                static_cast<int>(rem % 3600 / 60), static_cast<int>(rem % 60));
  return buf;
}

std::int64_t quarter_index(std::int64_t seconds) {
  const Civil c = civil_from_days(floor_div(seconds, 86400));
  return static_cast<std::int64_t>(c.year) * 4 + (c.month - 1) / 3;
}

std::string quarter_label(std::int64_t index) {
  const std::int64_t year = floor_div(index, 4);
  return std::to_string(year) + "Q" + std::to_string(index - year * 4 + 1);
}

std::string quarter_of(std::int64_t seconds) { return quarter_label(quarter_index(seconds)); }

}  // namespace codeprov
