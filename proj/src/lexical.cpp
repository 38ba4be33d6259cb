#include "codeprov/lexical.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "codeprov/error.hpp"
#include "embedded_config.hpp"

namespace codeprov {

namespace {

struct ExtensionEntry {
  std::string_view ext;
  LanguageId language;
};

constexpr std::array kExtensions = {
    ExtensionEntry{".py", LanguageId::Python},      ExtensionEntry{".pyw", LanguageId::Python},
    ExtensionEntry{".java", LanguageId::Java},      ExtensionEntry{".cpp", LanguageId::Cpp},
    ExtensionEntry{".cc", LanguageId::Cpp},         ExtensionEntry{".cxx", LanguageId::Cpp},
    ExtensionEntry{".hpp", LanguageId::Cpp},        ExtensionEntry{".hh", LanguageId::Cpp},
    ExtensionEntry{".hxx", LanguageId::Cpp},        ExtensionEntry{".c", LanguageId::C},
    ExtensionEntry{".h", LanguageId::C},            ExtensionEntry{".cs", LanguageId::CSharp},
    ExtensionEntry{".js", LanguageId::JavaScript},  ExtensionEntry{".mjs", LanguageId::JavaScript},
    ExtensionEntry{".cjs", LanguageId::JavaScript}, ExtensionEntry{".jsx", LanguageId::JavaScript},
    ExtensionEntry{".ts", LanguageId::TypeScript},  ExtensionEntry{".tsx", LanguageId::TypeScript},
    ExtensionEntry{".rb", LanguageId::Ruby},        ExtensionEntry{".php", LanguageId::Php},
    ExtensionEntry{".go", LanguageId::Go},          ExtensionEntry{".rs", LanguageId::Rust},
    ExtensionEntry{".sh", LanguageId::Shell},       ExtensionEntry{".bash", LanguageId::Shell},
    ExtensionEntry{".zsh", LanguageId::Shell},      ExtensionEntry{".scala", LanguageId::Scala},
    ExtensionEntry{".kt", LanguageId::Kotlin},      ExtensionEntry{".kts", LanguageId::Kotlin},
    ExtensionEntry{".sql", LanguageId::Sql},        ExtensionEntry{".html", LanguageId::Html},
    ExtensionEntry{".htm", LanguageId::Html},       ExtensionEntry{".css", LanguageId::Css},
    ExtensionEntry{".scss", LanguageId::Css},       ExtensionEntry{".less", LanguageId::Css},
    ExtensionEntry{".md", LanguageId::Markdown},    ExtensionEntry{".markdown", LanguageId::Markdown},
    ExtensionEntry{".yaml", LanguageId::Yaml},      ExtensionEntry{".yml", LanguageId::Yaml},
    ExtensionEntry{".ipynb", LanguageId::JupyterNotebook},
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view basename_of(std::string_view path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

std::vector<std::string> path_components(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto slash = path.find('/', start);
    const auto end = slash == std::string_view::npos ? path.size() : slash;
    if (end > start) parts.push_back(lower(path.substr(start, end - start)));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return parts;
}

LanguageId from_shebang(std::string_view content) {
  if (!content.starts_with("#!")) return LanguageId::Other;
  const std::string line = lower(content.substr(0, content.find('\n')));
  // "#!/usr/bin/env python3" and "#!/usr/bin/python" both name the interpreter last.
  std::string interp;
  {
    std::size_t pos = line.find_last_of('/');
    std::string rest = pos == std::string::npos ? line.substr(2) : line.substr(pos + 1);
    if (rest.starts_with("env ")) rest = rest.substr(4);
    interp = rest.substr(0, rest.find(' '));
  }
  if (interp.starts_with("python")) return LanguageId::Python;
  if (interp == "sh" || interp == "bash" || interp == "zsh" || interp == "dash" || interp == "ksh")
    return LanguageId::Shell;
  if (interp == "node" || interp == "nodejs") return LanguageId::JavaScript;
  if (interp.starts_with("ruby")) return LanguageId::Ruby;
  if (interp.starts_with("php")) return LanguageId::Php;
  return LanguageId::Other;
}

}  // namespace

std::string extension_of(std::string_view path) {
  const std::string_view base = basename_of(path);
  const auto dot = base.find_last_of('.');
  if (dot == std::string_view::npos || dot == 0) return {};
  return lower(base.substr(dot));
}

LanguageId detect_language(std::string_view path, std::optional<std::string_view> content) {
  const std::string ext = extension_of(path);
  if (ext.empty()) return content ? from_shebang(*content) : LanguageId::Other;
  for (const auto& e : kExtensions)
    if (e.ext == ext) return e.language;
  return LanguageId::Other;
}

bool is_code_extension(std::string_view ext) {
  for (const auto& e : kExtensions) {
    if (e.ext != ext) continue;
    return e.language != LanguageId::Markdown && e.language != LanguageId::Yaml;
  }
  return false;
}

FileFunction classify_file_function(std::string_view path) {
  const std::string ext = extension_of(path);
  const auto parts = path_components(path);
  const std::string base = parts.empty() ? std::string() : parts.back();
  const auto in_dir = [&](std::initializer_list<std::string_view> names) {
    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
      for (auto n : names)
        if (parts[i] == n) return true;
    return false;
  };

  static constexpr std::array kDocExt = {".md", ".rst", ".txt", ".adoc"};
  if (std::find(kDocExt.begin(), kDocExt.end(), ext) != kDocExt.end() || in_dir({"docs"}))
    return FileFunction::Documentation;

  const bool code = is_code_extension(ext);
  if (in_dir({"test", "tests", "spec", "__tests__"})) return FileFunction::TestCode;
  if (code && (base.find("test") != std::string::npos || base.find("spec") != std::string::npos))
    return FileFunction::TestCode;

  static constexpr std::array kConfigExt = {".json", ".yaml", ".yml",  ".toml", ".ini",
                                            ".xml",  ".csv",  ".lock", ".cfg",  ".properties"};
  if (std::find(kConfigExt.begin(), kConfigExt.end(), ext) != kConfigExt.end()) return FileFunction::ConfigData;

  if (code) return FileFunction::CoreLogic;
  return FileFunction::Other;
}

TechStack classify_tech_stack(LanguageId language) {
  switch (language) {
    case LanguageId::Python:
    case LanguageId::JavaScript:
    case LanguageId::TypeScript:
    case LanguageId::Ruby:
    case LanguageId::Php:
    case LanguageId::Shell:
    case LanguageId::JupyterNotebook:
      return TechStack::DynamicScripting;
    case LanguageId::C:
    case LanguageId::Cpp:
    case LanguageId::Rust:
    case LanguageId::Java:
    case LanguageId::CSharp:
    case LanguageId::Go:
    case LanguageId::Scala:
    case LanguageId::Kotlin:
      return TechStack::StaticSystem;
    case LanguageId::Html:
    case LanguageId::Css:
    case LanguageId::Sql:
    case LanguageId::Markdown:
    case LanguageId::Yaml:
      return TechStack::Declarative;
    case LanguageId::Other:
      break;
  }
  return TechStack::Other;
}

namespace {

struct DomainKeywords {
  AppDomain domain;
  std::vector<std::string_view> keywords;
};

const std::vector<DomainKeywords>& domain_table() {
  static const std::vector<DomainKeywords> table = {
      {AppDomain::WebApplication,
       {"http", "web", "www", "route", "router", "api", "rest", "server", "html", "css", "frontend", "backend",
        "django", "flask", "express", "rails", "react", "vue", "angular", "controller", "template", "cms", "blog",
        "shop", "ecommerce"}},
      {AppDomain::LanguageRuntime,
       {"compiler", "parser", "lexer", "interpreter", "runtime", "vm", "bytecode", "ast", "jit", "grammar",
        "language", "lang", "repl"}},
      {AppDomain::DataManagement,
       {"database", "db", "sql", "sqlite", "mysql", "postgres", "mongo", "redis", "orm", "storage", "store", "cache",
        "persist", "query", "index", "migration", "schema", "leveldb", "rocksdb"}},
      {AppDomain::DataScience,
       {"data", "dataset", "pandas", "numpy", "ml", "learn", "model", "train", "neural", "tensor", "etl", "pipeline",
        "analytics", "stats", "statistic", "science", "notebook", "spark", "hadoop"}},
      {AppDomain::NetworkSecurity,
       {"network", "net", "socket", "tcp", "udp", "rpc", "grpc", "p2p", "crypto", "cipher", "auth", "oauth",
        "security", "secure", "tls", "ssl", "distributed", "cluster", "consensus", "raft", "proxy", "firewall"}},
      {AppDomain::Operations,
       {"deploy", "docker", "kubernetes", "k8s", "helm", "monitor", "logging", "log", "metrics", "ci", "ops",
        "devops", "backup", "health", "ansible", "terraform", "alert", "prometheus"}},
      {AppDomain::ClientGraphics,
       {"gui", "ui", "render", "opengl", "vulkan", "graphics", "game", "widget", "canvas", "shader", "sprite",
        "window", "desktop", "android", "ios", "mobile", "qt", "gtk"}},
      {AppDomain::PlatformsSystems,
       {"kernel", "driver", "os", "embedded", "syscall", "filesystem", "fs", "firmware", "boot", "allocator",
        "memory", "arch", "hal", "platform", "system"}},
  };
  return table;
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  const auto flush = [&] {
    if (!cur.empty()) tokens.push_back(lower(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (!std::isalnum(c)) {
      flush();
      continue;
    }
    // camelCase boundary
    if (std::isupper(c) && !cur.empty() && std::islower(static_cast<unsigned char>(cur.back()))) flush();
    cur.push_back(static_cast<char>(c));
  }
  flush();
  return tokens;
}

bool keyword_hit(const std::string& token, std::string_view keyword) {
  if (token == keyword) return true;
  return keyword.size() >= 4 && token.starts_with(keyword);
}

}  // namespace

AppDomain classify_app_domain_text(std::string_view text) {
  const auto tokens = word_tokens(text);
  for (const auto& entry : domain_table())
    for (const auto& token : tokens)
      for (auto kw : entry.keywords)
        if (keyword_hit(token, kw)) return entry.domain;
  return AppDomain::Others;
}

AppDomain classify_app_domain(const CodeSample& sample) {
  const OriginMeta& o = sample.origin;
  if (o.app_domain) return *o.app_domain;
  std::string text;
  if (o.path) text += *o.path + " ";
  if (o.repo) {
    std::string_view repo = *o.repo;
    if (repo.ends_with(".git")) repo.remove_suffix(4);
    while (repo.ends_with("/")) repo.remove_suffix(1);
    text += std::string(basename_of(repo)) + " ";
  }
  if (o.task) text += *o.task;
  return classify_app_domain_text(text);
}

// ---------------------------------------------------------------------------

ScanResult blank_comments_and_strings(std::string_view content, const LexicalGrammar& g) {
  ScanResult r;
  r.code.assign(content);
  const std::size_t n = content.size();
  bool line_has_code = false;
  bool line_has_comment = false;
  const auto end_line = [&] {
    if (line_has_comment && !line_has_code) ++r.comment_lines;
    line_has_code = line_has_comment = false;
  };
  const auto blank = [&](std::size_t from, std::size_t to, bool comment) {
    for (std::size_t k = from; k < to; ++k) {
      const char c = content[k];
      if (c == '\n') {
        end_line();
        continue;
      }
      if (comment) {
        line_has_comment = true;
        if (!std::isspace(static_cast<unsigned char>(c))) ++r.comment_chars;
      } else {
        line_has_code = true;
      }
      r.code[k] = ' ';
    }
  };
  const auto at = [&](std::size_t i, std::string_view tok) { return content.substr(i, tok.size()) == tok; };

  std::size_t i = 0;
  while (i < n) {
    const char c = content[i];
    if (c == '\n') {
      end_line();
      ++i;
      continue;
    }
    bool consumed = false;
    for (const auto& [open, close] : g.block_comments) {
      if (!at(i, open)) continue;
      const auto j = content.find(close, i + open.size());
      const std::size_t end = j == std::string_view::npos ? n : j + close.size();
      blank(i, end, true);
      i = end;
      consumed = true;
      break;
    }
    if (consumed) continue;
    for (const auto& marker : g.line_comments) {
      if (!at(i, marker)) continue;
      if (marker == "#" && g.hash_comment_at_word_start && i > 0 &&
          !std::isspace(static_cast<unsigned char>(content[i - 1])))
        continue;
      const auto j = content.find('\n', i);
      const std::size_t end = j == std::string_view::npos ? n : j;
      blank(i, end, true);
      i = end;
      consumed = true;
      break;
    }
    if (consumed) continue;
    for (const auto& d : g.strings) {
      if (!at(i, d.open)) continue;
      std::size_t j = i + d.open.size();
      std::size_t end = n;
      while (j < n) {
        if (d.escapes && content[j] == '\\') {
          j += 2;
          continue;
        }
        if (at(j, d.close)) {
          end = j + d.close.size();
          break;
        }
        if (content[j] == '\n' && !d.multiline) {
          end = j;
          break;
        }
        ++j;
      }
      end = std::min(end, n);
      blank(i, end, false);
      i = end;
      consumed = true;
      break;
    }
    if (consumed) continue;
    if (!std::isspace(static_cast<unsigned char>(c))) line_has_code = true;
    ++i;
  }
  end_line();
  return r;
}

LcsRuleSet::LcsRuleSet(std::string name, LexicalGrammar grammar, std::vector<std::string> control_flow,
                       std::vector<std::string> logical_ops, bool case_insensitive)
    : name_(std::move(name)),
      grammar_(std::move(grammar)),
      control_flow_src_(std::move(control_flow)),
      logical_ops_src_(std::move(logical_ops)) {
  if (control_flow_src_.empty() || logical_ops_src_.empty())
    throw DataError("LCS rule set '" + name_ + "' has an empty pattern list");
  auto flags = std::regex::ECMAScript | std::regex::optimize;
  if (case_insensitive) flags |= std::regex::icase;
  const auto compile = [&](const std::string& src) {
    try {
      return std::regex(src, flags);
    } catch (const std::regex_error& e) {
      throw DataError("LCS rule set '" + name_ + "': bad pattern '" + src + "': " + e.what());
    }
  };
  for (const auto& p : control_flow_src_) control_flow_.push_back(compile(p));
  for (const auto& p : logical_ops_src_) logical_ops_.push_back(compile(p));
}

namespace {

std::int64_t count_matches(const std::vector<std::regex>& patterns, const std::string& code) {
  std::int64_t total = 0;
  for (const auto& re : patterns)
    total += std::distance(std::sregex_iterator(code.begin(), code.end(), re), std::sregex_iterator());
  return total;
}

LcsRuleSet parse_rule_set(const std::string& name, const nlohmann::json& j) {
  LexicalGrammar g;
  g.line_comments = j.value("line_comments", std::vector<std::string>{});
  for (const auto& pair : j.value("block_comments", nlohmann::json::array())) {
    if (!pair.is_array() || pair.size() != 2) throw DataError("LCS rules '" + name + "': block comment must be a pair");
    g.block_comments.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }
  for (const auto& s : j.value("strings", nlohmann::json::array())) {
    g.strings.push_back({s.at("open").get<std::string>(), s.at("close").get<std::string>(), s.value("escapes", true),
                         s.value("multiline", true)});
  }
  g.hash_comment_at_word_start = j.value("hash_comment_at_word_start", false);
  return LcsRuleSet(name, std::move(g), j.at("control_flow").get<std::vector<std::string>>(),
                    j.at("logical_ops").get<std::vector<std::string>>(), j.value("case_insensitive", false));
}

}  // namespace

std::int64_t LcsRuleSet::count_control_flow(const std::string& code) const { return count_matches(control_flow_, code); }
std::int64_t LcsRuleSet::count_logical_ops(const std::string& code) const { return count_matches(logical_ops_, code); }

LcsRules LcsRules::from_json(const nlohmann::json& doc) {
  LcsRules rules;
  try {
    rules.version_ = doc.at("version").get<int>();
    for (const auto& [name, body] : doc.at("languages").items()) {
      if (name == "generic") {
        rules.generic_.emplace(parse_rule_set(name, body));
        continue;
      }
      auto lang = parse_language(name);
      if (!lang) throw DataError("LCS rules: unknown language '" + name + "'");
      rules.rules_.emplace(*lang, parse_rule_set(name, body));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("LCS rules: ") + e.what());
  }
  if (!rules.generic_) throw DataError("LCS rules: missing 'generic' fallback rule set");
  return rules;
}

LcsRules LcsRules::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open LCS rules file " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("LCS rules file " + path.string() + ": " + e.what());
  }
}

const LcsRules& LcsRules::defaults() {
  static const LcsRules rules = from_json(nlohmann::json::parse(embedded::lcs_rules_json()));
  return rules;
}

const LcsRuleSet& LcsRules::for_language(LanguageId language) const {
  if (auto it = rules_.find(language); it != rules_.end()) return it->second;
  return *generic_;
}

std::string LexicalProfile::lcs_string() const {
  const std::int64_t h = lcs_halves();
  return std::to_string(h / 2) + (h % 2 != 0 ? ".5" : "");
}

LexicalProfile lexical_profile(std::string_view content, LanguageId language, const LcsRules& rules) {
  const LcsRuleSet& rs = rules.for_language(language);
  const ScanResult scan = blank_comments_and_strings(content, rs.grammar());
  return {rs.count_control_flow(scan.code), rs.count_logical_ops(scan.code)};
}

}  // namespace codeprov
