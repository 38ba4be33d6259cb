#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "codeprov/data_model.hpp"

namespace codeprov {

// ---------------------------------------------------------------------------
// Language identification and taxonomies

/// Lowercased extension including the dot (".py"), or empty.
std::string extension_of(std::string_view path);

/// Extension table lookup; extensionless files consult a "#!" first line.
LanguageId detect_language(std::string_view path, std::optional<std::string_view> content = std::nullopt);

/// True when the extension maps to a source-code language (not prose or data).
bool is_code_extension(std::string_view ext);

/// First-match path rules: documentation, tests, config/data, code, other.
FileFunction classify_file_function(std::string_view path);

TechStack classify_tech_stack(LanguageId language);

/// Keyword heuristic over free text (path, repository, task topic).
/// Domains are tried in table order; the first keyword hit wins.
AppDomain classify_app_domain_text(std::string_view text);

/// Uses origin.app_domain when set, else the keyword heuristic over
/// origin path, repository and task.
AppDomain classify_app_domain(const CodeSample& sample);

// ---------------------------------------------------------------------------
// Lexical Complexity Score

struct StringDelimiter {
  std::string open;
  std::string close;
  bool escapes = true;
  bool multiline = true;
};

struct LexicalGrammar {
  std::vector<std::string> line_comments;
  std::vector<std::pair<std::string, std::string>> block_comments;
  std::vector<StringDelimiter> strings;
  /// '#' starts a comment only at line start or after whitespace (shell).
  bool hash_comment_at_word_start = false;
};

/// Source text with comments and string literals replaced by spaces.
/// Newlines are preserved so line structure survives.
struct ScanResult {
  std::string code;
  std::size_t comment_chars = 0;  // non-whitespace characters inside comments
  std::size_t comment_lines = 0;  // lines whose only content is comment
};

ScanResult blank_comments_and_strings(std::string_view content, const LexicalGrammar& grammar);

class LcsRuleSet {
 public:
  LcsRuleSet(std::string name, LexicalGrammar grammar, std::vector<std::string> control_flow,
             std::vector<std::string> logical_ops, bool case_insensitive);

  const std::string& name() const { return name_; }
  const LexicalGrammar& grammar() const { return grammar_; }
  const std::vector<std::string>& control_flow_patterns() const { return control_flow_src_; }
  const std::vector<std::string>& logical_op_patterns() const { return logical_ops_src_; }

  std::int64_t count_control_flow(const std::string& code) const;
  std::int64_t count_logical_ops(const std::string& code) const;

 private:
  std::string name_;
  LexicalGrammar grammar_;
  std::vector<std::string> control_flow_src_;
  std::vector<std::string> logical_ops_src_;
  std::vector<std::regex> control_flow_;
  std::vector<std::regex> logical_ops_;
};

/// Per-language rule sets plus the generic fallback used for every language
/// without its own entry.
class LcsRules {
 public:
  /// Rules compiled into the binary from config/lcs_rules.json.
  static const LcsRules& defaults();
  static LcsRules from_json(const nlohmann::json& doc);
  static LcsRules load(const std::filesystem::path& path);

  const LcsRuleSet& for_language(LanguageId language) const;
  int version() const { return version_; }

 private:
  int version_ = 0;
  std::map<LanguageId, LcsRuleSet> rules_;
  std::optional<LcsRuleSet> generic_;
};

/// LCS = 1 + n_cf + n_op / 2, held exactly as a count of halves.
struct LexicalProfile {
  std::int64_t n_cf = 0;
  std::int64_t n_op = 0;

  std::int64_t lcs_halves() const { return 2 + 2 * n_cf + n_op; }
  double lcs() const { return static_cast<double>(lcs_halves()) / 2.0; }
  /// "5", "5.5".
  std::string lcs_string() const;

  friend bool operator==(const LexicalProfile&, const LexicalProfile&) = default;
};

LexicalProfile lexical_profile(std::string_view content, LanguageId language,
                               const LcsRules& rules = LcsRules::defaults());

/// Report bucket edges for LCS histograms (descriptive only).
inline constexpr double kLcsLowBucketEdge = 20.0;
inline constexpr double kLcsHighBucketEdge = 80.0;

}  // namespace codeprov
