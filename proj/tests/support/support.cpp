#include "support.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "codeprov/process.hpp"
#include "codeprov/random.hpp"

namespace codeprov::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& prefix) {
  std::string tmpl = (fs::temp_directory_path() / (prefix + "-XXXXXX")).string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

double beta_variate(std::mt19937_64& rng, double a, double b) {
  std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
  const double x = ga(rng), y = gb(rng);
  return x / (x + y);
}

// ---------------------------------------------------------------------------
// Lexical oracle

namespace {

struct Quote {
  std::string open, close;
  bool escapes;
  bool multiline;
};

struct OracleLang {
  std::vector<std::string> line_comments;
  std::vector<std::pair<std::string, std::string>> block_comments;
  std::vector<Quote> strings;
  bool hash_at_word_start = false;
  std::set<std::string> branch_words;
  std::set<std::string> op_words;
  bool symbol_ops = true;
  bool ternary = false;
  bool fold_case = false;
};

const Quote dq{"\"", "\"", true, false};
const Quote sq{"'", "'", true, false};

const std::map<LanguageId, OracleLang>& oracle_table() {
  static const std::map<LanguageId, OracleLang> table = [] {
    std::map<LanguageId, OracleLang> t;
    t[LanguageId::C] = {{"//"}, {{"/*", "*/"}}, {dq, sq}, false, {"if", "for", "while", "case"}, {}, true, true};
    t[LanguageId::Cpp] = t[LanguageId::C];
    t[LanguageId::Cpp].branch_words.insert("catch");
    t[LanguageId::Java] = t[LanguageId::Cpp];
    t[LanguageId::Java].strings = {{"\"\"\"", "\"\"\"", true, true}, dq, sq};
    t[LanguageId::JavaScript] = t[LanguageId::Cpp];
    t[LanguageId::JavaScript].strings = {{"`", "`", true, true}, dq, sq};
    t[LanguageId::Go] = {{"//"}, {{"/*", "*/"}}, {{"`", "`", false, true}, dq, sq}, false, {"if", "for", "case"}, {}};
    t[LanguageId::Rust] = {{"//"}, {{"/*", "*/"}}, {{"\"", "\"", true, true}}, false, {"if", "for", "while", "match"}, {}};
    t[LanguageId::Kotlin] = {{"//"},  {{"/*", "*/"}}, {{"\"\"\"", "\"\"\"", false, true}, dq, sq},
                             false,   {"if", "for", "while", "when", "catch"}, {}};
    t[LanguageId::Python] = {{"#"},
                             {},
                             {{"\"\"\"", "\"\"\"", true, true}, {"'''", "'''", true, true}, dq, sq},
                             false,
                             {"if", "elif", "for", "while", "except"},
                             {"and", "or", "not"},
                             false};
    t[LanguageId::Ruby] = {{"#"},
                           {{"=begin", "=end"}},
                           {{"\"", "\"", true, true}, {"'", "'", true, true}},
                           false,
                           {"if", "elsif", "unless", "while", "until", "for", "when", "rescue"},
                           {"and", "or", "not"},
                           true,
                           true};
    t[LanguageId::Shell] = {{"#"}, {}, {{"'", "'", false, true}, {"\"", "\"", true, true}}, true,
                            {"if", "elif", "for", "while", "until", "case"}, {}};
    t[LanguageId::Php] = {{"//", "#"},
                          {{"/*", "*/"}},
                          {{"\"", "\"", true, true}, {"'", "'", true, true}},
                          false,
                          {"if", "elseif", "for", "foreach", "while", "case", "catch"},
                          {"and", "or"},
                          true,
                          true};
    t[LanguageId::Sql] = {{"--"}, {{"/*", "*/"}}, {{"'", "'", false, true}, {"\"", "\"", false, true}}, false,
                          {"when", "if", "while"}, {"and", "or", "not"}, false, false, true};
    return t;
  }();
  return table;
}

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool space_char(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

enum class Tok { Space, Blank, Word, Op, Punct };

struct Token {
  Tok kind;
  std::string text;
};

std::vector<Token> oracle_tokens(const std::string& s, const OracleLang& lang) {
  std::vector<Token> toks;
  const std::size_t n = s.size();
  const auto at = [&](std::size_t i, const std::string& t) { return s.compare(i, t.size(), t) == 0; };
  std::size_t i = 0;
  while (i < n) {
    const char c = s[i];
    if (space_char(c)) {
      toks.push_back({Tok::Space, std::string(1, c)});
      ++i;
      continue;
    }
    std::size_t end = 0;
    for (const auto& [open, close] : lang.block_comments) {
      if (!at(i, open)) continue;
      const auto j = s.find(close, i + open.size());
      end = j == std::string::npos ? n : j + close.size();
      break;
    }
    if (end == 0) {
      for (const auto& m : lang.line_comments) {
        if (!at(i, m)) continue;
        if (m == "#" && lang.hash_at_word_start && i > 0 && !space_char(s[i - 1])) continue;
        const auto j = s.find('\n', i);
        end = j == std::string::npos ? n : j;
        break;
      }
    }
    if (end == 0) {
      for (const auto& q : lang.strings) {
        if (!at(i, q.open)) continue;
        std::size_t j = i + q.open.size();
        end = n;
        while (j < n) {
          if (q.escapes && s[j] == '\\') {
            j += 2;
            continue;
          }
          if (at(j, q.close)) {
            end = j + q.close.size();
            break;
          }
          if (s[j] == '\n' && !q.multiline) {
            end = j;
            break;
          }
          ++j;
        }
        end = std::min(end, n);
        break;
      }
    }
    if (end != 0) {
      // Blanked spans keep their newlines.
      std::size_t k = i;
      while (k < end) {
        std::size_t nl = s.find('\n', k);
        if (nl == std::string::npos || nl >= end) nl = end;
        if (nl > k) toks.push_back({Tok::Blank, s.substr(k, nl - k)});
        if (nl < end) toks.push_back({Tok::Space, "\n"});
        k = nl + 1;
      }
      i = end;
      continue;
    }
    if (word_char(c)) {
      std::size_t j = i;
      while (j < n && word_char(s[j])) ++j;
      toks.push_back({Tok::Word, s.substr(i, j - i)});
      i = j;
      continue;
    }
    if (at(i, "&&") || at(i, "||")) {
      toks.push_back({Tok::Op, s.substr(i, 2)});
      i += 2;
      continue;
    }
    toks.push_back({Tok::Punct, std::string(1, c)});
    ++i;
  }
  return toks;
}

}  // namespace

const std::vector<LanguageId>& oracle_languages() {
  static const std::vector<LanguageId> langs = [] {
    std::vector<LanguageId> v;
    for (const auto& [id, _] : oracle_table()) v.push_back(id);
    return v;
  }();
  return langs;
}

LexicalProfile lcs_token_oracle(const std::string& content, LanguageId language) {
  const OracleLang& lang = oracle_table().at(language);
  const auto toks = oracle_tokens(content, lang);
  LexicalProfile p;
  const auto spacey = [&](std::size_t k) { return toks[k].kind == Tok::Space || toks[k].kind == Tok::Blank; };
  for (std::size_t k = 0; k < toks.size(); ++k) {
    const Token& t = toks[k];
    if (t.kind == Tok::Word) {
      std::string w = t.text;
      if (lang.fold_case)
        for (auto& ch : w) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      if (lang.branch_words.contains(w)) ++p.n_cf;
      if (lang.op_words.contains(w)) ++p.n_op;
    } else if (t.kind == Tok::Op) {
      if (lang.symbol_ops) ++p.n_op;
    } else if (t.kind == Tok::Punct && t.text == "?" && lang.ternary) {
      if (k > 0 && k + 1 < toks.size() && spacey(k - 1) && spacey(k + 1)) ++p.n_cf;
    }
  }
  return p;
}

namespace {

const std::vector<std::string> kWords = {
    "if",    "elif",   "elsif",  "elseif", "else",  "for",    "foreach", "while",  "until", "unless",
    "case",  "switch", "when",   "match",  "catch", "except", "rescue",  "try",    "do",    "then",
    "and",   "or",     "not",    "AND",    "Or",    "NOT",    "If",      "WHILE",  "When",  "return",
    "iffy",  "format", "_if",    "if_",    "if2",   "before", "android", "notable", "order", "whiles",
    "x",     "y1",     "count",  "value",  "9if",   "ifor",   "casework", "matches", "catchy"};
const std::vector<std::string> kOps = {"&&", "||", "&", "|", "&&&", "|||", "!", "==", "?", "?:", " ? ", "??", "? "};
const std::vector<std::string> kPunct = {"(", ")", "{", "}", ";", ":", ",", ".", "=", "$", "@", "-", "--",
                                         "/", "*", "#", "'", "\"", "`", "\\", "=begin", "=end", "\"\"\"",
                                         "'''", "@\"", "/*", "*/", "//", "+", "<", ">"};
const std::vector<std::string> kSafePunct = {"(", ")", "{", "}", ";", ",", ".", ":", "+", "<", ">", "!"};
const std::vector<std::string> kSeps = {"", " ", "  ", "\n", "\t", " \n"};

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[bounded(rng, v.size())];
}

std::string words_phrase(std::mt19937_64& rng, std::size_t max_words) {
  std::string s;
  const std::size_t n = 1 + bounded(rng, max_words);
  for (std::size_t k = 0; k < n; ++k) {
    if (k) s += ' ';
    s += pick(rng, kWords);
  }
  return s;
}

}  // namespace

std::vector<Snippet> snippet_corpus(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  const auto& langs = oracle_languages();
  std::vector<Snippet> out;
  for (std::size_t i = 0; i < n; ++i) {
    const LanguageId lang = langs[i % langs.size()];
    const OracleLang& table = oracle_table().at(lang);
    std::string s;
    const std::size_t pieces = 5 + bounded(rng, 40);
    for (std::size_t k = 0; k < pieces; ++k) {
      const auto r = bounded(rng, 100);
      if (r < 40) {
        s += pick(rng, kWords);
      } else if (r < 55) {
        s += pick(rng, kOps);
      } else if (r < 70) {
        s += pick(rng, kPunct);
      } else if (r < 82 && !table.strings.empty()) {
        const Quote& q = table.strings[bounded(rng, table.strings.size())];
        s += q.open + words_phrase(rng, 4);
        if (bounded(rng, 10) < 2) s += "\\";
        if (bounded(rng, 10) < 2) s += "\n" + words_phrase(rng, 2);
        if (bounded(rng, 10) < 8) s += q.close;
      } else if (r < 90 && !table.line_comments.empty()) {
        s += pick(rng, table.line_comments) + " " + words_phrase(rng, 4) + "\n";
      } else if (!table.block_comments.empty()) {
        const auto& [open, close] = table.block_comments[bounded(rng, table.block_comments.size())];
        s += open + " " + words_phrase(rng, 3);
        if (bounded(rng, 2)) s += "\n" + words_phrase(rng, 2);
        if (bounded(rng, 10) < 8) s += " " + close;
      } else {
        s += pick(rng, kWords);
      }
      s += pick(rng, kSeps);
    }
    out.push_back({lang, std::move(s)});
  }
  return out;
}

Snippet well_formed_snippet(std::mt19937_64& rng, LanguageId language) {
  const OracleLang& table = oracle_table().at(language);
  std::string s;
  const std::size_t pieces = 3 + bounded(rng, 25);
  for (std::size_t k = 0; k < pieces; ++k) {
    const auto r = bounded(rng, 100);
    if (r < 45) {
      s += pick(rng, kWords);
    } else if (r < 60) {
      static const std::vector<std::string> ops = {"&&", "||", "?", "!", "=="};
      s += pick(rng, ops);
    } else if (r < 75) {
      s += pick(rng, kSafePunct);
    } else if (r < 85) {
      // Single-line strings with plain words never need escapes.
      const Quote& q = table.strings[bounded(rng, table.strings.size())];
      s += q.open + words_phrase(rng, 3) + q.close;
    } else if (r < 93) {
      s += pick(rng, table.line_comments) + " " + words_phrase(rng, 3) + "\n";
    } else if (!table.block_comments.empty()) {
      const auto& [open, close] = table.block_comments.front();
      s += open + " " + words_phrase(rng, 3) + " " + close;
    }
    s += bounded(rng, 4) == 0 ? "\n" : " ";
  }
  if (s.back() != '\n') s += '\n';
  return {language, s};
}

std::string control_flow_statement(LanguageId language) {
  switch (language) {
    case LanguageId::Python: return "if x:\n    y = 1\n";
    case LanguageId::Ruby: return "if x then y end\n";
    case LanguageId::Shell: return "if true; then y=1; fi\n";
    case LanguageId::Sql: return "SELECT CASE WHEN a THEN b END;\n";
    case LanguageId::Go:
    case LanguageId::Rust: return "if x { y }\n";
    case LanguageId::Php: return "if ($x) { $y = 1; }\n";
    default: return "if (x) { y; }\n";
  }
}

std::string logical_op_statement(LanguageId language) {
  switch (language) {
    case LanguageId::Python: return "z = a and b\n";
    case LanguageId::Sql: return "SELECT a AND b;\n";
    case LanguageId::Shell: return "true && false\n";
    case LanguageId::Php: return "$z = $a && $b;\n";
    default: return "z = a && b;\n";
  }
}

// ---------------------------------------------------------------------------
// Git fixture

namespace {

std::string git_out(const fs::path& repo, std::vector<std::string> args,
                    const std::vector<std::string>& env = {}) {
  std::vector<std::string> argv = {"env", "GIT_CONFIG_NOSYSTEM=1", "HOME=" + repo.string()};
  argv.insert(argv.end(), env.begin(), env.end());
  for (auto a : {"git", "-c", "user.name=Fixture", "-c", "user.email=fixture@example.com", "-c",
                 "commit.gpgsign=false", "-c", "init.defaultBranch=main", "-C"})
    argv.emplace_back(a);
  argv.push_back(repo.string());
  argv.insert(argv.end(), args.begin(), args.end());
  const ProcessResult r = run_process(argv);
  if (r.exit_code != 0) {
    std::string cmd;
    for (const auto& a : args) cmd += " " + a;
    throw std::runtime_error("git" + cmd + " failed: " + r.err);
  }
  return r.out;
}

std::vector<std::string> dated(const std::string& day) {
  const auto t = parse_utc(day + "T12:00:00Z");
  const std::string raw = std::to_string(*t) + " +0000";
  return {"GIT_AUTHOR_DATE=" + raw, "GIT_COMMITTER_DATE=" + raw};
}

void commit(const fs::path& repo, const std::string& day, const std::string& msg) {
  git_out(repo, {"add", "-A"});
  git_out(repo, {"commit", "-q", "-m", msg}, dated(day));
}

const std::string kA1 = "def f(x):\n    return x\n";
const std::string kA2 = "def f(x):\n    if x:\n        return x\n    return 0\n";
const std::string kA3 = "def f(x):\n    if x and x > 1:\n        return x\n    return 0\n";
const std::string kA4 = "def f(x):\n    return 42\n";
const std::string kReadme = "# fixture\n";
const std::string kB = "int main(void) { return 0; }\n";
const std::string kS1 = "function s() { return 1; }\n";
const std::string kS2 = "function s() { return 2; }\n";
const std::string kS3 = "function s() { return x ? 3 : 4; }\n";

}  // namespace

std::string rev_parse(const fs::path& repo, const std::string& rev) {
  std::string out = git_out(repo, {"rev-parse", rev});
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out;
}

fs::path make_git_fixture(const fs::path& dir) {
  const fs::path repo = dir / "fixture";
  fs::create_directories(repo);
  git_out(repo, {"init", "-q"});

  write_file(repo / "a.py", kA1);
  write_file(repo / "README.md", kReadme);
  commit(repo, "2008-02-01", "c1 add a.py and readme");
  write_file(repo / "a.py", kA2);
  commit(repo, "2008-03-01", "c2 modify a.py");
  write_file(repo / "b.c", kB);
  commit(repo, "2008-04-01", "c3 add b.c");
  write_file(repo / "logo.png", std::string("\x89PNG\r\n\x1a\n\0\0\0\rIHDR", 16));
  commit(repo, "2008-05-01", "c4 add binary");
  fs::remove(repo / "b.c");
  commit(repo, "2008-06-01", "c5 delete b.c");
  fs::create_directories(repo / "pkg");
  git_out(repo, {"mv", "a.py", "pkg/a.py"});
  commit(repo, "2008-07-01", "c6 rename a.py");

  git_out(repo, {"checkout", "-q", "-b", "side"});
  write_file(repo / "side.js", kS1);
  commit(repo, "2008-08-01", "c7 add side.js");
  write_file(repo / "side.js", kS2);
  commit(repo, "2008-08-15", "c8 modify side.js");

  git_out(repo, {"checkout", "-q", "main"});
  write_file(repo / "pkg" / "a.py", kA3);
  commit(repo, "2008-09-01", "c9 modify pkg/a.py");
  git_out(repo, {"merge", "-q", "--no-ff", "-m", "c10 merge side", "side"}, dated("2008-10-01"));
  write_file(repo / "side.js", kS3);
  commit(repo, "2008-11-01", "c11 modify side.js");
  write_file(repo / "pkg" / "a.py", kA4);
  commit(repo, "2011-03-01", "c12 modify pkg/a.py");
  return repo;
}

std::vector<CommitFileChange> expected_fixture_changes(const fs::path& repo) {
  // First parents only: c7 and c8 live on the side branch, so HEAD~9 is c1.
  std::vector<std::string> main_line;
  for (int k = 9; k >= 0; --k) main_line.push_back(rev_parse(repo, "HEAD~" + std::to_string(k)));
  const auto ts = [](const std::string& day) { return *parse_utc(day + "T12:00:00Z"); };
  const std::string name = repo.filename().string();
  const auto change = [&](int c, const std::string& day, const std::string& path, std::optional<std::string> pre,
                          std::optional<std::string> post, ChangeKind kind) {
    return CommitFileChange{name, main_line[static_cast<std::size_t>(c)], ts(day), path, pre, post, kind};
  };
  // main_line: c1 c2 c3 c4 c5 c6 c9 c10 c11 c12
  return {
      change(0, "2008-02-01", "README.md", std::nullopt, kReadme, ChangeKind::Added),
      change(0, "2008-02-01", "a.py", std::nullopt, kA1, ChangeKind::Added),
      change(1, "2008-03-01", "a.py", kA1, kA2, ChangeKind::Modified),
      change(2, "2008-04-01", "b.c", std::nullopt, kB, ChangeKind::Added),
      change(4, "2008-06-01", "b.c", kB, std::nullopt, ChangeKind::Deleted),
      change(5, "2008-07-01", "a.py", kA2, std::nullopt, ChangeKind::Deleted),
      change(5, "2008-07-01", "pkg/a.py", std::nullopt, kA2, ChangeKind::Added),
      change(6, "2008-09-01", "pkg/a.py", kA2, kA3, ChangeKind::Modified),
      change(7, "2008-10-01", "side.js", std::nullopt, kS2, ChangeKind::Added),
      change(8, "2008-11-01", "side.js", kS2, kS3, ChangeKind::Modified),
  };
}

// ---------------------------------------------------------------------------
// Synthetic corpora

CodeSample make_sample(std::string id, ProvenanceLabel label, std::string content, LanguageId language) {
  CodeSample s;
  s.id = std::move(id);
  s.content = std::move(content);
  s.language = language;
  s.label = label;
  if (label == ProvenanceLabel::Human) s.origin.repo = "fixture/repo";
  if (label == ProvenanceLabel::AI) s.origin.generator = "model-01";
  return s;
}

namespace {

Decimal grid6(double v) { return Decimal::from_ticks(std::llround(v * 1e6) * 1'000'000); }

}  // namespace

ScoredCorpus asymmetric_corpus(std::uint64_t seed, std::size_t n, std::size_t aux_count) {
  std::mt19937_64 rng(seed);
  auto scores = std::make_shared<std::map<std::string, std::vector<Decimal>>>();
  ScoredCorpus out;
  for (std::size_t i = 0; i < n; ++i) {
    const bool ai = i % 2 == 0;
    const std::string id = (ai ? "ai-" : "human-") + std::to_string(i);
    out.samples.push_back(make_sample(id, ai ? ProvenanceLabel::AI : ProvenanceLabel::Human));
    const bool master_easy = ai && unit(rng) < 0.34;
    const bool aux_hard = master_easy && unit(rng) < 0.18;
    std::vector<Decimal> row;
    row.push_back(grid6(master_easy ? beta_variate(rng, 30, 1.5) : beta_variate(rng, 2, 8)));
    for (std::size_t a = 0; a < aux_count; ++a) {
      double v;
      if (!ai) v = beta_variate(rng, 12, 8);
      else if (aux_hard) v = beta_variate(rng, 2, 8);
      else v = beta_variate(rng, 12, 2);
      row.push_back(grid6(v));
    }
    (*scores)[id] = std::move(row);
  }
  out.config.master_id = "master";
  for (std::size_t a = 0; a < aux_count; ++a) {
    const std::string id = "aux" + std::to_string(a + 1);
    out.config.aux_ids.push_back(id);
  }
  const auto detector = [&](const std::string& id, std::size_t column) {
    return std::make_shared<FunctionDetector>(id, [scores, column](const CodeSample& s) {
      return scores->at(s.id)[column];
    });
  };
  out.detectors.add(detector("master", 0));
  for (std::size_t a = 0; a < aux_count; ++a) out.detectors.add(detector(out.config.aux_ids[a], a + 1));
  return out;
}

std::string low_entropy_text(std::mt19937_64& rng) {
  // Each text repeats its own helper name, so a model that saw the text
  // predicts it better than a text it did not see.
  std::string fn = "handle_";
  for (int k = 0; k < 6; ++k) fn += static_cast<char>('a' + bounded(rng, 26));
  const std::vector<std::string> templates = {
      "def " + fn + "(item):\n", "    result = " + fn + "(item)\n", "    return result\n",
      "for item in items:\n",    "    if item is None:\n",         "        continue\n",
  };
  static const std::vector<std::string> names = {"item", "items", "result"};
  std::string s;
  const std::size_t lines = 10 + bounded(rng, 10);
  for (std::size_t k = 0; k < lines; ++k) {
    std::string line = templates[bounded(rng, templates.size())];
    if (bounded(rng, 4) == 0) line += "    # " + names[bounded(rng, names.size())] + "\n";
    s += line;
  }
  return s;
}

std::string high_entropy_text(std::mt19937_64& rng) {
  static const std::string alpha = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
  static const std::string punct = "()[]{}<>=+-*/%!&|^~;:,.?@#$";
  std::string s;
  const std::size_t lines = 10 + bounded(rng, 10);
  for (std::size_t k = 0; k < lines; ++k) {
    const std::size_t toks = 3 + bounded(rng, 6);
    for (std::size_t t = 0; t < toks; ++t) {
      const std::size_t len = 2 + bounded(rng, 8);
      for (std::size_t c = 0; c < len; ++c) s += alpha[bounded(rng, alpha.size())];
      s += punct[bounded(rng, punct.size())];
      s += ' ';
    }
    s += '\n';
  }
  return s;
}

// ---------------------------------------------------------------------------
// Random records

namespace {

std::string random_text(std::mt19937_64& rng, std::size_t max_len) {
  static const std::vector<std::string> atoms = {
      "a", "Z", "0", " ", "\n", "\t", "\r\n", "\"", "\\", "/", "{", "}", "'", "\x01", "\x7f",
      "\xC3\xA9", "\xE2\x82\xAC", "\xF0\x9F\x98\x80", "\xE4\xB8\xAD", "if", "&&", "<script>", "\\u0000"};
  std::string s;
  const std::size_t n = bounded(rng, max_len + 1);
  for (std::size_t k = 0; k < n; ++k) s += atoms[bounded(rng, atoms.size())];
  return s;
}

std::string random_token(std::mt19937_64& rng, std::size_t len) {
  static const std::string chars = "abcdefghijklmnopqrstuvwxyz0123456789-_";
  std::string s;
  for (std::size_t k = 0; k < len; ++k) s += chars[bounded(rng, chars.size())];
  return s;
}

std::string random_hex(std::mt19937_64& rng, std::size_t len) {
  static const std::string hex = "0123456789abcdef";
  std::string s;
  for (std::size_t k = 0; k < len; ++k) s += hex[bounded(rng, 16)];
  return s;
}

std::int64_t random_time(std::mt19937_64& rng) {
  return static_cast<std::int64_t>(bounded(rng, 4'000'000'000ULL)) - 100'000'000;
}

}  // namespace

CodeSample random_sample(std::mt19937_64& rng, std::size_t index) {
  CodeSample s;
  s.id = "s" + std::to_string(index) + "-" + random_token(rng, 6);
  s.content = random_text(rng, 60);
  s.language = kAllLanguages[bounded(rng, kAllLanguages.size())];
  s.label = static_cast<ProvenanceLabel>(bounded(rng, 3));
  OriginMeta& o = s.origin;
  if (s.label == ProvenanceLabel::Human || bounded(rng, 4) == 0) o.repo = "org/" + random_token(rng, 8);
  if (s.label == ProvenanceLabel::AI || bounded(rng, 4) == 0) o.generator = "model-" + random_token(rng, 2);
  if (bounded(rng, 2)) o.commit = random_hex(rng, 40);
  if (bounded(rng, 2)) o.path = "src/" + random_token(rng, 5) + ".py";
  if (bounded(rng, 2)) o.timestamp = random_time(rng);
  if (bounded(rng, 2)) o.task = "t" + random_token(rng, 4);
  if (bounded(rng, 2)) o.app_domain = kAllAppDomains[bounded(rng, kAllAppDomains.size())];
  return s;
}

CommitFileChange random_change(std::mt19937_64& rng, std::size_t index) {
  CommitFileChange c;
  c.repo = "repo-" + random_token(rng, 5);
  c.commit = random_hex(rng, 40);
  c.timestamp = random_time(rng);
  c.path = "dir/" + random_token(rng, 6) + "-" + std::to_string(index) + ".c";
  c.change_kind = static_cast<ChangeKind>(bounded(rng, 3));
  if (c.change_kind != ChangeKind::Added) c.pre_content = random_text(rng, 40);
  if (c.change_kind != ChangeKind::Deleted) c.post_content = random_text(rng, 40);
  return c;
}

VulnRecord random_vuln(std::mt19937_64& rng, std::size_t index) {
  VulnRecord v;
  v.cve_id = "CVE-" + std::to_string(1999 + bounded(rng, 27)) + "-" + std::to_string(10000 + index);
  v.cwe_id = "CWE-" + std::to_string(1 + bounded(rng, 1400));
  v.cvss_base = static_cast<double>(bounded(rng, 101)) / 10.0;
  v.attack_vector = kAllAttackVectors[bounded(rng, kAllAttackVectors.size())];
  v.language = kAllLanguages[bounded(rng, kAllLanguages.size())];
  v.vulnerable_fragment = "v" + random_text(rng, 30);
  v.patched_fragment = "p" + random_text(rng, 30);
  v.intro_source = static_cast<Source>(bounded(rng, 2));
  v.fix_source = static_cast<Source>(bounded(rng, 2));
  v.disclosed_day = static_cast<std::int64_t>(bounded(rng, 30000)) - 1000;
  return v;
}

}  // namespace codeprov::testing
