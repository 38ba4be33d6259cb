#include "codeprov/git.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "codeprov/error.hpp"
#include "codeprov/lexical.hpp"
#include "codeprov/process.hpp"

namespace codeprov {

namespace {

constexpr std::size_t kBinaryProbeBytes = 8000;

struct RawEntry {
  std::string old_mode, new_mode, old_sha, new_sha;
  char status = 'M';
  std::string path;
};

struct CommitRef {
  std::string sha;
  std::int64_t time = 0;
  std::string first_parent;  // empty for the root commit
};

std::string git(const std::filesystem::path& repo, std::vector<std::string> args,
                const std::optional<std::string>& input = std::nullopt) {
  std::vector<std::string> argv = {"git", "-C", repo.string()};
  argv.insert(argv.end(), args.begin(), args.end());
  ProcessResult r;
  try {
    r = run_process(argv, input);
  } catch (const std::system_error& e) {
    throw DataError(std::string("cannot run git: ") + e.what());
  }
  if (r.exit_code != 0) {
    std::string err = r.err;
    while (!err.empty() && (err.back() == '\n' || err.back() == '\r')) err.pop_back();
    throw DataError("git " + args.front() + " failed in " + repo.string() + ": " + err);
  }
  return r.out;
}

std::vector<CommitRef> first_parent_log(const std::filesystem::path& repo) {
  std::vector<CommitRef> out;
  std::istringstream in(git(repo, {"log", "--first-parent", "--reverse", "--format=%H%x09%ct%x09%P", "HEAD"}));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    CommitRef c;
    std::string time;
    std::getline(fields, c.sha, '\t');
    std::getline(fields, time, '\t');
    std::string parents;
    std::getline(fields, parents);
    c.time = std::stoll(time);
    c.first_parent = parents.substr(0, parents.find(' '));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<RawEntry> diff_tree(const std::filesystem::path& repo, const CommitRef& c) {
  std::vector<std::string> args = {"diff-tree", "-r", "--no-renames", "--raw", "-z", "--no-abbrev", "--no-commit-id"};
  if (c.first_parent.empty()) {
    args.push_back("--root");
    args.push_back(c.sha);
  } else {
    args.push_back(c.first_parent);
    args.push_back(c.sha);
  }
  const std::string out = git(repo, args);
  std::vector<RawEntry> entries;
  std::size_t pos = 0;
  while (pos < out.size()) {
    const std::size_t meta_end = out.find('\0', pos);
    const std::size_t path_end = out.find('\0', meta_end + 1);
    if (meta_end == std::string::npos || path_end == std::string::npos || out[pos] != ':')
      throw DataError("unexpected diff-tree output in " + repo.string());
    std::istringstream meta(out.substr(pos + 1, meta_end - pos - 1));
    RawEntry e;
    std::string status;
    meta >> e.old_mode >> e.new_mode >> e.old_sha >> e.new_sha >> status;
    e.status = status.empty() ? 'M' : status[0];
    e.path = out.substr(meta_end + 1, path_end - meta_end - 1);
    entries.push_back(std::move(e));
    pos = path_end + 1;
  }
  return entries;
}

/// Reads blobs through one `cat-file --batch` call.
std::map<std::string, std::string> read_blobs(const std::filesystem::path& repo, const std::vector<std::string>& shas) {
  std::map<std::string, std::string> blobs;
  if (shas.empty()) return blobs;
  std::string input;
  for (const auto& s : shas) input += s + "\n";
  const std::string out = git(repo, {"cat-file", "--batch"}, input);
  std::size_t pos = 0;
  for (const auto& sha : shas) {
    const std::size_t nl = out.find('\n', pos);
    if (nl == std::string::npos) throw DataError("truncated cat-file output in " + repo.string());
    std::istringstream header(out.substr(pos, nl - pos));
    std::string got, type;
    std::size_t size = 0;
    header >> got >> type >> size;
    if (got != sha || type != "blob") throw DataError("cannot read blob " + sha + " in " + repo.string());
    blobs[sha] = out.substr(nl + 1, size);
    pos = nl + 1 + size + 1;
  }
  return blobs;
}

bool looks_binary(const std::string& content) {
  return content.find('\0', 0) < std::min(content.size(), kBinaryProbeBytes);
}

bool is_null_sha(const std::string& sha) { return sha.find_first_not_of('0') == std::string::npos; }

}  // namespace

void HarvestSpec::validate() const {
  if (start >= end) throw DataError("harvest window start must precede end");
  if (allowlist.empty()) throw DataError("harvest extension allowlist is empty");
}

std::int64_t human_window_start() { return days_from_civil(2008, 1, 1) * 86400; }
std::int64_t human_window_end() { return days_from_civil(2011, 1, 1) * 86400; }
std::int64_t wild_window_start() { return days_from_civil(2022, 1, 1) * 86400; }
std::int64_t wild_window_end() { return days_from_civil(2025, 7, 1) * 86400; }

std::vector<std::string> default_code_extensions() {
  static const char* const kCandidates[] = {
      ".py", ".pyw", ".java", ".c", ".h", ".cc", ".cpp", ".cxx", ".hpp", ".hh", ".hxx", ".cs", ".js", ".mjs",
      ".cjs", ".jsx", ".ts", ".tsx", ".rb", ".php", ".go", ".rs", ".sh", ".bash", ".zsh", ".scala", ".kt",
      ".kts", ".sql", ".html", ".htm", ".css", ".ipynb"};
  std::vector<std::string> out;
  for (const char* e : kCandidates)
    if (is_code_extension(e)) out.emplace_back(e);
  return out;
}

std::string repo_name(const std::filesystem::path& repo) {
  std::filesystem::path p = repo;
  if (p.filename().empty()) p = p.parent_path();
  std::string name = p.filename().string();
  if (name.size() > 4 && name.ends_with(".git")) name.resize(name.size() - 4);
  return name;
}

HarvestResult harvest_repo(const HarvestSpec& spec, const std::filesystem::path& repo) {
  if (!std::filesystem::is_directory(repo)) throw DataError("repository not found: " + repo.string());
  try {
    git(repo, {"rev-parse", "--verify", "--quiet", "HEAD^{commit}"});
  } catch (const DataError&) {
    throw DataError("cannot resolve HEAD in " + repo.string());
  }
  const std::string name = repo_name(repo);
  HarvestResult result;

  for (const CommitRef& c : first_parent_log(repo)) {
    if (c.time < spec.start || c.time >= spec.end) continue;
    std::vector<RawEntry> entries;
    std::vector<std::string> wanted;
    for (auto& e : diff_tree(repo, c)) {
      const std::string where = name + "@" + c.sha + ":" + e.path;
      if (e.old_mode == "160000" || e.new_mode == "160000") {
        result.diagnostics.push_back(where + ": submodule skipped");
        continue;
      }
      if (e.old_mode == "120000" || e.new_mode == "120000") {
        result.diagnostics.push_back(where + ": symlink skipped");
        continue;
      }
      if (!is_null_sha(e.old_sha)) wanted.push_back(e.old_sha);
      if (!is_null_sha(e.new_sha)) wanted.push_back(e.new_sha);
      entries.push_back(std::move(e));
    }
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    const auto blobs = read_blobs(repo, wanted);

    for (const auto& e : entries) {
      CommitFileChange ch;
      ch.repo = name;
      ch.commit = c.sha;
      ch.timestamp = c.time;
      ch.path = e.path;
      switch (e.status) {
        case 'A': ch.change_kind = ChangeKind::Added; break;
        case 'D': ch.change_kind = ChangeKind::Deleted; break;
        default: ch.change_kind = ChangeKind::Modified; break;
      }
      if (ch.change_kind != ChangeKind::Added) ch.pre_content = blobs.at(e.old_sha);
      if (ch.change_kind != ChangeKind::Deleted) ch.post_content = blobs.at(e.new_sha);

      const auto too_big = [&](const std::optional<std::string>& s) { return s && s->size() > spec.max_file_bytes; };
      const auto binary = [](const std::optional<std::string>& s) { return s && looks_binary(*s); };
      if (too_big(ch.pre_content) || too_big(ch.post_content)) {
        result.diagnostics.push_back(ch.id() + ": larger than " + std::to_string(spec.max_file_bytes) +
                                     " bytes, skipped");
        continue;
      }
      if (binary(ch.pre_content) || binary(ch.post_content)) {
        result.diagnostics.push_back(ch.id() + ": binary file skipped");
        continue;
      }
      for (auto* content : {&ch.pre_content, &ch.post_content}) {
        if (!*content) continue;
        auto [clean, lossy] = sanitize_utf8(**content);
        if (lossy) result.diagnostics.push_back(ch.id() + ": invalid UTF-8 replaced");
        **content = std::move(clean);
      }
      result.changes.push_back(std::move(ch));
    }
  }
  return result;
}

HarvestResult harvest_all(const HarvestSpec& spec, unsigned workers) {
  if (spec.start >= spec.end) throw DataError("harvest window start must precede end");
  std::map<std::string, std::string> names;
  for (const auto& r : spec.repos) {
    const std::string n = repo_name(r);
    if (auto [it, fresh] = names.emplace(n, r.string()); !fresh)
      throw DataError("repositories " + it->second + " and " + r.string() + " share the name '" + n + "'");
  }
  auto parts = parallel_map<HarvestResult>(spec.repos.size(), workers,
                                           [&](std::size_t i) { return harvest_repo(spec, spec.repos[i]); });
  HarvestResult all;
  for (auto& p : parts) {
    std::move(p.changes.begin(), p.changes.end(), std::back_inserter(all.changes));
    std::move(p.diagnostics.begin(), p.diagnostics.end(), std::back_inserter(all.diagnostics));
  }
  return all;
}

}  // namespace codeprov
