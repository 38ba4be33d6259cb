#include <doctest.h>

#include <sstream>

#include "codeprov/corpus.hpp"
#include "codeprov/error.hpp"
#include "codeprov/git.hpp"
#include "support.hpp"

using namespace codeprov;
using namespace codeprov::testing;

namespace {

HarvestSpec human_spec(const std::filesystem::path& repo) {
  HarvestSpec spec;
  spec.repos = {repo};
  spec.start = human_window_start();
  spec.end = human_window_end();
  spec.allowlist = {".py", ".c", ".js"};
  return spec;
}

struct Fixture {
  TempDir dir{"codeprov-git"};
  std::filesystem::path repo = make_git_fixture(dir.path());
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

CommitFileChange change(std::string path, ChangeKind kind, std::string repo = "r", std::string post = "x") {
  CommitFileChange c{std::move(repo), "abc", 0, std::move(path), std::nullopt, std::nullopt, kind};
  if (kind != ChangeKind::Added) c.pre_content = "old";
  if (kind != ChangeKind::Deleted) c.post_content = std::move(post);
  return c;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("harvest yields the scripted change set") {
    const auto& f = fixture();
    const HarvestResult h = harvest_repo(human_spec(f.repo), f.repo);
    const auto expected = expected_fixture_changes(f.repo);
    REQUIRE(h.changes.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      INFO(i, ": ", expected[i].id());
      CHECK(h.changes[i] == expected[i]);
    }
    REQUIRE(h.diagnostics.size() == 1);
    CHECK(h.diagnostics[0].find("logo.png") != std::string::npos);
  }

  TEST_CASE("window excluding all commits is empty") {
    const auto& f = fixture();
    HarvestSpec spec = human_spec(f.repo);
    spec.start = *parse_utc("2001-01-01");
    spec.end = *parse_utc("2002-01-01");
    CHECK(harvest_repo(spec, f.repo).changes.empty());
  }

  TEST_CASE("commit after the window is found with a wider window") {
    const auto& f = fixture();
    HarvestSpec spec = human_spec(f.repo);
    spec.end = *parse_utc("2012-01-01");
    const auto h = harvest_repo(spec, f.repo);
    CHECK(h.changes.size() == expected_fixture_changes(f.repo).size() + 1);
    CHECK(h.changes.back().commit == rev_parse(f.repo, "HEAD"));
  }

  TEST_CASE("size limit skips large files") {
    const auto& f = fixture();
    HarvestSpec spec = human_spec(f.repo);
    spec.max_file_bytes = 26;
    const auto h = harvest_repo(spec, f.repo);
    CHECK(h.changes.size() < expected_fixture_changes(f.repo).size());
    CHECK(h.diagnostics.size() > 1);
  }

  TEST_CASE("human subset") {
    const auto& f = fixture();
    const SubsetResult r = build_human_subset(human_spec(f.repo), 2);
    REQUIRE(r.samples.size() == 2);
    CHECK(r.samples[0].origin.path == "pkg/a.py");
    CHECK(r.samples[1].origin.path == "side.js");
    for (const auto& s : r.samples) {
      CHECK(s.label == ProvenanceLabel::Human);
      CHECK(s.origin.repo == "fixture");
      CHECK_FALSE(validate(s).has_value());
    }
    CHECK(r.samples[1].language == LanguageId::JavaScript);

    HarvestSpec late = human_spec(f.repo);
    late.end = *parse_utc("2012-01-01");
    CHECK_THROWS_AS(build_human_subset(late), PurityViolation);
  }

  TEST_CASE("bad repositories and specs") {
    TempDir dir;
    HarvestSpec spec = human_spec(dir.path());
    CHECK_THROWS_AS(harvest_repo(spec, dir.path()), DataError);
    spec.end = spec.start;
    CHECK_THROWS_AS(spec.validate(), DataError);
    spec = human_spec(fixture().repo);
    spec.repos = {fixture().repo, fixture().repo};
    CHECK_THROWS_AS(harvest_all(spec), DataError);
    CHECK(repo_name("/x/y/proj.git") == "proj");
  }

  TEST_CASE("code filter and final state") {
    const std::vector<CommitFileChange> in = {change("a.py", ChangeKind::Added), change("b.md", ChangeKind::Added),
                                              change("c.json", ChangeKind::Added)};
    const auto code = filter_code_files(in, default_code_extensions());
    REQUIRE(code.size() == 1);
    CHECK(code[0].path == "a.py");
    CHECK(filter_code_files(std::span<const CommitFileChange>(), default_code_extensions()).empty());

    const std::vector<CommitFileChange> history = {
        change("a.py", ChangeKind::Added, "r", "v1"), change("b.py", ChangeKind::Added),
        change("a.py", ChangeKind::Modified, "r", "v2"), change("b.py", ChangeKind::Deleted),
        change("a.py", ChangeKind::Added, "s", "other")};
    const auto fin = final_state(history);
    REQUIRE(fin.size() == 2);
    CHECK(fin[0].post_content == "v2");
    CHECK(fin[1].repo == "s");
  }

  TEST_CASE("dedup keeps first occurrences") {
    std::vector<CodeSample> s = {make_sample("a", ProvenanceLabel::Human, "same"),
                                 make_sample("b", ProvenanceLabel::Human, "same"),
                                 make_sample("c", ProvenanceLabel::AI, "other")};
    const auto r = dedup(s);
    CHECK(r.removed == 1);
    REQUIRE(r.samples.size() == 2);
    CHECK(r.samples[0].id == "a");
    CHECK(dedup(r.samples).samples == r.samples);
    CHECK(dedup(r.samples).removed == 0);
  }

  TEST_CASE("task matrix preset") {
    const TaskMatrix& m = default_task_matrix();
    CHECK(m.topics.size() == 33);
    CHECK(m.task_count() == 165);
    CHECK(m.generators.size() == 11);
    CHECK(m.cell_count() == 1815);
    for (const auto& t : m.topics) CHECK(t.tasks.size() == kTasksPerTopic);
  }

  TEST_CASE("AI subset coverage") {
    const TaskMatrix m = task_matrix_from_json(nlohmann::json::parse(R"({
      "topics": [{"id": "web", "description": "web server routes",
                  "tasks": [{"id": "t1", "prompt": "p1"}, {"id": "t2", "prompt": "p2"}]}],
      "generators": ["g1", "g2"]})"));
    std::vector<GeneratedResponse> responses;
    for (auto t : {"t1", "t2"})
      for (auto g : {"g1", "g2"}) responses.push_back({t, g, "print(1)\n", LanguageId::Python, std::nullopt});
    auto r = build_ai_subset(m, responses);
    CHECK(r.samples.size() == 4);
    CHECK(r.diagnostics.empty());
    CHECK(r.samples[0].id == "ai:g1:t1");
    CHECK(r.samples[0].origin.app_domain == AppDomain::WebApplication);

    responses.pop_back();
    responses.push_back({"t9", "g1", "x", std::nullopt, std::nullopt});
    r = build_ai_subset(m, responses);
    CHECK(r.samples.size() == 3);
    REQUIRE(r.missing_cells.size() == 1);
    CHECK(r.missing_cells[0] == std::make_pair(std::string("t2"), std::string("g2")));
    CHECK(r.diagnostics.size() == 2);
  }

  TEST_CASE("generator subprocess") {
    TempDir dir;
    const auto script = dir.path() / "gen.sh";
    write_file(script,
               "#!/bin/sh\nwhile read line; do\n"
               "  t=$(echo \"$line\" | sed 's/.*\"task_id\":\"\\([^\"]*\\)\".*/\\1/')\n"
               "  m=$(echo \"$line\" | sed 's/.*\"model\":\"\\([^\"]*\\)\".*/\\1/')\n"
               "  echo \"{\\\"task_id\\\":\\\"$t\\\",\\\"model\\\":\\\"$m\\\",\\\"content\\\":\\\"x = 1\\\"}\"\n"
               "done\n");
    std::filesystem::permissions(script, std::filesystem::perms::owner_all);
    const TaskMatrix m = task_matrix_from_json(nlohmann::json::parse(
        R"({"topics":[{"id":"a","tasks":[{"id":"t1","prompt":"p"}]}],"generators":["g1","g2"]})"));
    const auto r = generate_via_subprocess(m, {script.string()});
    CHECK(r.diagnostics.empty());
    CHECK(build_ai_subset(m, r.records).samples.size() == 2);
  }

  TEST_CASE("vulnerability import") {
    std::stringstream in(
        R"({"schema":1,"cve_id":"CVE-2023-0001","cwe_id":"CWE-79","cvss_base":6.1,"attack_vector":"network","language":"javascript","intro_source":"ai","fix_source":"human","disclosed":"2023-02-01","vulnerable_fragment":"a","patched_fragment":"b"}
{"schema":1,"cve_id":"CVE-2023-0002","cwe_id":"CWE-89","cvss_base":11.0,"attack_vector":"network","language":"python","intro_source":"ai","fix_source":"human","disclosed":"2023-02-01","vulnerable_fragment":"a","patched_fragment":"b"}
{"schema":1,"cve_id":"CVE-2023-0001","cwe_id":"CWE-79","cvss_base":6.1,"attack_vector":"network","language":"javascript","intro_source":"ai","fix_source":"human","disclosed":"2023-02-01","vulnerable_fragment":"a","patched_fragment":"b"}
)");
    const auto r = import_vuln_records(in);
    REQUIRE(r.records.size() == 1);
    CHECK(r.diagnostics.size() == 2);
    CHECK(r.diagnostics[0].line == 2);

    std::stringstream io;
    write_records(std::span<const VulnRecord>(r.records), io);
    CHECK(import_vuln_records(io).records == r.records);

    std::stringstream no_sources(
        R"({"schema":1,"cve_id":"CVE-2023-0003","cwe_id":"CWE-20","cvss_base":5,"attack_vector":"local","language":"c","disclosed":"2023-05-01","vulnerable_fragment":"gets(buf);","patched_fragment":"fgets(buf, n, stdin);"})"
        "\n");
    CHECK(import_vuln_records(no_sources).records.empty());
    no_sources.clear();
    no_sources.seekg(0);
    auto unlabeled = import_vuln_records(no_sources, false);
    REQUIRE(unlabeled.records.size() == 1);

    const auto fragments = vuln_fragment_samples(unlabeled.records);
    REQUIRE(fragments.size() == 2);
    CHECK(fragments[0].id == "CVE-2023-0003:vulnerable");
    CHECK(fragments[1].id == "CVE-2023-0003:patched");

    EnsembleConfig c;
    c.master_id = "m";
    const DetectorSet d{std::make_shared<FunctionDetector>("m", [](const CodeSample& s) {
      return s.id.ends_with(":patched") ? Decimal::from_int(1) : Decimal();
    })};
    CHECK(label_vuln_sources(unlabeled.records, c, d).empty());
    CHECK(unlabeled.records[0].intro_source == Source::Human);
    CHECK(unlabeled.records[0].fix_source == Source::AI);
  }
}
