#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iomanip>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "codeprov/analytics.hpp"
#include "codeprov/corpus.hpp"
#include "codeprov/error.hpp"
#include "codeprov/eval.hpp"
#include "codeprov/lexical.hpp"
#include "codeprov/pipeline.hpp"
#include "codeprov/process.hpp"

#ifndef CODEPROV_VERSION
#define CODEPROV_VERSION "0.0.0"
#endif

namespace codeprov {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

enum class Level { Quiet, Info, Debug };

struct Context {
  std::ostream& out;
  std::ostream& err;
  Level level = Level::Info;
  unsigned workers = 1;
  std::optional<std::uint64_t> seed;
  std::string config_path;

  void info(const std::string& msg) const {
    if (level != Level::Quiet) err << msg << '\n';
  }
  void warn(const std::string& msg) const {
    if (level != Level::Quiet) err << "warning: " << msg << '\n';
  }
};

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot open " + p.string());
  return in;
}

/// Writes to a temporary sibling and renames, so a failed run leaves no
/// partial artifact.
template <typename Fn>
void write_file(const fs::path& p, Fn&& fn) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DataError("cannot write " + p.string());
    fn(out);
    out.flush();
    if (!out) throw DataError("cannot write " + p.string());
  }
  fs::rename(tmp, p);
}

template <typename Record>
std::vector<Record> read_all(const Context& ctx, const fs::path& p) {
  auto in = open_in(p);
  auto r = read_records<Record>(in);
  for (const auto& d : r.diagnostics) ctx.warn(p.string() + ":" + std::to_string(d.line) + ": " + d.message);
  return std::move(r.records);
}

std::vector<ExternalScore> read_scores(const Context& ctx, const std::string& path) {
  if (path.empty()) return {};
  auto in = open_in(path);
  auto r = read_external_scores(in);
  for (const auto& d : r.diagnostics) ctx.warn(path + ":" + std::to_string(d.line) + ": " + d.message);
  return std::move(r.records);
}

std::int64_t parse_time_flag(const std::string& flag, const std::string& value) {
  const auto t = parse_utc(value);
  if (!t) throw CLI::ValidationError(flag, "expected YYYY-MM-DD or YYYY-MM-DDTHH:MM:SSZ, got '" + value + "'");
  return *t;
}

std::vector<fs::path> read_repo_list(const fs::path& file) {
  auto in = open_in(file);
  std::vector<fs::path> repos;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t");
    fs::path p = line.substr(first, last - first + 1);
    repos.push_back(p.is_absolute() ? p : file.parent_path() / p);
  }
  return repos;
}

std::vector<std::string> normalize_exts(const std::vector<std::string>& exts) {
  std::vector<std::string> out;
  for (std::string e : exts) {
    for (auto& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!e.empty() && e[0] != '.') e.insert(e.begin(), '.');
    out.push_back(e);
  }
  return out;
}

void write_samples(const fs::path& p, const std::vector<CodeSample>& samples) {
  write_file(p, [&](std::ostream& o) { write_records(std::span<const CodeSample>(samples), o); });
}

// ---------------------------------------------------------------------------

struct HarvestOpts {
  std::vector<std::string> repos;
  std::string repo_list;
  std::string preset = "wild";
  std::string since, until;
  std::vector<std::string> exts;
  std::uint64_t max_bytes = kDefaultMaxFileBytes;
  bool code_only = false;
  std::string out;
};

HarvestSpec make_spec(const HarvestOpts& o, bool human_default) {
  HarvestSpec spec;
  for (const auto& r : o.repos) spec.repos.emplace_back(r);
  if (!o.repo_list.empty())
    for (auto& r : read_repo_list(o.repo_list)) spec.repos.push_back(std::move(r));
  if (spec.repos.empty()) throw CLI::ValidationError("--repo", "no repositories given (use --repo or --repos)");
  const bool human = human_default || o.preset == "human";
  spec.start = o.since.empty() ? (human ? human_window_start() : wild_window_start()) : parse_time_flag("--since", o.since);
  spec.end = o.until.empty() ? (human ? human_window_end() : wild_window_end()) : parse_time_flag("--until", o.until);
  spec.allowlist = o.exts.empty() ? default_code_extensions() : normalize_exts(o.exts);
  spec.max_file_bytes = o.max_bytes;
  spec.validate();
  return spec;
}

void add_harvest_flags(CLI::App* cmd, HarvestOpts& o) {
  cmd->add_option("--repo", o.repos, "Local clone (repeatable)");
  cmd->add_option("--repos", o.repo_list, "File listing one clone path per line");
  cmd->add_option("--since", o.since, "Window start (inclusive), UTC date or timestamp");
  cmd->add_option("--until", o.until, "Window end (exclusive), UTC date or timestamp");
  cmd->add_option("--ext", o.exts, "Extension allowlist entry (repeatable); default: source-code extensions")
      ->delimiter(',');
  cmd->add_option("--max-bytes", o.max_bytes, "Skip files larger than this");
}

int cmd_harvest(const Context& ctx, const HarvestOpts& o) {
  const HarvestSpec spec = make_spec(o, false);
  ctx.info("harvesting " + std::to_string(spec.repos.size()) + " repositories, " + format_utc(spec.start) + " to " +
           format_utc(spec.end));
  HarvestResult h = harvest_all(spec, ctx.workers);
  for (const auto& d : h.diagnostics) ctx.warn(d);
  auto changes = o.code_only ? filter_code_files(h.changes, spec.allowlist) : h.changes;
  write_file(o.out, [&](std::ostream& out) { write_records(std::span<const CommitFileChange>(changes), out); });
  ctx.info("wrote " + std::to_string(changes.size()) + " changes to " + o.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct CorpusOpts {
  std::string kind;
  HarvestOpts harvest;
  std::string responses;
  std::string generator_cmd;
  std::string tasks;
  std::string changes;
  bool final_state = false;
  std::vector<std::string> inputs;
  bool dedup = false;
  std::string out;
};

std::vector<std::string> split_command(const std::string& cmd) {
  std::istringstream in(cmd);
  std::vector<std::string> argv;
  std::string a;
  while (in >> std::quoted(a)) argv.push_back(a);
  return argv;
}

int cmd_build_corpus(const Context& ctx, const CorpusOpts& o) {
  std::vector<CodeSample> samples;
  if (o.kind == "human") {
    const HarvestSpec spec = make_spec(o.harvest, true);
    SubsetResult r = build_human_subset(spec, ctx.workers);
    for (const auto& d : r.diagnostics) ctx.warn(d);
    samples = std::move(r.samples);
  } else if (o.kind == "ai") {
    TaskMatrix matrix = default_task_matrix();
    if (!o.tasks.empty()) {
      auto in = open_in(o.tasks);
      try {
        matrix = task_matrix_from_json(json::parse(in));
      } catch (const json::exception& e) {
        throw DataError(o.tasks + ": " + e.what());
      }
    }
    ReadResult<GeneratedResponse> responses;
    if (!o.responses.empty()) {
      auto in = open_in(o.responses);
      responses = read_generated_responses(in);
    } else if (!o.generator_cmd.empty()) {
      responses = generate_via_subprocess(matrix, split_command(o.generator_cmd));
    } else {
      throw CLI::ValidationError("--responses", "kind 'ai' needs --responses or --generator-cmd");
    }
    for (const auto& d : responses.diagnostics) ctx.warn("response line " + std::to_string(d.line) + ": " + d.message);
    AiSubsetResult r = build_ai_subset(matrix, responses.records);
    for (const auto& d : r.diagnostics) ctx.warn(d);
    ctx.info(std::to_string(r.samples.size()) + " of " + std::to_string(matrix.cell_count()) + " task/model cells covered");
    samples = std::move(r.samples);
  } else if (o.kind == "wild") {
    if (o.changes.empty()) throw CLI::ValidationError("--changes", "kind 'wild' needs --changes");
    const auto changes = read_all<CommitFileChange>(ctx, o.changes);
    std::vector<CommitFileChange> selected;
    if (o.final_state) {
      selected = final_state(changes);
    } else {
      for (const auto& c : changes)
        if (c.change_kind != ChangeKind::Deleted) selected.push_back(c);
    }
    for (const auto& c : selected) samples.push_back(sample_from_change(c, ProvenanceLabel::Unknown));
  } else if (o.kind == "merge") {
    if (o.inputs.empty()) throw CLI::ValidationError("--in", "kind 'merge' needs at least one --in");
    for (const auto& p : o.inputs) {
      auto part = read_all<CodeSample>(ctx, p);
      std::move(part.begin(), part.end(), std::back_inserter(samples));
    }
    std::set<std::string> ids;
    for (const auto& s : samples)
      if (!ids.insert(s.id).second) throw DataError("sample id '" + s.id + "' appears in more than one input");
  }
  if (o.dedup) {
    DedupResult d = dedup(samples);
    ctx.info("dedup removed " + std::to_string(d.removed) + " samples");
    samples = std::move(d.samples);
  }
  write_samples(o.out, samples);
  ctx.info("wrote " + std::to_string(samples.size()) + " samples to " + o.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EnsembleOpts {
  std::string scores;
  std::string mode;
  std::string tau1, tau2;
};

PipelineConfig load_config(const Context& ctx, const EnsembleOpts& e) {
  if (ctx.config_path.empty())
    throw CLI::ValidationError("--config", "no ensemble config (pass --config or set CODEPROV_CONFIG)");
  PipelineConfig c = load_pipeline_config(ctx.config_path);
  if (ctx.seed) c.seed = *ctx.seed;
  if (!e.mode.empty()) {
    const auto m = parse_mode(e.mode);
    if (!m) throw CLI::ValidationError("--mode", "expected full, no-stage1 or no-stage2");
    c.ensemble.mode = *m;
  }
  try {
    if (!e.tau1.empty()) c.ensemble.tau1 = Decimal::parse(e.tau1);
    if (!e.tau2.empty()) c.ensemble.tau2 = Decimal::parse(e.tau2);
  } catch (const std::exception& ex) {
    throw CLI::ValidationError("--tau", ex.what());
  }
  c.ensemble.validate();
  return c;
}

void add_ensemble_flags(CLI::App* cmd, EnsembleOpts& e, bool with_mode) {
  cmd->add_option("--scores", e.scores, "External detector scores (JSON Lines)");
  if (with_mode) cmd->add_option("--mode", e.mode, "full | no-stage1 | no-stage2 (overrides config)");
  cmd->add_option("--tau1", e.tau1, "Stage-1 exit threshold (overrides config)");
  cmd->add_option("--tau2", e.tau2, "Stage-2 decision threshold (overrides config)");
}

struct VulnOpts {
  std::string in, out;
  bool label = false;
  bool strict = false;
  EnsembleOpts ensemble;
};

int cmd_import_vulns(const Context& ctx, const VulnOpts& o) {
  auto in = open_in(o.in);
  auto r = import_vuln_records(in, !o.label);
  for (const auto& d : r.diagnostics) ctx.warn(o.in + ":" + std::to_string(d.line) + ": " + d.message);
  if (o.strict && !r.diagnostics.empty()) throw DataError(std::to_string(r.diagnostics.size()) + " records rejected");
  if (o.label) {
    const PipelineConfig c = load_config(ctx, o.ensemble);
    const auto fragments = vuln_fragment_samples(r.records);
    const DetectorSet detectors = build_detectors(c, fragments, read_scores(ctx, o.ensemble.scores));
    for (const auto& d : label_vuln_sources(r.records, c.ensemble, detectors, ctx.workers)) ctx.warn(d);
  }
  write_file(o.out, [&](std::ostream& out) { write_records(std::span<const VulnRecord>(r.records), out); });
  ctx.info("wrote " + std::to_string(r.records.size()) + " vulnerability records to " + o.out);
  return kExitOk;
}

struct DetectOpts {
  std::string in, out;
  EnsembleOpts ensemble;
};

int cmd_detect(const Context& ctx, const DetectOpts& o) {
  const PipelineConfig c = load_config(ctx, o.ensemble);
  const auto samples = read_all<CodeSample>(ctx, o.in);
  const DetectorSet detectors = build_detectors(c, samples, read_scores(ctx, o.ensemble.scores));
  const BatchResult batch = classify_batch(c.ensemble, detectors, samples, ctx.workers);
  const auto verdicts = batch.successful();
  write_file(o.out, [&](std::ostream& out) { write_verdicts(verdicts, out); });
  ctx.info("wrote " + std::to_string(verdicts.size()) + " verdicts to " + o.out + " (mode " +
           std::string(to_string(c.ensemble.mode)) + ")");
  for (const auto& f : batch.failures) ctx.warn("sample '" + f.sample_id + "': " + f.message);
  if (!batch.failures.empty()) {
    ctx.err << "error: " << batch.failures.size() << " samples could not be classified\n";
    return kExitData;
  }
  return kExitOk;
}

struct EvalOpts {
  std::string corpus, out, profile_out, sweep_out;
  bool ablations = false;
  bool no_split = false;
  double fraction = kProfilingFraction;
  EnsembleOpts ensemble;
};

std::string metric_row(const std::string& name, const MetricsReport& m) {
  const auto& c = m.counts;
  return name + "," + format_metric(m.accuracy) + "," + format_metric(m.precision) + "," + format_metric(m.recall) + "," +
         format_metric(m.f1) + "," + std::to_string(c.tp) + "," + std::to_string(c.fp) + "," + std::to_string(c.fn) +
         "," + std::to_string(c.tn) + "\n";
}

int cmd_evaluate(const Context& ctx, const EvalOpts& o) {
  const PipelineConfig c = load_config(ctx, o.ensemble);
  const auto corpus = read_all<CodeSample>(ctx, o.corpus);
  const DetectorSet detectors = build_detectors(c, corpus, read_scores(ctx, o.ensemble.scores));

  std::vector<CodeSample> profiling, held_out;
  if (o.no_split) {
    profiling = held_out = corpus;
  } else {
    Split s = split(corpus, o.fraction, c.seed);
    profiling = std::move(s.part_a);
    held_out = std::move(s.part_b);
    ctx.info("profiling split: " + std::to_string(profiling.size()) + " samples; evaluation: " +
             std::to_string(held_out.size()));
  }
  if (!o.profile_out.empty()) {
    const auto profiles = profile_detectors(detectors, profiling);
    write_file(o.profile_out, [&](std::ostream& out) {
      out << "detector,group,accuracy,precision,recall,f1,tp,fp,fn,tn\n";
      for (const auto& p : profiles) {
        std::string row = metric_row(p.detector_id, p.metrics);
        row.insert(p.detector_id.size(), "," + std::string(to_string(p.group)));
        out << row;
      }
    });
  }

  std::vector<EnsembleMode> modes = {c.ensemble.mode};
  if (o.ablations) modes.assign(std::begin(kAllModes), std::end(kAllModes));
  const auto reports = evaluate_ensemble(c.ensemble, detectors, held_out, modes, ctx.workers);
  std::string csv = "mode,accuracy,precision,recall,f1,tp,fp,fn,tn\n";
  for (EnsembleMode m : modes) csv += metric_row(std::string(to_string(m)), reports.at(m));
  if (o.out.empty()) ctx.out << csv;
  else write_file(o.out, [&](std::ostream& out) { out << csv; });

  if (!o.sweep_out.empty()) {
    std::vector<Decimal> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(Decimal::from_ticks(i * (Decimal::kScale / 100)));
    const auto curve = threshold_sweep(c.ensemble, detectors, held_out, grid);
    write_file(o.sweep_out, [&](std::ostream& out) {
      out << "tau2,accuracy,precision,recall,f1,tp,fp,fn,tn\n";
      for (const auto& p : curve) out << metric_row(p.tau2.to_string(), p.report);
    });
  }
  return kExitOk;
}

struct AnalyzeOpts {
  std::string verdicts, changes, vulns, out_dir, cwe_map;
  bool per_commit = false;
};

int cmd_analyze(const Context& ctx, const AnalyzeOpts& o) {
  if (!o.changes.empty() && o.verdicts.empty())
    throw CLI::ValidationError("--verdicts", "adoption analyses need --verdicts alongside --changes");
  AnalyticsInputs in;
  if (!o.changes.empty()) in.changes = read_all<CommitFileChange>(ctx, o.changes);
  if (!o.verdicts.empty()) {
    auto f = open_in(o.verdicts);
    auto r = read_verdicts(f);
    for (const auto& d : r.diagnostics) ctx.warn(o.verdicts + ":" + std::to_string(d.line) + ": " + d.message);
    in.verdicts = std::move(r.records);
  }
  if (!o.vulns.empty()) in.vulns = read_all<VulnRecord>(ctx, o.vulns);
  std::optional<CweMap> map;
  if (!o.cwe_map.empty()) map = CweMap::load(o.cwe_map);
  in.cwe_map = map ? &*map : nullptr;
  in.per_commit = o.per_commit;
  const ReportFiles r = write_analytics(in, o.out_dir);
  for (const auto& d : r.diagnostics) ctx.warn(d);
  ctx.info("wrote " + std::to_string(r.files.size()) + " files to " + o.out_dir);
  return kExitOk;
}

struct ReportOpts {
  std::string in, out_dir;
};

int cmd_report(const Context& ctx, const ReportOpts& o) {
  const auto samples = read_all<CodeSample>(ctx, o.in);
  const CorpusProfile p = corpus_profile(samples);
  std::ostringstream domains, langs, lcs;
  domains << "domain,human,ai,total\n";
  for (const auto& d : p.domains)
    domains << csv_field(display_name(d.domain)) << ',' << d.human << ',' << d.ai << ',' << d.human + d.ai << '\n';
  langs << "language,human,ai,unknown,total\n";
  for (const auto& l : p.languages)
    langs << to_string(l.language) << ',' << l.human << ',' << l.ai << ',' << l.unknown << ','
          << l.human + l.ai + l.unknown << '\n';
  lcs << "bucket,samples\n"
      << "lcs<20," << p.lcs_low << "\n20<=lcs<=80," << p.lcs_mid << "\nlcs>80," << p.lcs_high << '\n';
  if (o.out_dir.empty()) {
    ctx.out << domains.str() << '\n' << langs.str() << '\n' << lcs.str();
  } else {
    const fs::path dir(o.out_dir);
    write_file(dir / "corpus_domains.csv", [&](std::ostream& out) { out << domains.str(); });
    write_file(dir / "corpus_languages.csv", [&](std::ostream& out) { out << langs.str(); });
    write_file(dir / "corpus_lcs_buckets.csv", [&](std::ostream& out) { out << lcs.str(); });
    ctx.info("wrote corpus profile for " + std::to_string(p.total) + " samples to " + o.out_dir);
  }
  return kExitOk;
}

std::string version_json() {
  return json{{"tool", kToolName}, {"version", CODEPROV_VERSION}, {"schema", kSchemaVersion}}.dump();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Code provenance toolkit: corpus building, cascade detection and analytics", kToolName};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", version_json(), "Print tool and schema versions as JSON");

  Context ctx{out, err, Level::Info, 1, std::nullopt, {}};
  std::string level = "info";
  if (const char* env = std::getenv("CODEPROV_CONFIG")) ctx.config_path = env;
  ctx.workers = 1;
  app.add_option("--config", ctx.config_path, "Ensemble config (default: $CODEPROV_CONFIG)");
  app.add_option("--seed", ctx.seed, "Seed for splits and model training (overrides config)");
  app.add_option("--workers", ctx.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--log-level", level, "quiet | info | debug")->check(CLI::IsMember({"quiet", "info", "debug"}));

  HarvestOpts harvest;
  auto* h = app.add_subcommand("harvest", "Extract per-commit file changes from local clones");
  add_harvest_flags(h, harvest);
  h->add_option("--preset", harvest.preset, "Default window: human (2008-2010) or wild (2022 to mid-2025)")
      ->check(CLI::IsMember({"human", "wild"}));
  h->add_flag("--code-only", harvest.code_only, "Keep only allowlisted extensions");
  h->add_option("--out", harvest.out, "Output changes (JSON Lines)")->required();

  CorpusOpts corpus;
  auto* b = app.add_subcommand("build-corpus", "Build a sample corpus");
  b->add_option("--kind", corpus.kind, "human | ai | wild | merge")
      ->required()
      ->check(CLI::IsMember({"human", "ai", "wild", "merge"}));
  add_harvest_flags(b, corpus.harvest);
  b->add_option("--responses", corpus.responses, "ai: generator responses (JSON Lines)");
  b->add_option("--generator-cmd", corpus.generator_cmd, "ai: command that answers task lines on stdin");
  b->add_option("--tasks", corpus.tasks, "ai: task matrix JSON (default: built-in preset)");
  b->add_option("--changes", corpus.changes, "wild: harvested changes");
  b->add_flag("--final-state", corpus.final_state, "wild: only the final state of each file");
  b->add_option("--in", corpus.inputs, "merge: sample files (repeatable)");
  b->add_flag("--dedup", corpus.dedup, "Drop samples whose content repeats an earlier one");
  b->add_option("--out", corpus.out, "Output samples (JSON Lines)")->required();

  VulnOpts vulns;
  auto* v = app.add_subcommand("import-vulns", "Validate and import vulnerability records");
  v->add_option("--in", vulns.in, "Vulnerability records (JSON Lines)")->required();
  v->add_option("--out", vulns.out, "Validated records")->required();
  v->add_flag("--label", vulns.label, "Set intro/fix sources by running the ensemble on the fragments");
  v->add_flag("--strict", vulns.strict, "Fail when any record is rejected");
  add_ensemble_flags(v, vulns.ensemble, true);

  DetectOpts detect;
  auto* d = app.add_subcommand("detect", "Classify samples with the cascade ensemble");
  d->add_option("--in", detect.in, "Samples (JSON Lines)")->required();
  d->add_option("--out", detect.out, "Verdicts (JSON Lines)")->required();
  add_ensemble_flags(d, detect.ensemble, true);

  EvalOpts eval;
  auto* e = app.add_subcommand("evaluate", "Profile detectors and score the ensemble on a labeled corpus");
  e->add_option("--corpus", eval.corpus, "Labeled samples (JSON Lines)")->required();
  e->add_option("--out", eval.out, "Metrics CSV (default: standard output)");
  e->add_flag("--ablations", eval.ablations, "Evaluate full, no-stage1 and no-stage2");
  e->add_option("--profile-out", eval.profile_out, "Per-detector profile CSV (profiling split)");
  e->add_option("--sweep-out", eval.sweep_out, "tau2 sweep CSV over 0, 0.01, ..., 1");
  e->add_option("--profiling-fraction", eval.fraction, "Profiling split fraction")->check(CLI::Range(0.01, 0.99));
  e->add_flag("--no-split", eval.no_split, "Profile and evaluate on the whole corpus");
  add_ensemble_flags(e, eval.ensemble, true);

  AnalyzeOpts analyze;
  auto* a = app.add_subcommand("analyze", "Adoption, security and trend analyses");
  a->add_option("--verdicts", analyze.verdicts, "Verdicts for harvested changes");
  a->add_option("--changes", analyze.changes, "Harvested changes");
  a->add_option("--vulns", analyze.vulns, "Vulnerability records");
  a->add_option("--cwe-map", analyze.cwe_map, "CWE to risk-category table (default: built-in)");
  a->add_flag("--per-commit", analyze.per_commit, "Adoption over every changed file instead of final state");
  a->add_option("--out-dir", analyze.out_dir, "Report directory")->required();

  ReportOpts report;
  auto* r = app.add_subcommand("report", "Corpus profile: domains, languages, LCS buckets");
  r->add_option("--in", report.in, "Samples (JSON Lines)")->required();
  r->add_option("--out-dir", report.out_dir, "Write CSV files here instead of standard output");

  std::vector<const char*> argv;
  std::string prog = kToolName;
  argv.push_back(prog.c_str());
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    if (args.empty()) {
      err << app.help();
      return kExitUsage;
    }
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << version_json() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }
  ctx.level = level == "quiet" ? Level::Quiet : level == "debug" ? Level::Debug : Level::Info;

  try {
    if (h->parsed()) return cmd_harvest(ctx, harvest);
    if (b->parsed()) return cmd_build_corpus(ctx, corpus);
    if (v->parsed()) return cmd_import_vulns(ctx, vulns);
    if (d->parsed()) return cmd_detect(ctx, detect);
    if (e->parsed()) return cmd_evaluate(ctx, eval);
    if (a->parsed()) return cmd_analyze(ctx, analyze);
    if (r->parsed()) return cmd_report(ctx, report);
  } catch (const CLI::ValidationError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const DataError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitData;
  } catch (const std::ios_base::failure& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitData;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace codeprov
