#include "codeprov/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "codeprov/charts.hpp"
#include "codeprov/corpus.hpp"
#include "codeprov/error.hpp"
#include "codeprov/lexical.hpp"
#include "embedded_config.hpp"

namespace codeprov {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double as_double(const Metric& m) { return m ? m->to_double() : kNaN; }

std::string fixed(double v, int digits = 6) {
  if (!std::isfinite(v)) return "undefined";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string opt_fixed(const std::optional<double>& v) { return v ? fixed(*v) : "undefined"; }

std::int64_t day_quarter(std::int64_t day) { return quarter_index(day * 86400); }

long cwe_number(const std::string& id) {
  try {
    return std::stol(id.substr(4));
  } catch (const std::exception&) {
    return std::numeric_limits<long>::max();
  }
}

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> header) { row(header); }
  void row(std::initializer_list<std::string_view> fields) {
    bool first = true;
    for (auto f : fields) {
      if (!first) text_ += ',';
      text_ += csv_field(f);
      first = false;
    }
    text_ += '\n';
  }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

}  // namespace

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::Language: return "language";
    case Dimension::TechStack: return "tech_stack";
    case Dimension::FileFunction: return "file_function";
    case Dimension::Repo: return "repo";
    case Dimension::All: return "all";
  }
  return "all";
}

JoinResult join_files(std::span<const CommitFileChange> changes, std::span<const Verdict> verdicts,
                      bool final_state_only) {
  std::unordered_map<std::string, bool> ai;
  for (const auto& v : verdicts) ai.emplace(v.sample_id, v.label == ProvenanceLabel::AI);
  std::vector<CommitFileChange> selected;
  if (final_state_only) {
    selected = final_state(changes);
  } else {
    for (const auto& c : changes)
      if (c.change_kind != ChangeKind::Deleted) selected.push_back(c);
  }
  JoinResult r;
  for (const auto& c : selected) {
    const std::string id = c.id();
    auto it = ai.find(id);
    if (it == ai.end()) {
      r.diagnostics.push_back("no verdict for '" + id + "'; file skipped");
      continue;
    }
    FileRecord f;
    f.id = id;
    f.repo = c.repo;
    f.path = c.path;
    f.timestamp = c.timestamp;
    f.language = detect_language(c.path, c.post_content.value_or(std::string()));
    f.tech_stack = classify_tech_stack(f.language);
    f.file_function = classify_file_function(c.path);
    f.is_ai = it->second;
    r.files.push_back(std::move(f));
  }
  return r;
}

std::string dimension_key(const FileRecord& f, Dimension d) {
  switch (d) {
    case Dimension::Language: return std::string(to_string(f.language));
    case Dimension::TechStack: return std::string(to_string(f.tech_stack));
    case Dimension::FileFunction: return std::string(to_string(f.file_function));
    case Dimension::Repo: return f.repo;
    case Dimension::All: return "all";
  }
  return "all";
}

std::vector<AdoptionRow> adoption_by(Dimension d, std::span<const FileRecord> files) {
  if (files.empty()) throw DataError("adoption analysis over an empty corpus");
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> groups;
  for (const auto& f : files) {
    auto& [ai, total] = groups[dimension_key(f, d)];
    ai += f.is_ai ? 1 : 0;
    ++total;
  }
  std::vector<AdoptionRow> rows;
  for (const auto& [key, counts] : groups)
    rows.push_back({key, counts.first, counts.second, Fraction(counts.first, counts.second)});
  return rows;
}

std::vector<QuarterRow> quarterly_series(Dimension d, std::span<const FileRecord> files) {
  std::vector<QuarterRow> rows;
  if (files.empty()) return rows;
  std::map<std::pair<std::int64_t, std::string>, std::pair<std::int64_t, std::int64_t>> cells;
  std::set<std::string> keys;
  std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
  for (const auto& f : files) {
    const std::int64_t q = quarter_index(f.timestamp);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    const std::string key = dimension_key(f, d);
    keys.insert(key);
    auto& [ai, total] = cells[{q, key}];
    ai += f.is_ai ? 1 : 0;
    ++total;
  }
  for (std::int64_t q = lo; q <= hi; ++q) {
    for (const auto& key : keys) {
      QuarterRow row{quarter_label(q), key, 0, 0, std::nullopt};
      if (auto it = cells.find({q, key}); it != cells.end()) {
        row.ai_files = it->second.first;
        row.total_files = it->second.second;
      }
      row.ai_file_rate = ratio(row.ai_files, row.total_files);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

TopNResult topn_bottomn(std::span<const AdoptionRow> repo_rows, std::span<const std::size_t> n_values) {
  std::vector<const AdoptionRow*> ranked;
  for (const auto& r : repo_rows) ranked.push_back(&r);
  std::sort(ranked.begin(), ranked.end(), [](const AdoptionRow* a, const AdoptionRow* b) {
    if (a->ai_file_rate != b->ai_file_rate) return a->ai_file_rate > b->ai_file_rate;
    return a->key < b->key;
  });
  TopNResult out;
  for (std::size_t n : n_values) {
    TopNGroup g;
    g.n = n;
    g.used = std::min(n, ranked.size());
    if (ranked.size() < 2 * n)
      out.diagnostics.push_back("top/bottom " + std::to_string(n) + ": only " + std::to_string(ranked.size()) +
                                " repositories; groups use " + std::to_string(g.used) + " each");
    if (g.used > 0) {
      const double k = static_cast<double>(g.used);
      for (std::size_t i = 0; i < g.used; ++i) {
        const AdoptionRow& top = *ranked[i];
        const AdoptionRow& bottom = *ranked[ranked.size() - 1 - i];
        g.top_mean_rate += top.ai_file_rate.to_double() / k;
        g.top_mean_total += static_cast<double>(top.total_files) / k;
        g.top_mean_ai += static_cast<double>(top.ai_files) / k;
        g.bottom_mean_rate += bottom.ai_file_rate.to_double() / k;
        g.bottom_mean_total += static_cast<double>(bottom.total_files) / k;
        g.bottom_mean_ai += static_cast<double>(bottom.ai_files) / k;
      }
    }
    out.groups.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<LanguageImpactRow> net_impact(std::span<const VulnRecord> records) {
  struct Acc {
    std::int64_t n = 0, intro = 0, fix = 0;
  };
  std::map<LanguageId, Acc> by_lang;
  Acc all;
  for (const auto& v : records) {
    for (Acc* a : {&by_lang[v.language], &all}) {
      ++a->n;
      a->intro += v.intro_source == Source::AI ? 1 : 0;
      a->fix += v.fix_source == Source::AI ? 1 : 0;
    }
  }
  std::vector<LanguageImpactRow> rows;
  auto emit = [&](std::string name, const Acc& a) {
    LanguageImpactRow r;
    r.language = std::move(name);
    r.records = a.n;
    r.intro_ai_share = Fraction(a.intro, a.n);
    r.fix_ai_share = Fraction(a.fix, a.n);
    r.net_impact = r.intro_ai_share - r.fix_ai_share;
    rows.push_back(std::move(r));
  };
  for (LanguageId l : kAllLanguages)
    if (auto it = by_lang.find(l); it != by_lang.end()) emit(std::string(to_string(l)), it->second);
  if (all.n > 0) emit("overall", all);
  return rows;
}

std::string_view to_string(RiskCategory c) {
  switch (c) {
    case RiskCategory::InputValidationEncoding: return "input_validation_encoding";
    case RiskCategory::CodeQualityRiskyApis: return "code_quality_risky_apis";
    case RiskCategory::AccessControlPermissions: return "access_control_permissions";
    case RiskCategory::Other: return "other";
  }
  return "other";
}

std::optional<RiskCategory> parse_risk_category(std::string_view s) {
  for (auto c : {RiskCategory::InputValidationEncoding, RiskCategory::CodeQualityRiskyApis,
                 RiskCategory::AccessControlPermissions, RiskCategory::Other})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

const CweMap& CweMap::defaults() {
  static const CweMap m = from_json(json::parse(embedded::cwe_map_json()));
  return m;
}

CweMap CweMap::from_json(const json& j) {
  CweMap m;
  try {
    for (const auto& e : j.at("cwes")) {
      CweEntry entry;
      entry.id = e.at("id").get<std::string>();
      if (!is_cwe_id(entry.id)) throw DataError("malformed CWE id '" + entry.id + "'");
      const auto cat = parse_risk_category(e.at("category").get<std::string>());
      if (!cat) throw DataError("unknown risk category for " + entry.id);
      entry.category = *cat;
      entry.name = e.value("name", std::string());
      if (e.contains("alt_name")) entry.alt_name = e["alt_name"].get<std::string>();
      if (!m.entries_.emplace(entry.id, entry).second) throw DataError("duplicate CWE entry " + entry.id);
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed CWE map: ") + e.what());
  }
  return m;
}

CweMap CweMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

const CweEntry* CweMap::find(const std::string& cwe_id) const {
  auto it = entries_.find(cwe_id);
  return it == entries_.end() ? nullptr : &it->second;
}

CweProfile cwe_profile(std::span<const VulnRecord> records, const CweMap& map) {
  CweProfile p;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> counts;
  for (const auto& v : records) {
    auto& [n, ai] = counts[v.cwe_id];
    ++n;
    ai += v.intro_source == Source::AI ? 1 : 0;
  }
  std::map<RiskCategory, std::int64_t> by_category;
  std::int64_t ai_total = 0;
  for (const auto& [id, c] : counts) {
    CweProfileRow row;
    row.cwe_id = id;
    row.records = c.first;
    row.ai_introduced = c.second;
    row.ai_share = Fraction(c.second, c.first);
    if (const CweEntry* e = map.find(id)) {
      row.name = e->name;
      row.category = e->category;
    } else {
      p.diagnostics.push_back(id + " is not in the CWE map; category other");
    }
    by_category[row.category] += row.ai_introduced;
    ai_total += row.ai_introduced;
    p.cwes.push_back(std::move(row));
  }
  std::stable_sort(p.cwes.begin(), p.cwes.end(), [](const CweProfileRow& a, const CweProfileRow& b) {
    return cwe_number(a.cwe_id) < cwe_number(b.cwe_id);
  });
  for (auto c : {RiskCategory::InputValidationEncoding, RiskCategory::CodeQualityRiskyApis,
                 RiskCategory::AccessControlPermissions, RiskCategory::Other})
    p.categories.push_back({c, by_category[c], ratio(by_category[c], ai_total)});
  return p;
}

RankTestResult severity_compare(std::span<const VulnRecord> records, double alpha) {
  std::vector<double> ai, human;
  for (const auto& v : records) (v.intro_source == Source::AI ? ai : human).push_back(v.cvss_base);
  if (ai.empty() || human.empty())
    throw DataError("severity comparison needs both AI- and human-introduced records");
  return mann_whitney_u(ai, human, alpha);
}

std::vector<AttackVectorRow> attack_vector_distribution(std::span<const VulnRecord> records) {
  std::map<std::pair<Source, AttackVector>, std::int64_t> counts;
  std::map<Source, std::int64_t> totals;
  for (const auto& v : records) {
    ++counts[{v.intro_source, v.attack_vector}];
    ++totals[v.intro_source];
  }
  std::vector<AttackVectorRow> rows;
  for (Source s : {Source::AI, Source::Human}) {
    if (!totals.contains(s)) continue;
    for (AttackVector av : kAllAttackVectors) {
      const std::int64_t c = counts[{s, av}];
      rows.push_back({s, av, c, Fraction(c, totals[s])});
    }
  }
  return rows;
}

std::vector<VulnQuarterRow> vuln_quarterly(std::span<const VulnRecord> records) {
  std::vector<VulnQuarterRow> rows;
  if (records.empty()) return rows;
  struct Acc {
    std::int64_t n = 0, intro = 0, fix = 0;
    std::vector<double> cvss_ai, cvss_human;
  };
  std::map<std::int64_t, Acc> by_q;
  for (const auto& v : records) {
    Acc& a = by_q[day_quarter(v.disclosed_day)];
    ++a.n;
    a.intro += v.intro_source == Source::AI ? 1 : 0;
    a.fix += v.fix_source == Source::AI ? 1 : 0;
    (v.intro_source == Source::AI ? a.cvss_ai : a.cvss_human).push_back(v.cvss_base);
  }
  for (std::int64_t q = by_q.begin()->first; q <= by_q.rbegin()->first; ++q) {
    VulnQuarterRow r;
    r.quarter = quarter_label(q);
    if (auto it = by_q.find(q); it != by_q.end()) {
      const Acc& a = it->second;
      r.records = a.n;
      r.intro_ai_rate = ratio(a.intro, a.n);
      r.fix_ai_rate = ratio(a.fix, a.n);
      if (!a.cvss_ai.empty()) r.mean_cvss_ai = mean(a.cvss_ai);
      if (!a.cvss_human.empty()) r.mean_cvss_human = mean(a.cvss_human);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

CorpusProfile corpus_profile(std::span<const CodeSample> samples) {
  CorpusProfile p;
  std::map<AppDomain, CorpusProfile::DomainRow> domains;
  std::map<LanguageId, CorpusProfile::LanguageRow> langs;
  for (const auto& s : samples) {
    ++p.total;
    const AppDomain d = classify_app_domain(s);
    auto& dr = domains.try_emplace(d, CorpusProfile::DomainRow{d}).first->second;
    auto& lr = langs.try_emplace(s.language, CorpusProfile::LanguageRow{s.language}).first->second;
    switch (s.label) {
      case ProvenanceLabel::Human: ++dr.human; ++lr.human; break;
      case ProvenanceLabel::AI: ++dr.ai; ++lr.ai; break;
      case ProvenanceLabel::Unknown: ++lr.unknown; break;
    }
    const double lcs = lexical_profile(s.content, s.language).lcs();
    if (lcs < kLcsLowBucketEdge) ++p.lcs_low;
    else if (lcs <= kLcsHighBucketEdge) ++p.lcs_mid;
    else ++p.lcs_high;
  }
  for (AppDomain d : kAllAppDomains) p.domains.push_back(domains.try_emplace(d, CorpusProfile::DomainRow{d}).first->second);
  for (LanguageId l : kAllLanguages)
    if (auto it = langs.find(l); it != langs.end()) p.languages.push_back(it->second);
  return p;
}

// ---------------------------------------------------------------------------

ReportFiles write_analytics(const AnalyticsInputs& in, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  ReportFiles report;
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(out_dir / name, std::ios::binary);
    out << text;
    if (!out) throw DataError("cannot write " + (out_dir / name).string());
    report.files.push_back(name);
  };
  auto both = [&](const std::string& stem, const Csv& csv, const std::string& svg) {
    write(stem + ".csv", csv.text());
    write(stem + ".svg", svg);
  };

  if (!in.changes.empty()) {
    JoinResult adopt = join_files(in.changes, in.verdicts, !in.per_commit);
    JoinResult commits = join_files(in.changes, in.verdicts, false);
    for (auto& d : adopt.diagnostics) report.diagnostics.push_back(std::move(d));
    if (adopt.files.empty()) {
      report.diagnostics.push_back("no changed file has a verdict; adoption analyses skipped");
    } else {
      std::vector<AdoptionRow> repo_rows;
      for (Dimension d : {Dimension::Language, Dimension::TechStack, Dimension::FileFunction, Dimension::Repo}) {
        const auto rows = adoption_by(d, adopt.files);
        if (d == Dimension::Repo) repo_rows = rows;
        Csv csv({std::string(to_string(d)), "ai_files", "total_files", "ai_file_rate"});
        ChartSpec chart{"AI file rate by " + std::string(to_string(d)), "AI file rate", {}, {{"ai_file_rate", {}}}, true};
        for (const auto& r : rows) {
          csv.row({r.key, std::to_string(r.ai_files), std::to_string(r.total_files), format_metric(r.ai_file_rate)});
          chart.categories.push_back(r.key);
          chart.series[0].values.push_back(r.ai_file_rate.to_double());
        }
        both("adoption_" + std::string(to_string(d)), csv, bar_chart_svg(chart));
      }

      const TopNResult topn = topn_bottomn(repo_rows, kTopNValues);
      for (const auto& d : topn.diagnostics) report.diagnostics.push_back(d);
      Csv csv({"n", "repos_per_group", "group", "mean_ai_file_rate", "mean_total_files", "mean_ai_files"});
      ChartSpec chart{"Top-N vs Bottom-N repositories", "mean AI file rate", {}, {{"top", {}}, {"bottom", {}}}, true};
      for (const auto& g : topn.groups) {
        csv.row({std::to_string(g.n), std::to_string(g.used), "top", fixed(g.top_mean_rate), fixed(g.top_mean_total),
                 fixed(g.top_mean_ai)});
        csv.row({std::to_string(g.n), std::to_string(g.used), "bottom", fixed(g.bottom_mean_rate),
                 fixed(g.bottom_mean_total), fixed(g.bottom_mean_ai)});
        chart.categories.push_back("N=" + std::to_string(g.n));
        chart.series[0].values.push_back(g.used ? g.top_mean_rate : kNaN);
        chart.series[1].values.push_back(g.used ? g.bottom_mean_rate : kNaN);
      }
      both("topn_bottomn", csv, bar_chart_svg(chart));
    }

    for (Dimension d : {Dimension::TechStack, Dimension::All}) {
      const auto rows = quarterly_series(d, commits.files);
      const std::string stem = d == Dimension::All ? "quarterly_contribution" : "quarterly_tech_stack";
      Csv csv({"quarter", std::string(to_string(d)), "ai_files", "total_files", "ai_file_rate"});
      ChartSpec chart{d == Dimension::All ? "AI share of changed files per quarter" : "Quarterly AI file rate by tech stack",
                      "AI share", {}, {}, true};
      std::map<std::string, std::size_t> series_index;
      for (const auto& r : rows) {
        csv.row({r.quarter, r.key, std::to_string(r.ai_files), std::to_string(r.total_files), format_metric(r.ai_file_rate)});
        if (chart.categories.empty() || chart.categories.back() != r.quarter) chart.categories.push_back(r.quarter);
        auto [it, fresh] = series_index.emplace(r.key, chart.series.size());
        if (fresh) chart.series.push_back({r.key, {}});
        chart.series[it->second].values.push_back(as_double(r.ai_file_rate));
      }
      both(stem, csv, line_chart_svg(chart));
    }
  } else {
    report.diagnostics.push_back("no changes given; adoption and contribution analyses skipped");
  }

  if (!in.vulns.empty()) {
    {
      Csv csv({"language", "records", "intro_ai_share", "fix_ai_share", "net_impact"});
      ChartSpec chart{"AI net impact by language", "intro share - fix share", {}, {{"net_impact", {}}}, false};
      for (const auto& r : net_impact(in.vulns)) {
        csv.row({r.language, std::to_string(r.records), format_metric(r.intro_ai_share), format_metric(r.fix_ai_share),
                 format_metric(r.net_impact)});
        chart.categories.push_back(r.language);
        chart.series[0].values.push_back(r.net_impact.to_double());
      }
      both("net_impact", csv, bar_chart_svg(chart));
    }
    {
      const CweProfile p = cwe_profile(in.vulns, in.cwe_map ? *in.cwe_map : CweMap::defaults());
      for (const auto& d : p.diagnostics) report.diagnostics.push_back(d);
      Csv csv({"cwe_id", "name", "risk_category", "records", "ai_introduced", "ai_share"});
      ChartSpec chart{"AI-introduced share per CWE", "AI share", {}, {{"ai_share", {}}}, true};
      for (const auto& r : p.cwes) {
        csv.row({r.cwe_id, r.name, to_string(r.category), std::to_string(r.records), std::to_string(r.ai_introduced),
                 format_metric(r.ai_share)});
        chart.categories.push_back(r.cwe_id);
        chart.series[0].values.push_back(r.ai_share.to_double());
      }
      both("cwe_profile", csv, bar_chart_svg(chart));
      Csv cats({"risk_category", "ai_introduced", "share_of_ai_introduced"});
      ChartSpec cchart{"Risk categories of AI-introduced vulnerabilities", "share", {}, {{"share", {}}}, true};
      for (const auto& c : p.categories) {
        cats.row({to_string(c.category), std::to_string(c.ai_introduced), format_metric(c.share_of_ai)});
        cchart.categories.push_back(std::string(to_string(c.category)));
        cchart.series[0].values.push_back(as_double(c.share_of_ai));
      }
      both("cwe_categories", cats, bar_chart_svg(cchart));
    }
    try {
      const RankTestResult t = severity_compare(in.vulns);
      Csv csv({"n_ai", "n_human", "median_ai", "median_human", "mean_ai", "mean_human", "u_statistic", "p_value",
               "method", "alpha", "reject_null"});
      csv.row({std::to_string(t.n_a), std::to_string(t.n_b), fixed(t.median_a, 2), fixed(t.median_b, 2),
               fixed(t.mean_a, 2), fixed(t.mean_b, 2), fixed(t.u_statistic, 1), fixed(t.p_value), t.exact ? "exact" : "normal",
               fixed(t.alpha, 2), t.reject_null ? "true" : "false"});
      ChartSpec chart{"CVSS severity by introducing source", "CVSS base score", {"median", "mean"},
                      {{"ai", {t.median_a, t.mean_a}}, {"human", {t.median_b, t.mean_b}}}, false};
      both("severity", csv, bar_chart_svg(chart));
    } catch (const DataError& e) {
      report.diagnostics.push_back(std::string("severity comparison skipped: ") + e.what());
    }
    {
      Csv csv({"intro_source", "attack_vector", "count", "share"});
      ChartSpec chart{"Attack vectors by introducing source", "share", {}, {}, true};
      for (AttackVector av : kAllAttackVectors) chart.categories.push_back(std::string(to_string(av)));
      std::map<Source, std::size_t> idx;
      for (const auto& r : attack_vector_distribution(in.vulns)) {
        csv.row({to_string(r.source), to_string(r.vector), std::to_string(r.count), format_metric(r.share)});
        auto [it, fresh] = idx.emplace(r.source, chart.series.size());
        if (fresh) chart.series.push_back({std::string(to_string(r.source)), {}});
        chart.series[it->second].values.push_back(r.share.to_double());
      }
      both("attack_vectors", csv, bar_chart_svg(chart));
    }
    {
      Csv csv({"quarter", "records", "intro_ai_rate", "fix_ai_rate", "mean_cvss_ai", "mean_cvss_human"});
      ChartSpec chart{"Quarterly AI introduction and fix rates", "AI share", {}, {{"intro_ai_rate", {}}, {"fix_ai_rate", {}}}, true};
      for (const auto& r : vuln_quarterly(in.vulns)) {
        csv.row({r.quarter, std::to_string(r.records), format_metric(r.intro_ai_rate), format_metric(r.fix_ai_rate),
                 opt_fixed(r.mean_cvss_ai), opt_fixed(r.mean_cvss_human)});
        chart.categories.push_back(r.quarter);
        chart.series[0].values.push_back(as_double(r.intro_ai_rate));
        chart.series[1].values.push_back(as_double(r.fix_ai_rate));
      }
      both("vuln_quarterly", csv, line_chart_svg(chart));
    }
  } else {
    report.diagnostics.push_back("no vulnerability records given; security analyses skipped");
  }
  return report;
}

}  // namespace codeprov
