#include <doctest.h>

#include <atomic>
#include <random>
#include <sstream>

#include "codeprov/cascade.hpp"
#include "codeprov/error.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace codeprov;
using namespace codeprov::testing;

namespace {

struct Fixed {
  EnsembleConfig config;
  DetectorSet detectors;
};

Fixed fixed(const std::string& master, const std::vector<std::string>& aux) {
  Fixed f;
  f.config.master_id = "m";
  f.detectors.add(std::make_shared<ConstantDetector>("m", Decimal::parse(master)));
  for (std::size_t i = 0; i < aux.size(); ++i) {
    const std::string id = "a" + std::to_string(i);
    f.config.aux_ids.push_back(id);
    f.detectors.add(std::make_shared<ConstantDetector>(id, Decimal::parse(aux[i])));
  }
  return f;
}

class CountingDetector final : public Detector {
 public:
  explicit CountingDetector(std::string id) : id_(std::move(id)) {}
  const std::string& id() const override { return id_; }
  DetectorScore score(const CodeSample&) const override {
    ++calls;
    return {id_, Decimal::parse("0.5"), {}};
  }
  mutable std::atomic<int> calls{0};

 private:
  std::string id_;
};

const CodeSample kSample = make_sample("s", ProvenanceLabel::Unknown);

}  // namespace

TEST_SUITE("cascade") {
  TEST_CASE("stage 1 exit skips auxiliaries") {
    Fixed f = fixed("0.95", {});
    auto counting = std::make_shared<CountingDetector>("aux");
    f.config.aux_ids = {"aux"};
    f.detectors.add(counting);
    const Verdict v = classify(f.config, f.detectors, kSample);
    CHECK(v.label == ProvenanceLabel::AI);
    CHECK(v.decision_path == DecisionPath::Stage1Exit);
    CHECK(v.final_score == Decimal::parse("0.95"));
    CHECK_FALSE(v.aggregate.has_value());
    CHECK(counting->calls == 0);
  }

  TEST_CASE("master exactly at tau1 does not exit") {
    const Verdict v = classify(fixed("0.9", {"0", "0"}).config, fixed("0.9", {"0", "0"}).detectors, kSample);
    CHECK(v.decision_path == DecisionPath::Stage2Aggregate);
  }

  TEST_CASE("weighted aggregation examples") {
    {
      const Fixed f = fixed("0.6", {"0.4", "0.5", "0.7", "0.3"});
      const Verdict v = classify(f.config, f.detectors, kSample);
      CHECK(v.label == ProvenanceLabel::Human);
      CHECK(v.decision_path == DecisionPath::Stage2Aggregate);
      REQUIRE(v.aggregate.has_value());
      // (1.2 + 1.9) / 6 = 0.516666..., floored on the 1e-12 grid.
      CHECK(v.final_score == Decimal::parse("0.516666666666"));
      CHECK(v.aggregate->weight_sum == static_cast<int128>(6) * Decimal::kScale);
    }
    {
      const Fixed f = fixed("0.6", {"0.5", "0.5", "0.7", "0.4"});
      const Verdict v = classify(f.config, f.detectors, kSample);
      CHECK(v.label == ProvenanceLabel::AI);
      CHECK(v.final_score == Decimal::parse("0.55"));
    }
  }

  TEST_CASE("tau2 boundary is inclusive") {
    for (const auto& [score, label] : std::vector<std::pair<std::string, ProvenanceLabel>>{
             {"0.52999", ProvenanceLabel::Human}, {"0.53", ProvenanceLabel::AI}, {"0.53001", ProvenanceLabel::AI}}) {
      const Fixed f = fixed(score, {score, score});
      CHECK(classify(f.config, f.detectors, kSample).label == label);
    }
  }

  TEST_CASE("aggregate equals the exact weighted mean") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t k = 1 + rng() % 6;
      Fixed f;
      f.config.master_id = "m";
      std::vector<Rational> scores, weights;
      for (std::size_t i = 0; i <= k; ++i) {
        const std::string id = i == 0 ? "m" : "a" + std::to_string(i);
        const auto ticks = static_cast<std::int64_t>(rng() % 900'000'000'001ULL);
        f.detectors.add(std::make_shared<ConstantDetector>(id, Decimal::from_ticks(ticks)));
        const auto wticks = static_cast<std::int64_t>(1 + rng() % 5'000'000'000'000ULL);
        f.config.weights[id] = Decimal::from_ticks(wticks);
        if (i) f.config.aux_ids.push_back(id);
        scores.emplace_back(ticks, Decimal::kScale);
        weights.emplace_back(wticks, Decimal::kScale);
      }
      const Verdict v = classify(f.config, f.detectors, kSample);
      const Rational exact = weighted_mean(scores, weights);
      REQUIRE(v.aggregate.has_value());
      CHECK(Rational(static_cast<long long>(v.final_score.ticks()), Decimal::kScale) <= exact);
      CHECK(exact - Rational(static_cast<long long>(v.final_score.ticks()), Decimal::kScale) <
            Rational(1, Decimal::kScale));
      CHECK((v.label == ProvenanceLabel::AI) == (exact >= Rational(53, 100)));
    }
  }

  TEST_CASE("modes") {
    Fixed f = fixed("0.6", {"1", "1"});
    f.config.mode = EnsembleMode::NoStage2;
    Verdict v = classify(f.config, f.detectors, kSample);
    CHECK(v.label == ProvenanceLabel::Human);
    CHECK(v.decision_path == DecisionPath::Stage1Fallthrough);

    Fixed g = fixed("0.95", {"0", "0"});
    g.config.mode = EnsembleMode::NoStage1;
    v = classify(g.config, g.detectors, kSample);
    CHECK(v.decision_path == DecisionPath::Stage2Aggregate);
    CHECK(v.label == ProvenanceLabel::Human);
  }

  TEST_CASE("mode algebra on random corpora") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
      const ScoredCorpus c = asymmetric_corpus(rng(), 50, 1 + rng() % 4);
      EnsembleConfig full = c.config, no1 = c.config, no2 = c.config;
      no1.mode = EnsembleMode::NoStage1;
      no2.mode = EnsembleMode::NoStage2;
      for (const auto& s : c.samples) {
        const Verdict vf = classify(full, c.detectors, s), v1 = classify(no1, c.detectors, s),
                      v2 = classify(no2, c.detectors, s);
        CHECK((v2.label == ProvenanceLabel::AI) == (vf.decision_path == DecisionPath::Stage1Exit));
        if (vf.decision_path != DecisionPath::Stage1Exit) CHECK(v1 == vf);
      }
    }
  }

  TEST_CASE("config validation") {
    EnsembleConfig c;
    CHECK_THROWS_AS(c.validate(), DataError);
    c.master_id = "m";
    c.aux_ids = {"m"};
    CHECK_THROWS_AS(c.validate(), DataError);
    c.aux_ids = {"a", "a"};
    CHECK_THROWS_AS(c.validate(), DataError);
    c.aux_ids = {"a"};
    c.validate();
    c.tau1 = Decimal::parse("1.5");
    CHECK_THROWS_AS(c.validate(), DataError);
    c.tau1 = kDefaultTau1;
    c.weights["a"] = Decimal();
    CHECK_THROWS_AS(c.validate(), DataError);
    c.weights.clear();
    CHECK(c.weight_of("m") == kMasterWeight);
    CHECK(c.weight_of("a") == kAuxWeight);

    const Fixed f = fixed("0.5", {"0.5"});
    EnsembleConfig missing = f.config;
    missing.aux_ids.push_back("ghost");
    CHECK_THROWS_AS(classify(missing, f.detectors, kSample), DataError);
  }

  TEST_CASE("config JSON") {
    const auto c = ensemble_config_from_json(nlohmann::json::parse(
        R"({"master":"m","auxiliaries":["a","b"],"tau2":"0.6","mode":"no-stage1","weights":{"a":"3"},"extra":1})"));
    CHECK(c.master_id == "m");
    CHECK(c.aux_ids == std::vector<std::string>{"a", "b"});
    CHECK(c.tau1 == kDefaultTau1);
    CHECK(c.tau2 == Decimal::parse("0.6"));
    CHECK(c.mode == EnsembleMode::NoStage1);
    CHECK(c.weight_of("a") == Decimal::from_int(3));
    CHECK(ensemble_config_from_json(nlohmann::json::parse(to_json(c).dump())) == c);
    CHECK_THROWS_AS(ensemble_config_from_json(nlohmann::json::parse(R"({"master":"m","auxiliaries":[],"mode":"x"})")),
                    DataError);
  }

  TEST_CASE("detector failures carry the detector id") {
    Fixed f = fixed("0.5", {"0.5"});
    f.config.aux_ids.push_back("bad");
    f.detectors.add(std::make_shared<FunctionDetector>("bad", [](const CodeSample& s) -> Decimal {
      if (s.id == "boom") throw std::runtime_error("exploded");
      if (s.id == "range") return Decimal::from_int(2);
      return Decimal();
    }));
    try {
      classify(f.config, f.detectors, make_sample("boom", ProvenanceLabel::Unknown));
      FAIL("expected DetectorError");
    } catch (const DetectorError& e) {
      CHECK(e.detector_id() == "bad");
    }
    CHECK_THROWS_AS(classify(f.config, f.detectors, make_sample("range", ProvenanceLabel::Unknown)), DetectorError);

    const std::vector<CodeSample> batch = {make_sample("ok", ProvenanceLabel::Unknown),
                                           make_sample("boom", ProvenanceLabel::Unknown),
                                           make_sample("ok2", ProvenanceLabel::Unknown)};
    const BatchResult r = classify_batch(f.config, f.detectors, batch, 2);
    CHECK(r.successful().size() == 2);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].index == 1);
    CHECK(r.failures[0].detector_id == "bad");
    CHECK(classify_batch(f.config, f.detectors, std::span<const CodeSample>(), 1).verdicts.empty());
  }

  TEST_CASE("batch is independent of worker count") {
    const ScoredCorpus c = asymmetric_corpus(5, 200);
    const auto one = classify_batch(c.config, c.detectors, c.samples, 1).successful();
    const auto four = classify_batch(c.config, c.detectors, c.samples, 4).successful();
    CHECK(one == four);
  }

  TEST_CASE("verdict JSON round trip") {
    const ScoredCorpus c = asymmetric_corpus(6, 100);
    const auto verdicts = classify_batch(c.config, c.detectors, c.samples).successful();
    std::stringstream io;
    write_verdicts(verdicts, io);
    const auto back = read_verdicts(io);
    CHECK(back.diagnostics.empty());
    CHECK(back.records == verdicts);
  }

  TEST_CASE("threshold sweep") {
    const ScoredCorpus c = asymmetric_corpus(12, 200);
    const std::vector<Decimal> grid = {Decimal(), Decimal::parse("0.53"), Decimal::from_int(1)};
    const auto curve = threshold_sweep(c.config, c.detectors, c.samples, grid);
    REQUIRE(curve.size() == 3);
    // tau2 = 0 labels every stage-2 sample AI.
    CHECK(curve[0].report.recall == Fraction(1, 1));
    EnsembleConfig at = c.config;
    const auto direct = classify_batch(at, c.detectors, c.samples).successful();
    std::int64_t tp = 0;
    for (const auto& v : direct)
      if (v.label == ProvenanceLabel::AI && v.sample_id.starts_with("ai-")) ++tp;
    CHECK(curve[1].report.counts.tp == tp);
    CHECK(metric_less(curve[2].report.recall, curve[1].report.recall));
    CHECK_THROWS_AS(threshold_sweep(c.config, c.detectors, c.samples, std::vector<Decimal>{}), DataError);
  }
}
