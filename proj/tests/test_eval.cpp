#include <doctest.h>

#include <map>
#include <random>

#include "codeprov/error.hpp"
#include "codeprov/eval.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace codeprov;
using namespace codeprov::testing;

namespace {

Rational as_rational(const Fraction& f) { return Rational(f.num(), f.den()); }

bool same(const Metric& m, const std::optional<Rational>& oracle) {
  if (!m || !oracle) return !m && !oracle;
  return as_rational(*m) == *oracle;
}

std::vector<CodeSample> balanced(std::size_t ai, std::size_t human) {
  std::vector<CodeSample> out;
  for (std::size_t i = 0; i < ai; ++i) out.push_back(make_sample("a" + std::to_string(i), ProvenanceLabel::AI));
  for (std::size_t i = 0; i < human; ++i) out.push_back(make_sample("h" + std::to_string(i), ProvenanceLabel::Human));
  return out;
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("confusion counts") {
    const auto truth = balanced(4, 4);
    std::vector<LabeledPrediction> correct, all_ai;
    for (const auto& s : truth) {
      correct.push_back({s.id, s.label == ProvenanceLabel::AI});
      all_ai.push_back({s.id, true});
    }
    CHECK(confusion(correct, truth) == ConfusionCounts{4, 0, 0, 4});
    CHECK(confusion(all_ai, truth) == ConfusionCounts{4, 4, 0, 0});

    std::vector<LabeledPrediction> short_list(correct.begin(), correct.end() - 1);
    CHECK_THROWS_AS(confusion(short_list, truth), DataError);
    auto renamed = correct;
    renamed[0].id = "zz";
    CHECK_THROWS_AS(confusion(renamed, truth), DataError);
    auto unknown = truth;
    unknown[0].label = ProvenanceLabel::Unknown;
    CHECK_THROWS_AS(confusion(correct, unknown), DataError);
  }

  TEST_CASE("confusion agrees with a hand count") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<CodeSample> truth;
      std::vector<LabeledPrediction> preds;
      ConfusionCounts hand;
      for (int i = 0; i < 50; ++i) {
        const bool ai = rng() % 2;
        const bool said_ai = rng() % 2;
        truth.push_back(make_sample("s" + std::to_string(i), ai ? ProvenanceLabel::AI : ProvenanceLabel::Human));
        preds.push_back({"s" + std::to_string(i), said_ai});
        (ai ? (said_ai ? hand.tp : hand.fn) : (said_ai ? hand.fp : hand.tn))++;
      }
      std::shuffle(preds.begin(), preds.end(), rng);
      CHECK(confusion(preds, truth) == hand);
    }
  }

  TEST_CASE("metrics examples") {
    const auto m = metrics({4, 4, 0, 0});
    CHECK(m.accuracy == Fraction(1, 2));
    CHECK(m.precision == Fraction(1, 2));
    CHECK(m.recall == Fraction(1, 1));
    CHECK(m.f1 == Fraction(2, 3));
    const auto none = metrics({0, 0, 4, 4});
    CHECK_FALSE(none.precision.has_value());
    CHECK(none.recall == Fraction(0, 1));
    CHECK_FALSE(none.f1.has_value());
    const auto perfect = metrics({3, 0, 0, 5});
    CHECK(perfect.accuracy == Fraction(1, 1));
    CHECK(perfect.f1 == Fraction(1, 1));
    CHECK_THROWS_AS(metrics({0, 0, 0, 0}), DataError);
    CHECK_THROWS_AS(metrics({-1, 0, 0, 2}), DataError);
  }

  TEST_CASE("metrics match the rational oracle on every small matrix") {
    for (int tp = 0; tp <= 4; ++tp)
      for (int fp = 0; fp <= 4; ++fp)
        for (int fn = 0; fn <= 4; ++fn)
          for (int tn = 0; tn <= 4; ++tn) {
            if (tp + fp + fn + tn == 0) continue;
            const auto m = metrics({tp, fp, fn, tn});
            const auto o = metrics_oracle(tp, fp, fn, tn);
            INFO(tp, " ", fp, " ", fn, " ", tn);
            CHECK(same(m.accuracy, o.accuracy));
            CHECK(same(m.precision, o.precision));
            CHECK(same(m.recall, o.recall));
            CHECK(same(m.f1, o.f1));
          }
  }

  TEST_CASE("split sizes and stratification") {
    auto ten = balanced(5, 5);
    const Split s = split(ten, 0.3, 1);
    CHECK(s.part_a.size() == 3);
    CHECK(s.part_b.size() == 7);

    const auto hundred = balanced(50, 50);
    const Split h = split(hundred, 0.3, 42);
    std::map<ProvenanceLabel, int> counts;
    for (const auto& x : h.part_a) ++counts[x.label];
    CHECK(counts[ProvenanceLabel::AI] == 15);
    CHECK(counts[ProvenanceLabel::Human] == 15);

    const Split again = split(hundred, 0.3, 42);
    CHECK(again.part_a == h.part_a);
    CHECK(again.part_b == h.part_b);
    CHECK(split(hundred, 0.3, 43).part_a != h.part_a);

    CHECK_THROWS_AS(split(balanced(1, 0), 0.3, 0), DataError);
    CHECK_THROWS_AS(split(hundred, 1.0, 0), DataError);
  }

  TEST_CASE("split partitions and keeps corpus order") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + rng() % 60;
      std::vector<CodeSample> corpus;
      for (std::size_t i = 0; i < n; ++i)
        corpus.push_back(make_sample("s" + std::to_string(i), static_cast<ProvenanceLabel>(rng() % 3)));
      const double f = 0.05 + 0.9 * static_cast<double>(rng() % 1000) / 1000.0;
      const Split s = split(corpus, f, rng());
      CHECK(s.part_a.size() + s.part_b.size() == n);
      CHECK(s.part_a.size() == static_cast<std::size_t>(std::llround(f * static_cast<double>(n))));
      std::size_t ia = 0, ib = 0;
      for (const auto& x : corpus) {
        if (ia < s.part_a.size() && s.part_a[ia].id == x.id) ++ia;
        else if (ib < s.part_b.size() && s.part_b[ib].id == x.id) ++ib;
      }
      CHECK(ia == s.part_a.size());
      CHECK(ib == s.part_b.size());
    }
  }

  TEST_CASE("degenerate masters") {
    auto corpus = balanced(10, 10);
    EnsembleConfig c;
    c.master_id = "m";
    c.aux_ids = {"x"};
    const DetectorSet hi{std::make_shared<ConstantDetector>("m", Decimal::parse("0.95")),
                         std::make_shared<ConstantDetector>("x", Decimal())};
    auto r = evaluate_ensemble(c, hi, corpus, kAllModes);
    CHECK(r.at(EnsembleMode::NoStage2) == r.at(EnsembleMode::Full));

    const DetectorSet lo{std::make_shared<ConstantDetector>("m", Decimal()),
                         std::make_shared<ConstantDetector>("x", Decimal::from_int(1))};
    r = evaluate_ensemble(c, lo, corpus, kAllModes);
    CHECK(r.at(EnsembleMode::NoStage2).recall == Fraction(0, 1));
    CHECK_THROWS_AS(evaluate_ensemble(c, lo, balanced(3, 0), kAllModes), DataError);
  }
}
