#include "codeprov/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "codeprov/error.hpp"
#include "codeprov/random.hpp"

namespace codeprov {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

double NgramModel::probability(std::u32string_view context, char32_t symbol) const {
  std::uint64_t joint = 0;
  std::uint64_t total = 0;
  if (auto it = counts_.find(std::u32string(context)); it != counts_.end()) {
    if (auto s = it->second.find(symbol); s != it->second.end()) joint = s->second;
    total = context_totals_.at(it->first);
  }
  return (static_cast<double>(joint) + 1.0) / (static_cast<double>(total) + static_cast<double>(vocabulary_size_));
}

std::optional<double> NgramModel::perplexity(std::string_view text) const {
  const std::u32string symbols = decode_utf8(text);
  if (symbols.empty()) return std::nullopt;
  const std::size_t ctx_len = static_cast<std::size_t>(order_ - 1);
  std::u32string context(ctx_len, kBoundary);
  double log_sum = 0.0;
  for (char32_t c : symbols) {
    log_sum += std::log(probability(context, c));
    if (ctx_len > 0) {
      context.erase(0, 1);
      context.push_back(c);
    }
  }
  return std::exp(-log_sum / static_cast<double>(symbols.size()));
}

NgramModel train_ngram(std::span<const CodeSample> corpus, int order, std::uint64_t seed) {
  if (corpus.empty()) throw DataError("ngram training corpus is empty");
  if (order < 1) throw DataError("ngram order must be at least 1");
  std::size_t total_symbols = 0;
  for (const auto& s : corpus) {
    if (s.label != ProvenanceLabel::AI) throw DataError("ngram training sample '" + s.id + "' is not labeled AI");
    total_symbols += decode_utf8(s.content).size();
  }
  if (total_symbols < static_cast<std::size_t>(order))
    throw DataError("ngram corpus has " + std::to_string(total_symbols) + " symbols, fewer than order " +
                    std::to_string(order));

  std::vector<std::size_t> idx(corpus.size());
  std::iota(idx.begin(), idx.end(), 0);
  seeded_shuffle(idx, seed);
  std::size_t n_cal = 0;
  if (corpus.size() >= 2) n_cal = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.1 * corpus.size())));
  std::vector<std::size_t> cal(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_cal));
  std::vector<std::size_t> train(idx.begin() + static_cast<std::ptrdiff_t>(n_cal), idx.end());
  // Keep training in corpus order so the count tables do not depend on the shuffle.
  std::sort(train.begin(), train.end());
  if (cal.empty()) cal = train;

  NgramModel m;
  m.order_ = order;
  const std::size_t ctx_len = static_cast<std::size_t>(order - 1);
  std::unordered_set<char32_t> vocab;
  for (std::size_t i : train) {
    std::u32string context(ctx_len, NgramModel::kBoundary);
    for (char32_t c : decode_utf8(corpus[i].content)) {
      vocab.insert(c);
      ++m.counts_[context][c];
      ++m.context_totals_[context];
      if (ctx_len > 0) {
        context.erase(0, 1);
        context.push_back(c);
      }
    }
  }
  m.vocabulary_size_ = vocab.size() + 1;

  std::vector<double> perplexities;
  for (std::size_t i : cal)
    if (auto p = m.perplexity(corpus[i].content)) perplexities.push_back(*p);
  if (perplexities.empty()) throw DataError("ngram calibration slice has no non-empty samples");
  m.calibration_.midpoint = median(std::move(perplexities));
  m.calibration_.slope = kNgramSlopeScale / m.calibration_.midpoint;
  return m;
}

DetectorScore ngram_score(const NgramModel& model, const CodeSample& sample, const std::string& detector_id) {
  DetectorScore out{detector_id, Decimal::from_ticks(Decimal::kScale / 2), {}};
  const auto ppl = model.perplexity(sample.content);
  if (!ppl) {
    out.aux["empty_content"] = 1.0;
    return out;
  }
  const auto& cal = model.calibration();
  out.score = Decimal::from_double(logistic((cal.midpoint - *ppl) * cal.slope));
  out.aux["perplexity"] = *ppl;
  return out;
}

}  // namespace codeprov
