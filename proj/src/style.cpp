#include "codeprov/style.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>

#include "codeprov/error.hpp"
#include "codeprov/random.hpp"

namespace codeprov {

namespace {

bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

template <typename Key>
double shannon_bits(const std::map<Key, std::size_t>& counts, std::size_t total) {
  double h = 0.0;
  for (const auto& [k, n] : counts) {
    const double p = static_cast<double>(n) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

double token_entropy(std::string_view content) {
  std::map<std::string_view, std::size_t> counts;
  std::size_t total = 0;
  std::size_t i = 0;
  while (i < content.size()) {
    const auto c = static_cast<unsigned char>(content[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (ident_char(c))
      while (j < content.size() && ident_char(static_cast<unsigned char>(content[j]))) ++j;
    ++counts[content.substr(i, j - i)];
    ++total;
    i = j;
  }
  if (total == 0) return 0.0;
  return shannon_bits(counts, total);
}

DetectorScore entropy_score(const CodeSample& sample, const LogisticCalibration& cal, const std::string& detector_id) {
  DetectorScore out{detector_id, Decimal::from_ticks(Decimal::kScale / 2), {}};
  if (sample.content.find_first_not_of(" \t\r\n") == std::string::npos) {
    out.aux["empty_content"] = 1.0;
    return out;
  }
  const double h = token_entropy(sample.content);
  out.score = Decimal::from_double(logistic((cal.midpoint - h) * cal.slope));
  out.aux["token_entropy"] = h;
  return out;
}

LogisticCalibration calibrate_entropy(std::span<const CodeSample> ai_corpus) {
  std::vector<double> hs;
  for (const auto& s : ai_corpus) {
    if (s.label != ProvenanceLabel::AI) throw DataError("entropy calibration sample '" + s.id + "' is not labeled AI");
    if (s.content.find_first_not_of(" \t\r\n") != std::string::npos) hs.push_back(token_entropy(s.content));
  }
  if (hs.empty()) throw DataError("entropy calibration corpus has no non-empty AI samples");
  return {median(std::move(hs)), kEntropySlope};
}

Eigen::VectorXd style_features(const CodeSample& sample, const LcsRules& rules) {
  const std::string& text = sample.content;
  const LcsRuleSet& rs = rules.for_language(sample.language);
  const ScanResult scan = blank_comments_and_strings(text, rs.grammar());
  const LexicalProfile profile{rs.count_control_flow(scan.code), rs.count_logical_ops(scan.code)};

  std::vector<double> lengths;
  std::size_t blank_lines = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    const std::string_view line(text.data() + start, nl - start);
    if (!(nl == text.size() && line.empty() && !lengths.empty())) {
      lengths.push_back(static_cast<double>(line.size()));
      if (line.find_first_not_of(" \t\r") == std::string_view::npos) ++blank_lines;
    }
    start = nl + 1;
  }
  double mean = 0.0, sd = 0.0;
  for (double l : lengths) mean += l;
  mean /= static_cast<double>(lengths.size());
  for (double l : lengths) sd += (l - mean) * (l - mean);
  sd = std::sqrt(sd / static_cast<double>(lengths.size()));

  std::size_t visible = 0;
  for (unsigned char c : text)
    if (!std::isspace(c)) ++visible;
  const double comment_ratio = visible == 0 ? 0.0 : static_cast<double>(scan.comment_chars) / visible;

  std::map<std::size_t, std::size_t> ident_lengths;
  std::size_t idents = 0;
  const std::string& code = scan.code;
  for (std::size_t i = 0; i < code.size();) {
    const auto c = static_cast<unsigned char>(code[i]);
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i + 1;
      while (j < code.size() && (std::isalnum(static_cast<unsigned char>(code[j])) || code[j] == '_')) ++j;
      ++ident_lengths[j - i];
      ++idents;
      i = j;
    } else if (std::isdigit(c)) {
      while (i < code.size() && std::isalnum(static_cast<unsigned char>(code[i]))) ++i;
    } else {
      ++i;
    }
  }
  const double ident_entropy = idents == 0 ? 0.0 : shannon_bits(ident_lengths, idents);

  Eigen::VectorXd f(kStyleFeatureCount);
  f << profile.lcs(), mean, sd, comment_ratio, ident_entropy,
      static_cast<double>(blank_lines) / static_cast<double>(lengths.size());
  return f;
}

double LogisticModel::predict(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd z = (x - mean).cwiseQuotient(scale);
  return logistic(weights.dot(z) + bias);
}

LogisticModel train_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const LogisticTrainOptions& opts) {
  if (x.rows() == 0 || x.rows() != y.size()) throw DataError("logistic training: empty or mismatched data");
  const Eigen::Index n = x.rows(), d = x.cols();
  LogisticModel m;
  m.mean = x.colwise().mean().transpose();
  m.scale = ((x.rowwise() - m.mean.transpose()).array().square().colwise().sum() / static_cast<double>(n))
                .sqrt()
                .transpose();
  for (Eigen::Index j = 0; j < d; ++j)
    if (m.scale(j) < 1e-12) m.scale(j) = 1.0;
  const Eigen::MatrixXd z = (x.rowwise() - m.mean.transpose()).array().rowwise() / m.scale.transpose().array();

  // Box-Muller on the portable uniform source keeps initialization identical
  // across standard libraries.
  std::mt19937_64 rng(opts.seed);
  m.weights.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double u1 = 1.0 - unit(rng), u2 = unit(rng);
    m.weights(j) = opts.init_scale * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  m.bias = 0.0;

  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    const Eigen::VectorXd logits = (z * m.weights).array() + m.bias;
    const Eigen::VectorXd p = logits.unaryExpr([](double v) { return logistic(v); });
    const Eigen::VectorXd err = p - y;
    m.weights -= opts.learning_rate * (z.transpose() * err) / static_cast<double>(n);
    m.bias -= opts.learning_rate * err.mean();
  }
  return m;
}

StyleModel StyleModel::zero() {
  StyleModel s;
  s.model_.weights = Eigen::VectorXd::Zero(kStyleFeatureCount);
  s.model_.mean = Eigen::VectorXd::Zero(kStyleFeatureCount);
  s.model_.scale = Eigen::VectorXd::Ones(kStyleFeatureCount);
  s.model_.bias = 0.0;
  s.trained_ = true;
  return s;
}

StyleModel StyleModel::train(std::span<const CodeSample> corpus, const LogisticTrainOptions& opts) {
  std::vector<const CodeSample*> used;
  for (const auto& s : corpus)
    if (s.label == ProvenanceLabel::AI || s.label == ProvenanceLabel::Human) used.push_back(&s);
  if (used.empty()) throw DataError("style training corpus has no labeled samples");
  Eigen::MatrixXd x(static_cast<Eigen::Index>(used.size()), static_cast<Eigen::Index>(kStyleFeatureCount));
  Eigen::VectorXd y(static_cast<Eigen::Index>(used.size()));
  for (std::size_t i = 0; i < used.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = style_features(*used[i]).transpose();
    y(static_cast<Eigen::Index>(i)) = used[i]->label == ProvenanceLabel::AI ? 1.0 : 0.0;
  }
  StyleModel s;
  s.model_ = train_logistic(x, y, opts);
  s.trained_ = true;
  return s;
}

double StyleModel::predict(const CodeSample& sample) const { return model_.predict(style_features(sample)); }

DetectorScore style_score(const StyleModel& model, const CodeSample& sample, const std::string& detector_id) {
  if (!model.trained()) throw DetectorError(detector_id, "style model is not trained");
  return {detector_id, Decimal::from_double(model.predict(sample)), {}};
}

}  // namespace codeprov
