#include "codeprov/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "codeprov/decimal.hpp"
#include "codeprov/error.hpp"

namespace codeprov {

namespace {

constexpr std::size_t kExactMaxPooled = 120;

void check_groups(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DataError("Mann-Whitney test needs two non-empty groups");
}

/// Doubled midranks of the pooled data (a first, then b), so ties stay integral.
std::vector<std::int64_t> doubled_ranks(std::span<const double> a, std::span<const double> b,
                                        std::vector<std::int64_t>* tie_sizes = nullptr) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
  std::vector<std::int64_t> ranks(pooled.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && pooled[order[j]] == pooled[order[i]]) ++j;
    // Ranks i+1 .. j average to (i+1+j)/2; doubled: i+1+j.
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = static_cast<std::int64_t>(i + 1 + j);
    if (tie_sizes) tie_sizes->push_back(static_cast<std::int64_t>(j - i));
    i = j;
  }
  return ranks;
}

/// 2U for group a from doubled ranks.
std::int64_t doubled_u(const std::vector<std::int64_t>& ranks, std::size_t n_a) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < n_a; ++i) sum += ranks[i];
  const auto n = static_cast<std::int64_t>(n_a);
  return sum - n * (n + 1);
}

}  // namespace

double mann_whitney_u_statistic(std::span<const double> a, std::span<const double> b) {
  check_groups(a, b);
  return static_cast<double>(doubled_u(doubled_ranks(a, b), a.size())) / 2.0;
}

double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b) {
  check_groups(a, b);
  const std::size_t n = a.size() + b.size();
  if (n > kExactMaxPooled) throw DataError("exact Mann-Whitney enumeration limited to 120 values");
  const auto ranks = doubled_ranks(a, b);
  const std::size_t k = a.size();
  const std::int64_t observed = doubled_u(ranks, k);
  const auto max_sum = static_cast<std::size_t>(std::accumulate(ranks.begin(), ranks.end(), std::int64_t{0}));

  // ways[j][s]: subsets of size j with doubled-rank sum s.
  std::vector<std::vector<int128>> ways(k + 1, std::vector<int128>(max_sum + 1, 0));
  ways[0][0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(ranks[i]);
    for (std::size_t j = std::min(k, i + 1); j >= 1; --j)
      for (std::size_t s = max_sum; s >= r; --s) {
        ways[j][s] += ways[j - 1][s - r];
        if (s == r) break;
      }
  }
  const auto offset = static_cast<std::int64_t>(k) * static_cast<std::int64_t>(k + 1);
  int128 total = 0, le = 0, ge = 0;
  for (std::size_t s = 0; s <= max_sum; ++s) {
    const int128 w = ways[k][s];
    if (w == 0) continue;
    const std::int64_t u2 = static_cast<std::int64_t>(s) - offset;
    total += w;
    if (u2 <= observed) le += w;
    if (u2 >= observed) ge += w;
  }
  const int128 tail = std::min(le, ge);
  return std::min(1.0, 2.0 * static_cast<double>(tail) / static_cast<double>(total));
}

double mann_whitney_normal_p(std::span<const double> a, std::span<const double> b) {
  check_groups(a, b);
  std::vector<std::int64_t> ties;
  const auto ranks = doubled_ranks(a, b, &ties);
  const double n1 = static_cast<double>(a.size()), n2 = static_cast<double>(b.size());
  const double n = n1 + n2;
  const double u = static_cast<double>(doubled_u(ranks, a.size())) / 2.0;
  double tie_term = 0.0;
  for (std::int64_t t : ties) tie_term += static_cast<double>(t * t * t - t);
  const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (var <= 0.0) return 1.0;
  const double dev = std::max(0.0, std::abs(u - n1 * n2 / 2.0) - 0.5);
  return std::min(1.0, std::erfc(dev / std::sqrt(var) / std::sqrt(2.0)));
}

RankTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, double alpha) {
  check_groups(a, b);
  RankTestResult r;
  r.n_a = a.size();
  r.n_b = b.size();
  r.u_statistic = mann_whitney_u_statistic(a, b);
  r.u_b = static_cast<double>(r.n_a * r.n_b) - r.u_statistic;
  r.exact = r.n_a + r.n_b <= kExactTestMaxTotal;
  r.p_value = r.exact ? mann_whitney_exact_p(a, b) : mann_whitney_normal_p(a, b);
  r.alpha = alpha;
  r.reject_null = r.p_value < alpha;
  r.median_a = median(a);
  r.median_b = median(b);
  r.mean_a = mean(a);
  r.mean_b = mean(b);
  return r;
}

double median(std::span<const double> values) {
  if (values.empty()) throw DataError("median of an empty group");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw DataError("mean of an empty group");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace codeprov
