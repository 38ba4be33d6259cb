#pragma once

#include <cstddef>
#include <span>

namespace codeprov {

inline constexpr double kDefaultAlpha = 0.05;
/// Groups with n1 + n2 at or below this size get the exact test.
inline constexpr std::size_t kExactTestMaxTotal = 12;

struct RankTestResult {
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double u_statistic = 0.0;  // U of group a, midranks for ties
  double u_b = 0.0;          // n_a * n_b - u_statistic
  double p_value = 1.0;      // two-sided
  bool exact = false;
  double alpha = kDefaultAlpha;
  bool reject_null = false;  // p_value < alpha
  double median_a = 0.0, median_b = 0.0;
  double mean_a = 0.0, mean_b = 0.0;
};

/// U of `a` from midrank sums. Throws DataError on an empty group.
double mann_whitney_u_statistic(std::span<const double> a, std::span<const double> b);

/// Exact two-sided p by enumerating every assignment of the pooled midranks
/// to group a: min(1, 2 * min(P(U <= u), P(U >= u))). Throws DataError on
/// an empty group or more than 120 pooled values.
double mann_whitney_exact_p(std::span<const double> a, std::span<const double> b);

/// Normal approximation with tie-corrected variance and a 0.5 continuity
/// correction. All-tied data gives 1.
double mann_whitney_normal_p(std::span<const double> a, std::span<const double> b);

/// Exact when n_a + n_b <= 12, normal approximation otherwise.
RankTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, double alpha = kDefaultAlpha);

double median(std::span<const double> values);
double mean(std::span<const double> values);

}  // namespace codeprov
