#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ingrank/errors.hpp"
#include "ingrank/ranking.hpp"

namespace ingrank {

struct RankStats {
  MetricKind metric = MetricKind::Tfidf;
  RankingLevel level = RankingLevel::Ingredient;
  size_t task_count = 0;
  long median_rank = 0;  // lower median for even counts
  double mean_rank = 0.0;
  double mean_pool_size = 0.0;
  double space_reduction = 0.0;            // 1 - mean_rank / mean_pool_size
  double space_reduction_mean_ratio = 0.0; // mean over tasks of (1 - rank/pool)
  double perfect_repair_rate = 0.0;
  std::vector<double> normalized_ranks;
};

struct RankObservation {
  size_t correct_rank = 0;  // 1-based
  size_t pool_size = 0;
};

inline RankStats rank_stats_from_observations(const std::vector<RankObservation>& observations,
                                              MetricKind metric, RankingLevel level) {
  if (observations.empty()) throw DataError("rank stats over an empty ranking set");
  RankStats stats;
  stats.metric = metric;
  stats.level = level;
  stats.task_count = observations.size();

  std::vector<long> ranks;
  double rank_sum = 0.0, pool_sum = 0.0, ratio_sum = 0.0;
  size_t perfect = 0;
  for (const RankObservation& o : observations) {
    if (o.pool_size == 0) throw DataError("rank stats over an empty candidate pool");
    long rank = static_cast<long>(o.correct_rank);
    ranks.push_back(rank);
    rank_sum += static_cast<double>(rank);
    pool_sum += static_cast<double>(o.pool_size);
    ratio_sum += 1.0 - static_cast<double>(rank) / static_cast<double>(o.pool_size);
    stats.normalized_ranks.push_back(static_cast<double>(rank) /
                                     static_cast<double>(o.pool_size));
    if (rank == 1) ++perfect;
  }
  std::sort(ranks.begin(), ranks.end());
  stats.median_rank = ranks[(ranks.size() - 1) / 2];
  stats.mean_rank = rank_sum / static_cast<double>(observations.size());
  stats.mean_pool_size = pool_sum / static_cast<double>(observations.size());
  stats.space_reduction = 1.0 - stats.mean_rank / stats.mean_pool_size;
  stats.space_reduction_mean_ratio = ratio_sum / static_cast<double>(observations.size());
  stats.perfect_repair_rate =
      static_cast<double>(perfect) / static_cast<double>(observations.size());
  return stats;
}

// Aggregates rankings whose correct ranks are all present.
inline RankStats rank_stats(const std::vector<Ranking>& rankings) {
  if (rankings.empty()) throw DataError("rank stats over an empty ranking set");
  std::vector<RankObservation> observations;
  observations.reserve(rankings.size());
  for (const Ranking& r : rankings) {
    if (!r.correct_rank)
      throw DataError("rank stats requires a present correct rank (task " + r.task_id + ")");
    observations.push_back({*r.correct_rank, r.pool_size()});
  }
  return rank_stats_from_observations(observations, rankings.front().metric,
                                      rankings.front().level);
}

struct WilcoxonResult {
  size_t n = 0;          // effective sample size after zero-difference removal
  double t_statistic = 0.0;  // min of the positive- and negative-rank sums
  double p_value = 1.0;      // two-sided
  bool reject_at_0_01 = false;
  bool exact = false;        // enumeration (n <= threshold) vs normal approximation
};

inline constexpr size_t kWilcoxonExactThreshold = 12;

namespace detail {

// average ranks of |values|, ties sharing their mean rank
inline std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<size_t> order(values.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size(), 0.0);
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

inline double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// exact two-sided p by enumerating W+ over all 2^n sign assignments
inline double wilcoxon_exact_p(const std::vector<double>& ranks, double t_statistic) {
  const size_t n = ranks.size();
  const uint64_t combos = 1ull << n;
  double total = 0.0;
  for (double r : ranks) total += r;
  uint64_t at_most = 0, at_least = 0;
  const double eps = 1e-9;
  for (uint64_t mask = 0; mask < combos; ++mask) {
    double w = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (mask & (1ull << i)) w += ranks[i];
    }
    if (w <= t_statistic + eps) ++at_most;
    if (w >= total - t_statistic - eps) ++at_least;
  }
  return std::min(1.0,
                  static_cast<double>(at_most + at_least) / static_cast<double>(combos));
}

// two-sided normal approximation with tie and continuity corrections
inline double wilcoxon_normal_p(const std::vector<double>& magnitudes,
                                double t_statistic) {
  const double n = static_cast<double>(magnitudes.size());
  double mean = n * (n + 1.0) / 4.0;
  double variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
  std::vector<double> sorted = magnitudes;
  std::sort(sorted.begin(), sorted.end());
  size_t i = 0;
  while (i < sorted.size()) {
    size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    double group = static_cast<double>(j - i + 1);
    variance -= (group * group * group - group) / 48.0;
    i = j + 1;
  }
  if (variance <= 0.0) throw DataError("degenerate sample: zero variance");
  double z = (t_statistic - mean + 0.5) / std::sqrt(variance);
  return std::min(1.0, 2.0 * standard_normal_cdf(z));
}

}  // namespace detail

// Paired two-sided Wilcoxon signed-rank test. Zero differences are dropped;
// |d| is ranked with average ranks for ties; T = min(W+, W-). The p-value is
// exact by enumerating all 2^n sign assignments when n <= 12, otherwise a
// normal approximation with tie and continuity corrections.
inline WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x,
                                           const std::vector<double>& y) {
  if (x.size() != y.size())
    throw DataError("wilcoxon requires paired samples of equal length");
  if (x.size() < 6) throw DataError("wilcoxon requires at least 6 pairs");

  std::vector<double> differences;
  for (size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - y[i];
    if (d != 0.0) differences.push_back(d);
  }
  if (differences.empty()) throw DataError("degenerate sample: all differences zero");

  std::vector<double> magnitudes;
  magnitudes.reserve(differences.size());
  for (double d : differences) magnitudes.push_back(std::fabs(d));
  std::vector<double> ranks = detail::average_ranks(magnitudes);

  double positive_sum = 0.0, negative_sum = 0.0;
  for (size_t i = 0; i < differences.size(); ++i) {
    (differences[i] > 0.0 ? positive_sum : negative_sum) += ranks[i];
  }

  WilcoxonResult result;
  result.n = differences.size();
  result.t_statistic = std::min(positive_sum, negative_sum);
  if (result.n <= kWilcoxonExactThreshold) {
    result.exact = true;
    result.p_value = detail::wilcoxon_exact_p(ranks, result.t_statistic);
  } else {
    result.p_value = detail::wilcoxon_normal_p(magnitudes, result.t_statistic);
  }
  result.reject_at_0_01 = result.p_value < 0.01;
  return result;
}

struct DensityTable {
  size_t bins = 0;
  std::vector<size_t> counts;        // histogram over (0, 1]
  std::vector<double> raw_values;    // normalized ranks, input order
};

// Histogram of normalized ranks for external violin/density plotting.
inline DensityTable distribution_export(const std::vector<Ranking>& rankings,
                                        size_t bins) {
  if (bins < 2) throw UsageError("distribution export requires at least 2 bins");
  DensityTable table;
  table.bins = bins;
  table.counts.assign(bins, 0);
  for (const Ranking& r : rankings) {
    std::optional<double> normalized = r.normalized_rank();
    if (!normalized) continue;
    table.raw_values.push_back(*normalized);
    size_t bin = static_cast<size_t>(*normalized * static_cast<double>(bins));
    if (bin >= bins) bin = bins - 1;  // normalized == 1.0
    ++table.counts[bin];
  }
  if (table.raw_values.empty())
    throw DataError("distribution export over an empty ranking set");
  return table;
}

}  // namespace ingrank
