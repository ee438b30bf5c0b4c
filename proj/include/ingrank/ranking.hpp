#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ingrank/corpus.hpp"
#include "ingrank/metrics/similarity.hpp"
#include "ingrank/tasks.hpp"

namespace ingrank {

enum class RankingLevel { Ingredient, Context, Combined };

inline const char* to_string(RankingLevel level) {
  switch (level) {
    case RankingLevel::Ingredient: return "ingredient";
    case RankingLevel::Context: return "context";
    case RankingLevel::Combined: return "combined";
  }
  return "?";
}

// Tie handling for the reported correct-rank. Candidate order is always
// deterministic (score desc, then corpus position); pessimistic mode reports
// the worst rank inside the tie group instead of the first hit.
enum class TieMode { CorpusOrder, Pessimistic };

inline const char* to_string(TieMode mode) {
  return mode == TieMode::CorpusOrder ? "corpus-order" : "pessimistic";
}

struct RankedCandidate {
  std::string component_id;
  double score = 0.0;
};

struct Exclusion {
  std::string component_id;
  std::string reason;
};

namespace exclude {
inline constexpr const char* kEquivalentToModificationPoint =
    "equivalent-to-modification-point";
inline constexpr const char* kEquivalentToRecipientContext =
    "equivalent-to-recipient-context";
}  // namespace exclude

struct Ranking {
  std::string task_id;
  MetricKind metric = MetricKind::Tfidf;
  RankingLevel level = RankingLevel::Ingredient;
  std::vector<RankedCandidate> candidates;  // score desc, corpus position asc
  std::vector<Exclusion> excluded;
  std::optional<size_t> correct_rank;  // 1-based

  size_t pool_size() const { return candidates.size(); }
  std::optional<double> normalized_rank() const {
    if (!correct_rank || candidates.empty()) return std::nullopt;
    return static_cast<double>(*correct_rank) / static_cast<double>(candidates.size());
  }
};

struct RankOptions {
  TieMode tie_mode = TieMode::CorpusOrder;
  int jobs = 1;
};

namespace detail {

// Parallel map over the pool; scores land by index, so worker scheduling
// cannot change the result.
inline std::vector<double> score_pool(const CorpusIndex& corpus,
                                      const std::vector<size_t>& pool,
                                      const SourceComponent& query, MetricKind kind,
                                      const ModelContext& context, int jobs) {
  std::vector<double> scores(pool.size(), 0.0);
  int workers = std::max(1, jobs);
  if (workers == 1 || pool.size() < 2) {
    for (size_t i = 0; i < pool.size(); ++i) {
      scores[i] = similarity(kind, corpus.component(pool[i]), query, context);
    }
    return scores;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> threads;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= pool.size()) return;
        try {
          scores[i] = similarity(kind, corpus.component(pool[i]), query, context);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return scores;
}

// orders candidate pool positions by (score desc, pool position asc)
inline std::vector<size_t> sorted_order(const std::vector<double>& scores) {
  std::vector<size_t> order(scores.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return order;
}

inline std::optional<size_t> locate_rank(
    const std::vector<RankedCandidate>& candidates, const CorpusIndex& corpus,
    const SourceComponent& target, TieMode tie_mode) {
  std::optional<size_t> first_hit;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const SourceComponent& c = corpus.component(corpus.index_of(candidates[i].component_id));
    if (syntactically_equivalent(c, target)) {
      first_hit = i;
      break;
    }
  }
  if (!first_hit) return std::nullopt;
  if (tie_mode == TieMode::CorpusOrder) return *first_hit + 1;
  // pessimistic: last slot of the contiguous equal-score run holding the hit
  double score = candidates[*first_hit].score;
  size_t last = *first_hit;
  while (last + 1 < candidates.size() && candidates[last + 1].score == score) ++last;
  return last + 1;
}

}  // namespace detail

// Context-less ranking: every pooled statement scored against the
// modification point; statements syntactically equivalent to the modification
// point are excluded.
inline Ranking rank_ingredients(const CorpusIndex& corpus, const RepairTask& task,
                                MetricKind kind, const ModelContext& context,
                                const RankOptions& options = {}) {
  const SourceComponent& mod_point =
      corpus.component(corpus.index_of(task.modification_point_id));

  Ranking ranking;
  ranking.task_id = task.id;
  ranking.metric = kind;
  ranking.level = RankingLevel::Ingredient;

  std::vector<size_t> eligible;
  for (size_t idx : corpus.statement_pool()) {
    const SourceComponent& candidate = corpus.component(idx);
    if (syntactically_equivalent(candidate, mod_point)) {
      ranking.excluded.push_back({candidate.id, exclude::kEquivalentToModificationPoint});
    } else {
      eligible.push_back(idx);
    }
  }

  std::vector<double> scores =
      detail::score_pool(corpus, eligible, mod_point, kind, context, options.jobs);
  for (size_t i : detail::sorted_order(scores)) {
    ranking.candidates.push_back({corpus.component(eligible[i]).id, scores[i]});
  }
  ranking.correct_rank = detail::locate_rank(ranking.candidates, corpus,
                                             task.correct_ingredient, options.tie_mode);
  return ranking;
}

// Context-aware ranking: every pooled method scored against the recipient
// context; methods syntactically equivalent to the recipient are excluded.
// The correct rank is the first donor containing a statement syntactically
// equivalent to the correct ingredient.
inline Ranking rank_contexts(const CorpusIndex& corpus, const RepairTask& task,
                             MetricKind kind, const ModelContext& context,
                             const RankOptions& options = {}) {
  const SourceComponent& recipient =
      corpus.component(corpus.index_of(task.recipient_context_id));

  Ranking ranking;
  ranking.task_id = task.id;
  ranking.metric = kind;
  ranking.level = RankingLevel::Context;

  std::vector<size_t> eligible;
  for (size_t idx : corpus.context_pool()) {
    const SourceComponent& candidate = corpus.component(idx);
    if (syntactically_equivalent(candidate, recipient)) {
      ranking.excluded.push_back({candidate.id, exclude::kEquivalentToRecipientContext});
    } else {
      eligible.push_back(idx);
    }
  }

  std::vector<double> scores =
      detail::score_pool(corpus, eligible, recipient, kind, context, options.jobs);
  std::vector<size_t> order = detail::sorted_order(scores);
  for (size_t i : order) {
    ranking.candidates.push_back({corpus.component(eligible[i]).id, scores[i]});
  }

  auto donor_contains_ingredient = [&](const std::string& donor_id) {
    for (size_t idx : corpus.statements_of(donor_id)) {
      if (tokens_equivalent(corpus.component(idx).tokens,
                            task.correct_ingredient.tokens))
        return true;
    }
    return false;
  };
  std::optional<size_t> first_hit;
  for (size_t i = 0; i < ranking.candidates.size(); ++i) {
    if (donor_contains_ingredient(ranking.candidates[i].component_id)) {
      first_hit = i;
      break;
    }
  }
  if (first_hit) {
    if (options.tie_mode == TieMode::CorpusOrder) {
      ranking.correct_rank = *first_hit + 1;
    } else {
      double score = ranking.candidates[*first_hit].score;
      size_t last = *first_hit;
      while (last + 1 < ranking.candidates.size() &&
             ranking.candidates[last + 1].score == score)
        ++last;
      ranking.correct_rank = last + 1;
    }
  }
  return ranking;
}

// Two-level ranking: donors ordered by the context metric, then each donor's
// statements ordered by the ingredient metric, flattened donor by donor.
// Ingredient-level exclusions apply inside every donor.
inline Ranking rank_combined(const CorpusIndex& corpus, const RepairTask& task,
                             MetricKind context_metric, MetricKind ingredient_metric,
                             const ModelContext& context,
                             const RankOptions& options = {}) {
  const SourceComponent& mod_point =
      corpus.component(corpus.index_of(task.modification_point_id));

  Ranking donors = rank_contexts(corpus, task, context_metric, context, options);

  Ranking ranking;
  ranking.task_id = task.id;
  ranking.metric = MetricKind::Combined;
  ranking.level = RankingLevel::Combined;
  ranking.excluded = donors.excluded;

  for (const RankedCandidate& donor : donors.candidates) {
    std::vector<size_t> eligible;
    for (size_t idx : corpus.statements_of(donor.component_id)) {
      const SourceComponent& candidate = corpus.component(idx);
      if (syntactically_equivalent(candidate, mod_point)) {
        ranking.excluded.push_back(
            {candidate.id, exclude::kEquivalentToModificationPoint});
      } else {
        eligible.push_back(idx);
      }
    }
    std::vector<double> scores = detail::score_pool(corpus, eligible, mod_point,
                                                    ingredient_metric, context,
                                                    options.jobs);
    for (size_t i : detail::sorted_order(scores)) {
      ranking.candidates.push_back({corpus.component(eligible[i]).id, scores[i]});
    }
  }

  ranking.correct_rank = detail::locate_rank(ranking.candidates, corpus,
                                             task.correct_ingredient, options.tie_mode);
  return ranking;
}

}  // namespace ingrank
