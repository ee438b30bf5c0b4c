#pragma once

#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ingrank/cache.hpp"
#include "ingrank/ranking.hpp"
#include "ingrank/stats.hpp"
#include "ingrank/tasks.hpp"

namespace ingrank {

inline constexpr int kReportFormatVersion = 1;

struct WilcoxonEntry {
  MetricKind metric_a = MetricKind::Lcs;
  MetricKind metric_b = MetricKind::Tfidf;
  RankingLevel level = RankingLevel::Ingredient;
  bool computed = false;
  std::string note;  // why the pair was skipped, when it was
  WilcoxonResult result;
};

struct ExcludedTask {
  std::string task_id;
  MetricKind metric;
  RankingLevel level;
  std::string reason;
};

struct EvalReport {
  size_t task_count = 0;
  std::vector<RankStats> ingredient_stats;  // per metric, plus the combined row
  std::vector<RankStats> context_stats;     // per metric
  std::vector<WilcoxonEntry> wilcoxon;      // all pairs, both levels
  std::vector<ExcludedTask> excluded_tasks;
  std::vector<Ranking> rankings;            // everything that was computed
  std::vector<std::string> task_ids;
};

struct ReportOptions {
  std::vector<MetricKind> metrics{MetricKind::Deckard, MetricKind::Lcs,
                                  MetricKind::Tfidf, MetricKind::Doc2vec};
  bool run_combined = true;
  MetricKind combined_context = MetricKind::Tfidf;
  MetricKind combined_ingredient = MetricKind::Tfidf;
  RankOptions rank_options;
  size_t bins = 20;
  // per-project task cap for the slow tree metric; 0 ranks every task
  size_t deckard_task_limit = 0;
  uint64_t seed = 1;
  const ScoreCache* cache = nullptr;
  uint64_t index_hash = 0;
  uint64_t statement_model_hash = 0;
  uint64_t context_model_hash = 0;
  // invoked after each ranking computed fresh (not served from cache)
  std::function<void()> on_ranking_computed;
};

namespace detail {

inline CacheKey make_cache_key(const ReportOptions& options, const std::string& task_id,
                               MetricKind metric, RankingLevel level) {
  CacheKey key;
  key.index_hash = options.index_hash;
  key.statement_model_hash = options.statement_model_hash;
  key.context_model_hash = options.context_model_hash;
  key.task_id = task_id;
  key.metric = to_string(metric);
  if (metric == MetricKind::Combined) {
    key.metric = std::string("combined:") + to_string(options.combined_context) + ":" +
                 to_string(options.combined_ingredient);
  }
  key.level = to_string(level);
  key.tie_mode = to_string(options.rank_options.tie_mode);
  key.deckard_extended = false;
  return key;
}

}  // namespace detail

// Runs the full protocol: context-less and context-aware rankings for every
// (task, metric), the combined two-level ranking, aggregate statistics and
// all pairwise rank comparisons.
inline EvalReport build_report(const CorpusIndex& corpus,
                               const std::vector<RepairTask>& tasks,
                               const ModelContext& model_context,
                               const ReportOptions& options) {
  if (tasks.empty()) throw DataError("no repair tasks to evaluate");
  EvalReport report;
  report.task_count = tasks.size();
  for (const RepairTask& t : tasks) report.task_ids.push_back(t.id);

  auto obtain = [&](const RepairTask& task, MetricKind metric,
                    RankingLevel level) -> Ranking {
    CacheKey key = detail::make_cache_key(options, task.id, metric, level);
    if (options.cache != nullptr) {
      std::optional<Ranking> hit = options.cache->get(key);
      if (hit) return std::move(*hit);
    }
    Ranking ranking;
    if (level == RankingLevel::Ingredient) {
      ranking = rank_ingredients(corpus, task, metric, model_context, options.rank_options);
    } else if (level == RankingLevel::Context) {
      ranking = rank_contexts(corpus, task, metric, model_context, options.rank_options);
    } else {
      ranking = rank_combined(corpus, task, options.combined_context,
                              options.combined_ingredient, model_context,
                              options.rank_options);
    }
    if (options.cache != nullptr) options.cache->put(key, ranking);
    if (options.on_ranking_computed) options.on_ranking_computed();
    return ranking;
  };

  // metric -> level -> task id -> absolute correct rank
  std::map<std::string, std::map<std::string, size_t>> ingredient_ranks, context_ranks;

  auto record = [&](const Ranking& ranking, MetricKind metric) {
    report.rankings.push_back(ranking);
    const Ranking& r = report.rankings.back();
    if (!r.correct_rank) {
      report.excluded_tasks.push_back(
          {r.task_id, metric, r.level, "correct ingredient absent after exclusions"});
      return;
    }
    if (r.level == RankingLevel::Ingredient) {
      ingredient_ranks[to_string(metric)][r.task_id] = *r.correct_rank;
    } else if (r.level == RankingLevel::Context) {
      context_ranks[to_string(metric)][r.task_id] = *r.correct_rank;
    }
  };

  for (MetricKind metric : options.metrics) {
    std::vector<RepairTask> subset = tasks;
    if (metric == MetricKind::Deckard && options.deckard_task_limit > 0) {
      subset = sample_tasks(tasks, options.deckard_task_limit, options.seed);
    }
    std::vector<Ranking> ingredient_level, context_level;
    for (const RepairTask& task : subset) {
      Ranking ing = obtain(task, metric, RankingLevel::Ingredient);
      record(ing, metric);
      if (ing.correct_rank) ingredient_level.push_back(std::move(ing));
      Ranking ctx = obtain(task, metric, RankingLevel::Context);
      record(ctx, metric);
      if (ctx.correct_rank) context_level.push_back(std::move(ctx));
    }
    if (!ingredient_level.empty()) {
      RankStats stats = rank_stats(ingredient_level);
      stats.metric = metric;
      report.ingredient_stats.push_back(std::move(stats));
    }
    if (!context_level.empty()) {
      RankStats stats = rank_stats(context_level);
      stats.metric = metric;
      report.context_stats.push_back(std::move(stats));
    }
  }

  if (options.run_combined) {
    std::vector<Ranking> combined_level;
    for (const RepairTask& task : tasks) {
      Ranking combined = obtain(task, MetricKind::Combined, RankingLevel::Combined);
      record(combined, MetricKind::Combined);
      if (combined.correct_rank) combined_level.push_back(std::move(combined));
    }
    if (!combined_level.empty()) {
      RankStats stats = rank_stats(combined_level);
      stats.metric = MetricKind::Combined;
      stats.level = RankingLevel::Combined;
      report.ingredient_stats.push_back(std::move(stats));
    }
  }

  // pairwise comparisons on absolute correct ranks; a pair's sample is the
  // intersection of tasks ranked by both metrics
  auto compare_all = [&](const std::map<std::string, std::map<std::string, size_t>>& ranks,
                         RankingLevel level) {
    for (size_t i = 0; i < options.metrics.size(); ++i) {
      for (size_t j = i + 1; j < options.metrics.size(); ++j) {
        WilcoxonEntry entry;
        entry.metric_a = options.metrics[i];
        entry.metric_b = options.metrics[j];
        entry.level = level;
        auto it_a = ranks.find(to_string(entry.metric_a));
        auto it_b = ranks.find(to_string(entry.metric_b));
        std::vector<double> x, y;
        if (it_a != ranks.end() && it_b != ranks.end()) {
          for (const std::string& task_id : report.task_ids) {
            auto ra = it_a->second.find(task_id);
            auto rb = it_b->second.find(task_id);
            if (ra == it_a->second.end() || rb == it_b->second.end()) continue;
            x.push_back(static_cast<double>(ra->second));
            y.push_back(static_cast<double>(rb->second));
          }
        }
        if (x.size() < 6) {
          entry.note = "insufficient paired sample (" + std::to_string(x.size()) + ")";
        } else {
          try {
            entry.result = wilcoxon_signed_rank(x, y);
            entry.computed = true;
          } catch (const DataError& e) {
            entry.note = e.what();
          }
        }
        report.wilcoxon.push_back(std::move(entry));
      }
    }
  };
  compare_all(ingredient_ranks, RankingLevel::Ingredient);
  compare_all(context_ranks, RankingLevel::Context);
  return report;
}

// ---- formatting and file emission ----

inline std::string format_percent(double fraction, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f%%", decimals, fraction * 100.0);
  return buf;
}

// Table-1-style row: metric, median rank, space reduction, perfect repair.
inline std::string format_stats_row(const RankStats& stats) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s,%ld,%s,%s", to_string(stats.metric),
                stats.median_rank, format_percent(stats.space_reduction, 2).c_str(),
                format_percent(stats.perfect_repair_rate, 0).c_str());
  return buf;
}

// Table-3-style cell: "n=214, T=6293, p=6.05e-01".
inline std::string format_wilcoxon_cell(const WilcoxonResult& result) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "n=%zu, T=%g, p=%.2e", result.n, result.t_statistic,
                result.p_value);
  return buf;
}

inline nlohmann::ordered_json stats_to_json(const RankStats& stats) {
  nlohmann::ordered_json j;
  j["metric"] = to_string(stats.metric);
  j["level"] = to_string(stats.level);
  j["tasks"] = stats.task_count;
  j["median_rank"] = stats.median_rank;
  j["mean_rank"] = stats.mean_rank;
  j["mean_pool_size"] = stats.mean_pool_size;
  j["space_reduction"] = stats.space_reduction;
  j["space_reduction_mean_ratio"] = stats.space_reduction_mean_ratio;
  j["perfect_repair_rate"] = stats.perfect_repair_rate;
  return j;
}

inline std::string report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["format_version"] = kReportFormatVersion;
  j["type"] = "eval-report";
  j["tasks"] = report.task_ids;
  nlohmann::ordered_json ing = nlohmann::ordered_json::array();
  for (const RankStats& s : report.ingredient_stats) ing.push_back(stats_to_json(s));
  j["ingredient_stats"] = ing;
  nlohmann::ordered_json ctx = nlohmann::ordered_json::array();
  for (const RankStats& s : report.context_stats) ctx.push_back(stats_to_json(s));
  j["context_stats"] = ctx;
  nlohmann::ordered_json wilcoxon = nlohmann::ordered_json::array();
  for (const WilcoxonEntry& e : report.wilcoxon) {
    nlohmann::ordered_json w;
    w["metric_a"] = to_string(e.metric_a);
    w["metric_b"] = to_string(e.metric_b);
    w["level"] = to_string(e.level);
    w["computed"] = e.computed;
    if (e.computed) {
      w["n"] = e.result.n;
      w["T"] = e.result.t_statistic;
      w["p"] = e.result.p_value;
      w["reject_at_0.01"] = e.result.reject_at_0_01;
      w["exact"] = e.result.exact;
    } else {
      w["note"] = e.note;
    }
    wilcoxon.push_back(std::move(w));
  }
  j["wilcoxon"] = wilcoxon;
  nlohmann::ordered_json excluded = nlohmann::ordered_json::array();
  for (const ExcludedTask& e : report.excluded_tasks) {
    excluded.push_back({{"task", e.task_id},
                        {"metric", to_string(e.metric)},
                        {"level", to_string(e.level)},
                        {"reason", e.reason}});
  }
  j["excluded_tasks"] = excluded;
  return j.dump(2) + "\n";
}

inline std::string stats_table_csv(const std::vector<RankStats>& rows) {
  std::string out =
      "metric,tasks,median_rank,mean_rank,mean_pool_size,space_reduction,"
      "space_reduction_mean_ratio,perfect_repair\n";
  for (const RankStats& s : rows) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%zu,%ld,%s,%s,%s,%s,%s\n", to_string(s.metric),
                  s.task_count, s.median_rank, format_double(s.mean_rank, "%.6f").c_str(),
                  format_double(s.mean_pool_size, "%.6f").c_str(),
                  format_percent(s.space_reduction, 2).c_str(),
                  format_percent(s.space_reduction_mean_ratio, 2).c_str(),
                  format_percent(s.perfect_repair_rate, 0).c_str());
    out += buf;
  }
  return out;
}

inline std::string wilcoxon_table_csv(const std::vector<WilcoxonEntry>& entries,
                                      RankingLevel level) {
  std::string out = "metric_a,metric_b,n,T,p,reject_at_0.01,method,note\n";
  for (const WilcoxonEntry& e : entries) {
    if (e.level != level) continue;
    char buf[256];
    if (e.computed) {
      std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%g,%.6e,%s,%s,\n",
                    to_string(e.metric_a), to_string(e.metric_b), e.result.n,
                    e.result.t_statistic, e.result.p_value,
                    e.result.reject_at_0_01 ? "yes" : "no",
                    e.result.exact ? "exact" : "normal");
    } else {
      std::snprintf(buf, sizeof(buf), "%s,%s,,,,,,%s\n", to_string(e.metric_a),
                    to_string(e.metric_b), e.note.c_str());
    }
    out += buf;
  }
  return out;
}

inline std::string density_table_csv(const DensityTable& table) {
  std::string out = "bin_low,bin_high,count\n";
  for (size_t b = 0; b < table.bins; ++b) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%zu\n",
                  static_cast<double>(b) / static_cast<double>(table.bins),
                  static_cast<double>(b + 1) / static_cast<double>(table.bins),
                  table.counts[b]);
    out += buf;
  }
  return out;
}

inline std::string rankings_csv(const std::vector<Ranking>& rankings) {
  std::string out = "task,metric,level,rank,component,score,normalized_rank\n";
  for (const Ranking& r : rankings) {
    for (size_t i = 0; i < r.candidates.size(); ++i) {
      char buf[512];
      std::snprintf(buf, sizeof(buf), "%s,%s,%s,%zu,%s,%s,%s\n", r.task_id.c_str(),
                    to_string(r.metric), to_string(r.level), i + 1,
                    r.candidates[i].component_id.c_str(),
                    format_double(r.candidates[i].score, "%.12g").c_str(),
                    format_double(static_cast<double>(i + 1) /
                                      static_cast<double>(r.candidates.size()),
                                  "%.8f")
                        .c_str());
      out += buf;
    }
  }
  return out;
}

inline std::string correct_ranks_csv(const std::vector<Ranking>& rankings) {
  std::string out = "task,metric,level,correct_rank,pool_size,normalized_rank\n";
  for (const Ranking& r : rankings) {
    char buf[256];
    if (r.correct_rank) {
      std::snprintf(buf, sizeof(buf), "%s,%s,%s,%zu,%zu,%s\n", r.task_id.c_str(),
                    to_string(r.metric), to_string(r.level), *r.correct_rank,
                    r.pool_size(),
                    format_double(*r.normalized_rank(), "%.8f").c_str());
    } else {
      std::snprintf(buf, sizeof(buf), "%s,%s,%s,absent,%zu,\n", r.task_id.c_str(),
                    to_string(r.metric), to_string(r.level), r.pool_size());
    }
    out += buf;
  }
  return out;
}

// Writes the whole report bundle under `directory`.
inline void write_report_files(const EvalReport& report,
                               const std::filesystem::path& directory, size_t bins) {
  std::filesystem::create_directories(directory);
  write_file_atomic(directory / "report.json", report_to_json(report));
  write_file_atomic(directory / "ingredient_stats.csv",
                    stats_table_csv(report.ingredient_stats));
  write_file_atomic(directory / "context_stats.csv", stats_table_csv(report.context_stats));
  write_file_atomic(directory / "wilcoxon_ingredient.csv",
                    wilcoxon_table_csv(report.wilcoxon, RankingLevel::Ingredient));
  write_file_atomic(directory / "wilcoxon_context.csv",
                    wilcoxon_table_csv(report.wilcoxon, RankingLevel::Context));
  write_file_atomic(directory / "rankings.csv", rankings_csv(report.rankings));
  write_file_atomic(directory / "correct_ranks.csv", correct_ranks_csv(report.rankings));

  // per-metric density tables for violin plots
  std::map<std::string, std::vector<Ranking>> groups;
  for (const Ranking& r : report.rankings) {
    if (!r.correct_rank) continue;
    groups[std::string(to_string(r.metric)) + "_" + to_string(r.level)].push_back(r);
  }
  for (const auto& [name, rankings] : groups) {
    DensityTable table = distribution_export(rankings, bins);
    write_file_atomic(directory / ("density_" + name + ".csv"), density_table_csv(table));
  }
}

}  // namespace ingrank
