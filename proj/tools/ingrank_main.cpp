// ingrank command line: corpus indexing, embedding training, task extraction,
// ranking and evaluation of repair-ingredient search.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ingrank/cache.hpp"
#include "ingrank/config.hpp"
#include "ingrank/corpus.hpp"
#include "ingrank/report.hpp"
#include "ingrank/tasks.hpp"

namespace fs = std::filesystem;
using namespace ingrank;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAborted = 3;  // fault-injection hook tripped

void refuse_overwrite(const fs::path& path, bool force, const char* what) {
  if (fs::exists(path) && !force) {
    throw DataError(std::string(what) + " exists: " + path.string() +
                    " (use --force to overwrite)");
  }
}

CorpusIndex load_index_or_fail(const std::string& index_path) {
  if (!fs::exists(index_path)) {
    throw DataError("missing prerequisite: corpus index at " + index_path +
                    " (run `ingrank index` first)");
  }
  return CorpusIndex::load(index_path);
}

Doc2vecModel load_model_or_fail(const fs::path& path) {
  if (!fs::exists(path)) {
    throw DataError("missing prerequisite: embedding model at " + path.string() +
                    " (run `ingrank train` first)");
  }
  return Doc2vecModel::load(path);
}

std::vector<MetricKind> parse_metric_list(const std::string& csv) {
  std::vector<MetricKind> metrics;
  size_t start = 0;
  while (start <= csv.size()) {
    size_t comma = csv.find(',', start);
    std::string name = csv.substr(start, comma == std::string::npos ? std::string::npos
                                                                    : comma - start);
    if (!name.empty()) {
      MetricKind kind = metric_from_string(trim(name));
      if (kind == MetricKind::Combined)
        throw UsageError("combined is controlled by --combined, not --metrics");
      metrics.push_back(kind);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (metrics.empty()) throw UsageError("metric list is empty");
  return metrics;
}

struct LoadedModels {
  TfidfModel tfidf_statements;
  TfidfModel tfidf_contexts;
  Doc2vecModel embedding_statements;
  Doc2vecModel embedding_contexts;
  bool embeddings_loaded = false;
  uint64_t statement_model_hash = 0;
  uint64_t context_model_hash = 0;
};

// TFIDF is always fitted in-process from the index; embedding models are
// loaded from the train step only when a metric needs them.
LoadedModels prepare_models(const CorpusIndex& corpus, const std::string& models_dir,
                            bool need_embeddings) {
  LoadedModels models;
  std::vector<const SourceComponent*> statements, methods;
  for (size_t idx : corpus.statement_pool()) statements.push_back(&corpus.component(idx));
  for (size_t idx : corpus.context_pool()) methods.push_back(&corpus.component(idx));
  models.tfidf_statements = TfidfModel::fit(statements);
  models.tfidf_contexts = TfidfModel::fit(methods);
  if (need_embeddings) {
    if (models_dir.empty())
      throw UsageError("--models is required when doc2vec is among the metrics");
    models.embedding_statements =
        load_model_or_fail(fs::path(models_dir) / "model_statements.json");
    models.embedding_contexts =
        load_model_or_fail(fs::path(models_dir) / "model_contexts.json");
    models.statement_model_hash = models.embedding_statements.content_hash();
    models.context_model_hash = models.embedding_contexts.content_hash();
    models.embeddings_loaded = true;
  }
  return models;
}

void wire_model_context(ModelContext& context, const LoadedModels& models) {
  context.tfidf_statements = &models.tfidf_statements;
  context.tfidf_contexts = &models.tfidf_contexts;
  if (models.embeddings_loaded) {
    context.embedding_statements = &models.embedding_statements;
    context.embedding_contexts = &models.embedding_contexts;
  }
}

bool needs_embeddings(const std::vector<MetricKind>& metrics, bool run_combined,
                      MetricKind combined_context, MetricKind combined_ingredient) {
  for (MetricKind m : metrics)
    if (m == MetricKind::Doc2vec) return true;
  if (run_combined &&
      (combined_context == MetricKind::Doc2vec || combined_ingredient == MetricKind::Doc2vec))
    return true;
  return false;
}

// ---- subcommand bodies ----

int cmd_index(const std::string& corpus_root, std::vector<std::string> globs,
              const std::string& out_dir, bool force) {
  if (globs.empty()) globs.push_back("**/*.java");
  fs::path out = fs::path(out_dir) / "index.jsonl";
  refuse_overwrite(out, force, "index");
  CorpusIndex index = CorpusIndex::build(corpus_root, globs);
  fs::create_directories(out_dir);
  index.save(out);
  std::printf("indexed %zu files: %zu methods, %zu statements (%zu diagnostics)\n",
              index.files().size(), index.context_pool().size(),
              index.statement_pool().size(), index.diagnostics().size());
  std::printf("index written to %s\n", out.generic_string().c_str());
  return kExitOk;
}

int cmd_train(const std::string& index_path, const std::string& out_dir,
              const RunConfig& config, bool force) {
  fs::path statements_out = fs::path(out_dir) / "model_statements.json";
  fs::path contexts_out = fs::path(out_dir) / "model_contexts.json";
  refuse_overwrite(statements_out, force, "statement model");
  refuse_overwrite(contexts_out, force, "context model");

  CorpusIndex index = load_index_or_fail(index_path);
  std::vector<const SourceComponent*> statements, methods;
  for (size_t idx : index.statement_pool()) statements.push_back(&index.component(idx));
  for (size_t idx : index.context_pool()) methods.push_back(&index.component(idx));

  Doc2vecModel statement_model =
      Doc2vecModel::train(statements, config.statement_embedding_config());
  Doc2vecModel context_model = Doc2vecModel::train(methods, config.context_embedding_config());
  fs::create_directories(out_dir);
  statement_model.save(statements_out);
  context_model.save(contexts_out);
  std::printf("statement model: dimension=%d vocabulary=%zu\n",
              statement_model.config().dimension, statement_model.vocabulary_size());
  std::printf("context model: dimension=%d vocabulary=%zu\n",
              context_model.config().dimension, context_model.vocabulary_size());
  return kExitOk;
}

int cmd_tasks(const std::string& index_path, const std::string& diffs_dir,
              const std::string& out_dir, const std::string& project, size_t limit,
              uint64_t seed, bool force) {
  fs::path tasks_out = fs::path(out_dir) / "tasks.jsonl";
  fs::path rejections_out = fs::path(out_dir) / "rejections.jsonl";
  refuse_overwrite(tasks_out, force, "task file");

  CorpusIndex index = load_index_or_fail(index_path);
  if (!fs::is_directory(diffs_dir))
    throw DataError("diff directory not found: " + diffs_dir);

  std::vector<std::string> diff_files;
  for (const auto& entry : fs::recursive_directory_iterator(diffs_dir)) {
    if (entry.is_regular_file()) diff_files.push_back(entry.path().generic_string());
  }
  std::sort(diff_files.begin(), diff_files.end());

  std::vector<RepairTask> all_tasks;
  std::vector<TaskRejection> all_rejections;
  for (const std::string& file : diff_files) {
    std::vector<DiffHunk> hunks = parse_unified_diff(read_file(file));
    std::string label = fs::path(file).stem().generic_string();
    ExtractionResult result = extract_tasks(hunks, index, project, label);
    // keep ids unique across diff files
    for (size_t t = 0; t < result.tasks.size(); ++t) {
      RepairTask& task = result.tasks[t];
      task.id = project + ":" + label + "#" + std::to_string(t);
      task.correct_ingredient.id = "task:" + task.id + ":ingredient";
      all_tasks.push_back(std::move(task));
    }
    for (TaskRejection& r : result.rejections) all_rejections.push_back(std::move(r));
  }
  std::vector<RepairTask> sampled = sample_tasks(all_tasks, limit, seed);

  fs::create_directories(out_dir);
  write_file_atomic(tasks_out, serialize_tasks(sampled));
  write_file_atomic(rejections_out, serialize_rejections(all_rejections));
  std::printf("extracted %zu tasks (%zu before sampling, %zu rejections)\n",
              sampled.size(), all_tasks.size(), all_rejections.size());
  return kExitOk;
}

int cmd_rank(const std::string& index_path, const std::string& tasks_path,
             const std::string& models_dir, const std::string& metrics_csv,
             const std::string& out_dir, const RunConfig& config) {
  CorpusIndex index = load_index_or_fail(index_path);
  if (!fs::exists(tasks_path))
    throw DataError("missing prerequisite: task file at " + tasks_path);
  std::vector<std::string> failures;
  std::vector<RepairTask> tasks = load_tasks(read_file(tasks_path), index, &failures);
  for (const std::string& f : failures)
    std::fprintf(stderr, "warning: task no longer resolves: %s\n", f.c_str());
  if (tasks.empty()) throw DataError("no tasks resolve against this corpus");

  std::vector<MetricKind> metrics = parse_metric_list(metrics_csv);
  LoadedModels models = prepare_models(
      index, models_dir, needs_embeddings(metrics, false, config.combined_context,
                                          config.combined_ingredient));
  ModelContext context;
  wire_model_context(context, models);

  RankOptions options;
  options.tie_mode = config.tie_mode;
  options.jobs = config.jobs;

  std::vector<Ranking> rankings;
  for (const RepairTask& task : tasks) {
    for (MetricKind metric : metrics) {
      rankings.push_back(rank_ingredients(index, task, metric, context, options));
      rankings.push_back(rank_contexts(index, task, metric, context, options));
    }
  }
  fs::create_directories(out_dir);
  write_file_atomic(fs::path(out_dir) / "rankings.csv", rankings_csv(rankings));
  write_file_atomic(fs::path(out_dir) / "correct_ranks.csv", correct_ranks_csv(rankings));
  std::printf("ranked %zu tasks x %zu metrics at both levels\n", tasks.size(),
              metrics.size());
  return kExitOk;
}

int cmd_evaluate(const RunConfig& config, const std::string& index_path,
                 const std::string& models_dir, const std::string& tasks_path,
                 const std::string& out_dir, const std::string& cache_dir_flag) {
  CorpusIndex index = load_index_or_fail(index_path);
  if (!fs::exists(tasks_path))
    throw DataError("missing prerequisite: task file at " + tasks_path);
  std::vector<std::string> failures;
  std::vector<RepairTask> tasks = load_tasks(read_file(tasks_path), index, &failures);
  for (const std::string& f : failures)
    std::fprintf(stderr, "warning: task no longer resolves: %s\n", f.c_str());
  if (tasks.empty()) throw DataError("no tasks resolve against this corpus");

  LoadedModels models = prepare_models(
      index, models_dir,
      needs_embeddings(config.metrics, config.run_combined, config.combined_context,
                       config.combined_ingredient));
  ModelContext context;
  wire_model_context(context, models);

  ReportOptions options;
  options.metrics = config.metrics;
  options.run_combined = config.run_combined;
  options.combined_context = config.combined_context;
  options.combined_ingredient = config.combined_ingredient;
  options.rank_options.tie_mode = config.tie_mode;
  options.rank_options.jobs = config.jobs;
  options.bins = config.bins;
  options.deckard_task_limit = config.deckard_task_limit;
  options.seed = config.seed;
  options.index_hash = index.content_hash();
  options.statement_model_hash = models.statement_model_hash;
  options.context_model_hash = models.context_model_hash;

  // precedence: --cache flag, then INGRANK_CACHE_DIR, else no cache
  std::string cache_dir = cache_dir_flag;
  if (cache_dir.empty()) {
    const char* env = std::getenv("INGRANK_CACHE_DIR");
    if (env != nullptr) cache_dir = env;
  }
  std::optional<ScoreCache> cache;
  if (!cache_dir.empty()) {
    cache.emplace(cache_dir);
    options.cache = &*cache;
  }

  // fault-injection hook for resume testing: abort after N fresh rankings
  long abort_after = 0;
  if (const char* env = std::getenv("INGRANK_ABORT_AFTER_RANKINGS")) {
    abort_after = std::atol(env);
  }
  size_t computed = 0;
  options.on_ranking_computed = [&]() {
    ++computed;
    if (abort_after > 0 && computed >= static_cast<size_t>(abort_after)) {
      std::fprintf(stderr, "aborting after %zu rankings (fault injection)\n", computed);
      std::exit(kExitAborted);
    }
  };

  EvalReport report = build_report(index, tasks, context, options);
  write_report_files(report, out_dir, config.bins);

  nlohmann::ordered_json manifest;
  manifest["format_version"] = kReportFormatVersion;
  manifest["type"] = "run-manifest";
  manifest["config"] = config.to_json();
  manifest["index"] = index_path;
  manifest["index_hash"] = to_hex(options.index_hash);
  manifest["statement_model_hash"] = to_hex(options.statement_model_hash);
  manifest["context_model_hash"] = to_hex(options.context_model_hash);
  manifest["tasks_file"] = tasks_path;
  manifest["task_count"] = report.task_count;
  manifest["cache_dir"] = cache_dir;
  manifest["versions"] = {{"index", kIndexFormatVersion},
                          {"embedding", kEmbeddingFormatVersion},
                          {"tasks", kTaskFormatVersion},
                          {"ranking", kRankingFormatVersion},
                          {"report", kReportFormatVersion}};
  write_file_atomic(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");

  for (const RankStats& s : report.ingredient_stats) {
    std::printf("ingredient %s: median=%ld reduction=%s perfect=%s (n=%zu)\n",
                to_string(s.metric), s.median_rank,
                format_percent(s.space_reduction, 2).c_str(),
                format_percent(s.perfect_repair_rate, 0).c_str(), s.task_count);
  }
  for (const RankStats& s : report.context_stats) {
    std::printf("context %s: median=%ld reduction=%s perfect=%s (n=%zu)\n",
                to_string(s.metric), s.median_rank,
                format_percent(s.space_reduction, 2).c_str(),
                format_percent(s.perfect_repair_rate, 0).c_str(), s.task_count);
  }
  std::printf("report written to %s (%zu rankings, %zu computed fresh)\n",
              out_dir.c_str(), report.rankings.size(), computed);
  return kExitOk;
}

int cmd_stats(const std::string& ranks_path, const std::string& out_dir) {
  if (!fs::exists(ranks_path))
    throw DataError("missing prerequisite: correct_ranks.csv at " + ranks_path);
  std::vector<std::string> lines = split_lines(read_file(ranks_path));
  if (lines.size() < 2) throw DataError("no rank rows in " + ranks_path);

  struct Row {
    std::string task, metric, level;
    size_t rank, pool;
  };
  std::vector<Row> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> cols;
    size_t start = 0;
    for (size_t p = 0; p <= lines[i].size(); ++p) {
      if (p == lines[i].size() || lines[i][p] == ',') {
        cols.push_back(lines[i].substr(start, p - start));
        start = p + 1;
      }
    }
    if (cols.size() < 5) throw DataError("malformed rank row: " + lines[i]);
    if (cols[3] == "absent") continue;
    rows.push_back({cols[0], cols[1], cols[2], static_cast<size_t>(std::stoull(cols[3])),
                    static_cast<size_t>(std::stoull(cols[4]))});
  }
  if (rows.empty()) throw DataError("no resolvable rank rows in " + ranks_path);

  std::map<std::pair<std::string, std::string>, std::vector<RankObservation>> groups;
  std::map<std::pair<std::string, std::string>, std::map<std::string, size_t>> by_task;
  for (const Row& r : rows) {
    groups[{r.metric, r.level}].push_back({r.rank, r.pool});
    by_task[{r.metric, r.level}][r.task] = r.rank;
  }
  std::vector<RankStats> ingredient_rows, context_rows;
  for (const auto& [key, observations] : groups) {
    RankStats stats = rank_stats_from_observations(
        observations, metric_from_string(key.first), ranking_level_from_string(key.second));
    if (key.second == "context") context_rows.push_back(std::move(stats));
    else ingredient_rows.push_back(std::move(stats));
  }

  fs::create_directories(out_dir);
  write_file_atomic(fs::path(out_dir) / "ingredient_stats.csv",
                    stats_table_csv(ingredient_rows));
  write_file_atomic(fs::path(out_dir) / "context_stats.csv", stats_table_csv(context_rows));

  // pairwise tests per level over the task intersection
  for (const char* level : {"ingredient", "context"}) {
    std::vector<std::string> metrics;
    for (const auto& [key, ranks] : by_task) {
      if (key.second == level) metrics.push_back(key.first);
    }
    std::vector<WilcoxonEntry> entries;
    for (size_t i = 0; i < metrics.size(); ++i) {
      for (size_t j = i + 1; j < metrics.size(); ++j) {
        WilcoxonEntry entry;
        entry.metric_a = metric_from_string(metrics[i]);
        entry.metric_b = metric_from_string(metrics[j]);
        entry.level = ranking_level_from_string(level);
        const auto& ranks_a = by_task[{metrics[i], level}];
        const auto& ranks_b = by_task[{metrics[j], level}];
        std::vector<double> x, y;
        for (const auto& [task, rank] : ranks_a) {
          auto it = ranks_b.find(task);
          if (it == ranks_b.end()) continue;
          x.push_back(static_cast<double>(rank));
          y.push_back(static_cast<double>(it->second));
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
        entries.push_back(std::move(entry));
      }
    }
    write_file_atomic(fs::path(out_dir) / (std::string("wilcoxon_") + level + ".csv"),
                      wilcoxon_table_csv(entries, ranking_level_from_string(level)));
  }
  std::printf("stats written to %s (%zu rank rows)\n", out_dir.c_str(), rows.size());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ingrank: rank repair ingredients and donor contexts by code similarity"};
  app.require_subcommand(1);

  RunConfig config;
  std::string config_path;

  // index
  auto* index_cmd = app.add_subcommand("index", "build and persist a corpus index");
  std::string corpus_root, out_dir;
  std::vector<std::string> globs;
  bool force = false;
  index_cmd->add_option("--corpus", corpus_root, "source tree root")->required();
  index_cmd->add_option("--glob", globs, "file globs (default **/*.java)");
  index_cmd->add_option("--out", out_dir, "output directory")->required();
  index_cmd->add_flag("--force", force, "overwrite existing outputs");

  // train
  auto* train_cmd = app.add_subcommand("train", "train statement and context embeddings");
  std::string index_path, models_dir;
  train_cmd->add_option("--index", index_path, "corpus index file")->required();
  train_cmd->add_option("--out", out_dir, "output directory")->required();
  train_cmd->add_option("--seed", config.seed, "training seed");
  train_cmd->add_option("--dim-statement", config.statement_dimension,
                        "statement vector dimension");
  train_cmd->add_option("--dim-context", config.context_dimension,
                        "context vector dimension");
  train_cmd->add_option("--window", config.window, "skip-gram window");
  train_cmd->add_option("--epochs", config.epochs, "training epochs");
  train_cmd->add_option("--negatives", config.negatives, "negative samples");
  train_cmd->add_option("--min-count", config.min_count, "vocabulary count floor");
  train_cmd->add_option("--infer-epochs", config.infer_epochs, "inference epochs");
  train_cmd->add_flag("--force", force, "overwrite existing outputs");

  // tasks
  auto* tasks_cmd = app.add_subcommand("tasks", "extract repair tasks from diffs");
  std::string diffs_dir, project = "default";
  tasks_cmd->add_option("--index", index_path, "corpus index file")->required();
  tasks_cmd->add_option("--diffs", diffs_dir, "directory of unified diffs")->required();
  tasks_cmd->add_option("--out", out_dir, "output directory")->required();
  tasks_cmd->add_option("--project", project, "project label for sampling");
  tasks_cmd->add_option("--limit", config.sample_limit, "per-project task cap");
  tasks_cmd->add_option("--seed", config.seed, "sampling seed");
  tasks_cmd->add_flag("--force", force, "overwrite existing outputs");

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "rank one task file under chosen metrics");
  std::string tasks_path, metrics_csv = "tfidf";
  rank_cmd->add_option("--index", index_path, "corpus index file")->required();
  rank_cmd->add_option("--tasks", tasks_path, "task file")->required();
  rank_cmd->add_option("--models", models_dir, "directory with trained embeddings");
  rank_cmd->add_option("--metrics", metrics_csv, "comma-separated metric list");
  rank_cmd->add_option("--out", out_dir, "output directory")->required();
  rank_cmd->add_option("--jobs", config.jobs, "parallel scoring workers");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "run the full evaluation protocol");
  std::string cache_dir, metrics_flag, combined_flag;
  eval_cmd->add_option("--config", config_path, "JSON config file");
  eval_cmd->add_option("--index", index_path, "corpus index file");
  eval_cmd->add_option("--models", models_dir, "directory with trained embeddings");
  eval_cmd->add_option("--tasks", tasks_path, "task file");
  eval_cmd->add_option("--out", out_dir, "run output directory");
  eval_cmd->add_option("--cache", cache_dir, "score cache directory");
  eval_cmd->add_option("--metrics", metrics_flag, "comma-separated metric list");
  eval_cmd->add_option("--combined", combined_flag,
                       "context:ingredient metric pair (empty string disables)");
  auto* jobs_opt = eval_cmd->add_option("--jobs", config.jobs, "parallel scoring workers");
  auto* seed_opt = eval_cmd->add_option("--seed", config.seed, "run seed");
  auto* bins_opt = eval_cmd->add_option("--bins", config.bins, "density histogram bins");
  auto* deckard_opt = eval_cmd->add_option("--deckard-limit", config.deckard_task_limit,
                                           "per-project task cap for deckard (0 = all)");
  std::string tie_flag;
  eval_cmd->add_option("--tie", tie_flag, "tie mode: corpus-order | pessimistic");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "recompute statistics from rank exports");
  std::string ranks_path;
  stats_cmd->add_option("--ranks", ranks_path, "correct_ranks.csv from a previous run")
      ->required();
  stats_cmd->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (index_cmd->parsed()) return cmd_index(corpus_root, globs, out_dir, force);
    if (train_cmd->parsed()) return cmd_train(index_path, out_dir, config, force);
    if (tasks_cmd->parsed())
      return cmd_tasks(index_path, diffs_dir, out_dir, project, config.sample_limit,
                       config.seed, force);
    if (rank_cmd->parsed())
      return cmd_rank(index_path, tasks_path, models_dir, metrics_csv, out_dir, config);
    if (eval_cmd->parsed()) {
      if (!config_path.empty()) {
        RunConfig loaded = RunConfig::load(config_path);
        // flags given on the command line win over the config file
        if (jobs_opt->count() > 0) loaded.jobs = config.jobs;
        if (seed_opt->count() > 0) loaded.seed = config.seed;
        if (bins_opt->count() > 0) loaded.bins = config.bins;
        if (deckard_opt->count() > 0) loaded.deckard_task_limit = config.deckard_task_limit;
        config = loaded;
      }
      if (!metrics_flag.empty()) config.metrics = parse_metric_list(metrics_flag);
      if (eval_cmd->count("--combined") > 0) {
        if (combined_flag.empty()) {
          config.run_combined = false;
        } else {
          size_t colon = combined_flag.find(':');
          if (colon == std::string::npos)
            throw UsageError("--combined expects context:ingredient");
          config.run_combined = true;
          config.combined_context = metric_from_string(combined_flag.substr(0, colon));
          config.combined_ingredient = metric_from_string(combined_flag.substr(colon + 1));
        }
      }
      if (!tie_flag.empty()) {
        if (tie_flag == "corpus-order") config.tie_mode = TieMode::CorpusOrder;
        else if (tie_flag == "pessimistic") config.tie_mode = TieMode::Pessimistic;
        else throw UsageError("unknown tie mode: " + tie_flag);
      }
      if (index_path.empty() || tasks_path.empty() || out_dir.empty())
        throw UsageError("evaluate requires --index, --tasks and --out");
      return cmd_evaluate(config, index_path, models_dir, tasks_path, out_dir, cache_dir);
    }
    if (stats_cmd->parsed()) return cmd_stats(ranks_path, out_dir);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
