#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "ingrank/report.hpp"

using namespace ingrank;

namespace {

// Generates `count` repair tasks: each task i has a recipient method with a
// distinctive statement and a donor file holding a near-copy ingredient.
struct ReportFixture {
  CorpusIndex corpus;
  std::vector<RepairTask> tasks;
  TfidfModel tfidf_statements, tfidf_contexts;
  Doc2vecModel embedding_statements, embedding_contexts;
  ModelContext context;

  static std::vector<std::pair<std::string, std::string>> make_files(int count) {
    std::vector<std::pair<std::string, std::string>> files;
    for (int i = 0; i < count; ++i) {
      std::string n = std::to_string(i);
      files.push_back({"R" + n + ".java",
                       "class R" + n + " {\n"
                       "  void run" + n + "(int factor" + n + ") {\n"
                       "    int acc = seedValue;\n"
                       "    acc = acc + alpha" + n + " * factor" + n + ";\n"
                       "    emit(acc);\n"
                       "  }\n"
                       "}\n"});
      files.push_back({"D" + n + ".java",
                       "class D" + n + " {\n"
                       "  void copy" + n + "(int factor" + n + ") {\n"
                       "    int acc = seedValue;\n"
                       "    acc = acc + beta" + n + " * factor" + n + ";\n"
                       "    emit(acc);\n"
                       "  }\n"
                       "}\n"});
    }
    return files;
  }

  explicit ReportFixture(int count) : corpus(CorpusIndex::build_from_memory(make_files(count))) {
    std::vector<DiffHunk> hunks;
    for (int i = 0; i < count; ++i) {
      std::string n = std::to_string(i);
      DiffHunk hunk;
      hunk.file_path = "R" + n + ".java";
      hunk.removed.push_back({4, "    acc = acc + alpha" + n + " * factor" + n + ";"});
      hunk.added.push_back({4, "    acc = acc + beta" + n + " * factor" + n + ";"});
      hunks.push_back(std::move(hunk));
    }
    ExtractionResult extracted = extract_tasks(hunks, corpus, "gen");
    REQUIRE(extracted.rejections.empty());
    tasks = std::move(extracted.tasks);

    std::vector<const SourceComponent*> statements, methods;
    for (size_t idx : corpus.statement_pool()) statements.push_back(&corpus.component(idx));
    for (size_t idx : corpus.context_pool()) methods.push_back(&corpus.component(idx));
    tfidf_statements = TfidfModel::fit(statements);
    tfidf_contexts = TfidfModel::fit(methods);
    Doc2vecConfig cfg;
    cfg.dimension = 16;
    cfg.epochs = 3;
    cfg.infer_epochs = 10;
    cfg.seed = 5;
    embedding_statements = Doc2vecModel::train(statements, cfg);
    embedding_contexts = Doc2vecModel::train(methods, cfg);
    context.tfidf_statements = &tfidf_statements;
    context.tfidf_contexts = &tfidf_contexts;
    context.embedding_statements = &embedding_statements;
    context.embedding_contexts = &embedding_contexts;
  }
};

}  // namespace

TEST_CASE("two tasks and two metrics give two stats rows and one pair", "[report]") {
  ReportFixture f(2);
  ReportOptions options;
  options.metrics = {MetricKind::Tfidf, MetricKind::Lcs};
  options.run_combined = false;
  EvalReport report = build_report(f.corpus, f.tasks, f.context, options);
  CHECK(report.ingredient_stats.size() == 2);
  CHECK(report.context_stats.size() == 2);
  size_t ingredient_pairs = 0;
  for (const WilcoxonEntry& e : report.wilcoxon) {
    if (e.level == RankingLevel::Ingredient) ++ingredient_pairs;
  }
  CHECK(ingredient_pairs == 1);
}

TEST_CASE("all four metrics plus combined mirror the full row set", "[report]") {
  ReportFixture f(3);
  ReportOptions options;  // defaults: deckard, lcs, tfidf, doc2vec + combined
  EvalReport report = build_report(f.corpus, f.tasks, f.context, options);
  CHECK(report.ingredient_stats.size() == 5);  // four metrics + combined
  CHECK(report.context_stats.size() == 4);
  bool combined_row = false;
  for (const RankStats& s : report.ingredient_stats) {
    if (s.metric == MetricKind::Combined) combined_row = true;
  }
  CHECK(combined_row);
}

TEST_CASE("deckard task limit restricts its sample", "[report]") {
  ReportFixture f(3);
  ReportOptions options;
  options.metrics = {MetricKind::Deckard, MetricKind::Tfidf};
  options.run_combined = false;
  options.deckard_task_limit = 1;
  EvalReport report = build_report(f.corpus, f.tasks, f.context, options);
  for (const RankStats& s : report.ingredient_stats) {
    if (s.metric == MetricKind::Deckard) CHECK(s.task_count == 1);
    if (s.metric == MetricKind::Tfidf) CHECK(s.task_count == 3);
  }
}

TEST_CASE("tasks with absent correct ranks are excluded and reported", "[report]") {
  ReportFixture f(2);
  f.tasks[1].correct_ingredient.raw_text = "nowhereToBeFound();";
  f.tasks[1].correct_ingredient.tokens = lex(f.tasks[1].correct_ingredient.raw_text);
  f.tasks[1].correct_ingredient.finalize();
  ReportOptions options;
  options.metrics = {MetricKind::Tfidf};
  options.run_combined = false;
  EvalReport report = build_report(f.corpus, f.tasks, f.context, options);
  REQUIRE(report.ingredient_stats.size() == 1);
  CHECK(report.ingredient_stats[0].task_count == 1);
  CHECK_FALSE(report.excluded_tasks.empty());
}

TEST_CASE("report json is byte-identical across runs", "[report]") {
  ReportFixture f(2);
  ReportOptions options;
  options.metrics = {MetricKind::Tfidf, MetricKind::Lcs, MetricKind::Doc2vec};
  EvalReport first = build_report(f.corpus, f.tasks, f.context, options);
  EvalReport second = build_report(f.corpus, f.tasks, f.context, options);
  CHECK(report_to_json(first) == report_to_json(second));
}

TEST_CASE("cache serves the second run without recomputation", "[report][cache]") {
  ReportFixture f(2);
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "ingrank_cache_test";
  std::filesystem::remove_all(dir);
  ScoreCache cache(dir);

  ReportOptions options;
  options.metrics = {MetricKind::Tfidf, MetricKind::Lcs};
  options.cache = &cache;
  options.index_hash = f.corpus.content_hash();
  size_t computed = 0;
  options.on_ranking_computed = [&]() { ++computed; };

  EvalReport first = build_report(f.corpus, f.tasks, f.context, options);
  size_t cold = computed;
  CHECK(cold > 0);
  EvalReport second = build_report(f.corpus, f.tasks, f.context, options);
  CHECK(computed == cold);  // warm run: everything served from cache
  CHECK(report_to_json(first) == report_to_json(second));
}

TEST_CASE("cache keys separate metrics, levels and corpora", "[report][cache]") {
  CacheKey a{1, 2, 3, "t", "tfidf", "ingredient", "corpus-order", false};
  CacheKey b = a;
  b.metric = "lcs";
  CacheKey c = a;
  c.level = "context";
  CacheKey d = a;
  d.index_hash = 99;
  CHECK(a.digest() != b.digest());
  CHECK(a.digest() != c.digest());
  CHECK(a.digest() != d.digest());
}

TEST_CASE("ranking json round trip", "[report][cache]") {
  Ranking r;
  r.task_id = "t1";
  r.metric = MetricKind::Lcs;
  r.level = RankingLevel::Context;
  r.candidates = {{"m1", 0.75}, {"m2", 0.5}};
  r.excluded = {{"m3", exclude::kEquivalentToRecipientContext}};
  r.correct_rank = 2;
  Ranking back = ranking_from_json(ranking_to_json(r));
  CHECK(back.task_id == r.task_id);
  CHECK(back.metric == r.metric);
  CHECK(back.level == r.level);
  CHECK(back.correct_rank == r.correct_rank);
  REQUIRE(back.candidates.size() == 2);
  CHECK(back.candidates[0].score == 0.75);
  CHECK(back.excluded.size() == 1);

  r.correct_rank.reset();
  Ranking absent = ranking_from_json(ranking_to_json(r));
  CHECK_FALSE(absent.correct_rank.has_value());
}

TEST_CASE("stats row formatting", "[report][format]") {
  RankStats stats;
  stats.metric = MetricKind::Tfidf;
  stats.median_rank = 4;
  stats.space_reduction = 0.9934;
  stats.perfect_repair_rate = 0.33;
  CHECK(format_stats_row(stats) == "tfidf,4,99.34%,33%");
}

TEST_CASE("wilcoxon cell formatting", "[report][format]") {
  WilcoxonResult result;
  result.n = 214;
  result.t_statistic = 6293;
  result.p_value = 0.605;
  CHECK(format_wilcoxon_cell(result) == "n=214, T=6293, p=6.05e-01");
}

TEST_CASE("report files are written as a bundle", "[report]") {
  ReportFixture f(2);
  ReportOptions options;
  options.metrics = {MetricKind::Tfidf};
  options.run_combined = true;
  EvalReport report = build_report(f.corpus, f.tasks, f.context, options);
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "ingrank_report_test";
  std::filesystem::remove_all(dir);
  write_report_files(report, dir, 10);
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK(std::filesystem::exists(dir / "ingredient_stats.csv"));
  CHECK(std::filesystem::exists(dir / "context_stats.csv"));
  CHECK(std::filesystem::exists(dir / "wilcoxon_ingredient.csv"));
  CHECK(std::filesystem::exists(dir / "rankings.csv"));
  CHECK(std::filesystem::exists(dir / "correct_ranks.csv"));
  CHECK(std::filesystem::exists(dir / "density_tfidf_ingredient.csv"));
}
