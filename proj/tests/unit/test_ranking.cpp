#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ingrank/ranking.hpp"

using namespace ingrank;

namespace {

struct RankFixture {
  CorpusIndex corpus;
  std::vector<RepairTask> tasks;
  TfidfModel tfidf_statements;
  TfidfModel tfidf_contexts;
  ModelContext context;

  RankFixture(std::vector<std::pair<std::string, std::string>> files,
              std::vector<DiffHunk> hunks)
      : corpus(CorpusIndex::build_from_memory(files)) {
    ExtractionResult extracted = extract_tasks(hunks, corpus, "fixture");
    REQUIRE(extracted.rejections.empty());
    tasks = std::move(extracted.tasks);
    std::vector<const SourceComponent*> statements, methods;
    for (size_t idx : corpus.statement_pool()) statements.push_back(&corpus.component(idx));
    for (size_t idx : corpus.context_pool()) methods.push_back(&corpus.component(idx));
    tfidf_statements = TfidfModel::fit(statements);
    tfidf_contexts = TfidfModel::fit(methods);
    context.tfidf_statements = &tfidf_statements;
    context.tfidf_contexts = &tfidf_contexts;
  }
};

DiffHunk replacement(const std::string& file, long line, const std::string& removed,
                     const std::string& added) {
  DiffHunk hunk;
  hunk.file_path = file;
  hunk.removed.push_back({line, removed});
  hunk.added.push_back({line, added});
  return hunk;
}

// Near-duplicate planted fixture. The modification point also exists as three
// verbatim copies that the exclusion rule must remove.
RankFixture planted_fixture() {
  std::string main_java =
      "class Main {\n"                                     // 1
      "  double processOrder(int quantity) {\n"            // 2
      "    double total = startValue;\n"                   // 3
      "    total = total + itemPrice * quantity;\n"        // 4  <- modification point
      "    applyDiscountCurve(total);\n"                   // 5
      "    return total;\n"                                // 6
      "  }\n"
      "  void helper() {\n"
      "    counter = counter + 1;\n"
      "    flag = false;\n"
      "  }\n"
      "}\n";
  std::string calc_java =
      "class Calc {\n"
      "  double replayOrder(int quantity) {\n"
      "    double total = startValue;\n"
      "    total = total + basePrice * quantity;\n"  // <- correct ingredient
      "    applyDiscountCurve(total);\n"
      "    return total;\n"
      "  }\n"
      "  void misc() {\n"
      "    log(\"noise\");\n"
      "    limit = offset + stride;\n"
      "  }\n"
      "}\n";
  std::string dup_java =
      "class Dup {\n"
      "  void a() {\n"
      "    total = total + itemPrice * quantity;\n"
      "  }\n"
      "  void b() {\n"
      "    total = total + itemPrice * quantity;\n"
      "  }\n"
      "  void c() {\n"
      "    total = total + itemPrice * quantity;\n"
      "  }\n"
      "}\n";
  return RankFixture(
      {{"Main.java", main_java}, {"Calc.java", calc_java}, {"Dup.java", dup_java}},
      {replacement("Main.java", 4, "    total = total + itemPrice * quantity;",
                   "    total = total + basePrice * quantity;")});
}

}  // namespace

TEST_CASE("planted near-copy is ranked first under tfidf", "[ranking]") {
  RankFixture f = planted_fixture();
  Ranking r = rank_ingredients(f.corpus, f.tasks[0], MetricKind::Tfidf, f.context);
  REQUIRE(r.correct_rank.has_value());
  CHECK(*r.correct_rank == 1);
}

TEST_CASE("every copy of the modification point is excluded", "[ranking]") {
  RankFixture f = planted_fixture();
  Ranking r = rank_ingredients(f.corpus, f.tasks[0], MetricKind::Tfidf, f.context);
  // original + 3 verbatim copies
  size_t equivalent_exclusions = 0;
  for (const Exclusion& e : r.excluded) {
    if (e.reason == exclude::kEquivalentToModificationPoint) ++equivalent_exclusions;
  }
  CHECK(equivalent_exclusions == 4);
  const SourceComponent& mod_point =
      f.corpus.component(f.corpus.index_of(f.tasks[0].modification_point_id));
  for (const RankedCandidate& c : r.candidates) {
    const SourceComponent& candidate = f.corpus.component(f.corpus.index_of(c.component_id));
    CHECK_FALSE(syntactically_equivalent(candidate, mod_point));
  }
}

TEST_CASE("candidates plus exclusions form a permutation of the pool", "[ranking]") {
  RankFixture f = planted_fixture();
  for (MetricKind kind : {MetricKind::Tfidf, MetricKind::Lcs}) {
    Ranking r = rank_ingredients(f.corpus, f.tasks[0], kind, f.context);
    std::set<std::string> seen;
    for (const RankedCandidate& c : r.candidates) CHECK(seen.insert(c.component_id).second);
    for (const Exclusion& e : r.excluded) CHECK(seen.insert(e.component_id).second);
    CHECK(seen.size() == f.corpus.statement_pool().size());
  }
}

TEST_CASE("scores are monotonically non-increasing", "[ranking]") {
  RankFixture f = planted_fixture();
  for (MetricKind kind : {MetricKind::Tfidf, MetricKind::Lcs}) {
    Ranking r = rank_ingredients(f.corpus, f.tasks[0], kind, f.context);
    for (size_t i = 0; i + 1 < r.candidates.size(); ++i) {
      CHECK(r.candidates[i].score >= r.candidates[i + 1].score);
    }
  }
}

TEST_CASE("re-running a ranking is byte-identical", "[ranking]") {
  RankFixture f = planted_fixture();
  Ranking first = rank_ingredients(f.corpus, f.tasks[0], MetricKind::Tfidf, f.context);
  Ranking second = rank_ingredients(f.corpus, f.tasks[0], MetricKind::Tfidf, f.context);
  REQUIRE(first.candidates.size() == second.candidates.size());
  for (size_t i = 0; i < first.candidates.size(); ++i) {
    CHECK(first.candidates[i].component_id == second.candidates[i].component_id);
    CHECK(first.candidates[i].score == second.candidates[i].score);
  }
}

TEST_CASE("parallel scoring merges deterministically", "[ranking]") {
  RankFixture f = planted_fixture();
  RankOptions serial;
  RankOptions parallel;
  parallel.jobs = 4;
  Ranking a = rank_ingredients(f.corpus, f.tasks[0], MetricKind::Tfidf, f.context, serial);
  Ranking b = rank_ingredients(f.corpus, f.tasks[0], MetricKind::Tfidf, f.context, parallel);
  REQUIRE(a.candidates.size() == b.candidates.size());
  for (size_t i = 0; i < a.candidates.size(); ++i) {
    CHECK(a.candidates[i].component_id == b.candidates[i].component_id);
    CHECK(a.candidates[i].score == b.candidates[i].score);
  }
}

TEST_CASE("positive scaling leaves the candidate order unchanged", "[ranking]") {
  RankFixture f = planted_fixture();
  Ranking r = rank_ingredients(f.corpus, f.tasks[0], MetricKind::Tfidf, f.context);
  std::vector<double> scores;
  for (const RankedCandidate& c : r.candidates) scores.push_back(c.score);
  std::vector<double> scaled = scores;
  for (double& s : scaled) s *= 17.5;
  CHECK(detail::sorted_order(scores) == detail::sorted_order(scaled));
}

TEST_CASE("adversarial lcs task lands in the bottom half", "[ranking]") {
  std::string host =
      "class Host {\n"
      "  void recipient() {\n"
      "    return alphaBravoCharlie(alphaBravoCharlie);\n"  // line 3: mod point
      "  }\n"
      "  void nearOne() {\n"
      "    return alphaBravoCharlie(alphaBravoDelta);\n"
      "  }\n"
      "  void nearTwo() {\n"
      "    return alphaBravoCharlie(alphaBravoEcho);\n"
      "  }\n"
      "  void nearThree() {\n"
      "    return alphaBravoDelta(alphaBravoCharlie);\n"
      "  }\n"
      "  void distant() {\n"
      "    zz = qq(ww);\n"  // correct ingredient: shares almost no characters
      "  }\n"
      "}\n";
  RankFixture f({{"Host.java", host}},
                {replacement("Host.java", 3,
                             "    return alphaBravoCharlie(alphaBravoCharlie);",
                             "    zz = qq(ww);")});
  Ranking r = rank_ingredients(f.corpus, f.tasks[0], MetricKind::Lcs, f.context);
  REQUIRE(r.correct_rank.has_value());
  CHECK(*r.correct_rank > r.pool_size() / 2);
}

TEST_CASE("context ranking puts the near-duplicate donor first", "[ranking]") {
  RankFixture f = planted_fixture();
  Ranking r = rank_contexts(f.corpus, f.tasks[0], MetricKind::Tfidf, f.context);
  REQUIRE(r.correct_rank.has_value());
  CHECK(*r.correct_rank == 1);
  // top donor is Calc.replayOrder, the near-duplicate that holds the ingredient
  const SourceComponent& top =
      f.corpus.component(f.corpus.index_of(r.candidates[0].component_id));
  CHECK(top.raw_text.find("replayOrder") != std::string::npos);
}

TEST_CASE("verbatim duplicate of the recipient context is excluded", "[ranking]") {
  std::string main_java =
      "class Main {\n"
      "  double processOrder(int quantity) {\n"
      "    total = total + itemPrice * quantity;\n"  // line 3
      "    return total;\n"
      "  }\n"
      "}\n";
  std::string twin_java =
      "class Twin {\n"
      "  double processOrder(int quantity) {\n"  // token-identical method
      "    total = total + itemPrice * quantity;\n"
      "    return total;\n"
      "  }\n"
      "}\n";
  std::string donor_java =
      "class Donor {\n"
      "  double rebuild(int quantity) {\n"
      "    total = total + basePrice * quantity;\n"
      "    return total;\n"
      "  }\n"
      "}\n";
  RankFixture f({{"Main.java", main_java}, {"Twin.java", twin_java},
                 {"Donor.java", donor_java}},
                {replacement("Main.java", 3, "    total = total + itemPrice * quantity;",
                             "    total = total + basePrice * quantity;")});
  Ranking r = rank_contexts(f.corpus, f.tasks[0], MetricKind::Tfidf, f.context);
  REQUIRE(r.excluded.size() == 2);  // the recipient itself and its twin
  for (const Exclusion& e : r.excluded) {
    CHECK(e.reason == exclude::kEquivalentToRecipientContext);
  }
  CHECK(r.candidates.size() == f.corpus.context_pool().size() - 2);
}

TEST_CASE("ingredient present in two donors scores the better-ranked one", "[ranking]") {
  std::string main_java =
      "class Main {\n"
      "  double processOrder(int quantity) {\n"
      "    double total = startValue;\n"
      "    total = total + itemPrice * quantity;\n"  // line 4
      "    return total;\n"
      "  }\n"
      "}\n";
  std::string near_java =
      "class Near {\n"
      "  double replayOrder(int quantity) {\n"  // near-duplicate of the recipient
      "    double total = startValue;\n"
      "    total = total + basePrice * quantity;\n"
      "    return total;\n"
      "  }\n"
      "}\n";
  std::string far_java =
      "class Far {\n"
      "  void unrelatedHbeartbeat() {\n"
      "    ping(endpoint);\n"
      "    total = total + basePrice * quantity;\n"  // same ingredient, alien context
      "    ack(endpoint);\n"
      "  }\n"
      "}\n";
  RankFixture f({{"Main.java", main_java}, {"Near.java", near_java},
                 {"Far.java", far_java}},
                {replacement("Main.java", 4, "    total = total + itemPrice * quantity;",
                             "    total = total + basePrice * quantity;")});
  Ranking r = rank_contexts(f.corpus, f.tasks[0], MetricKind::Tfidf, f.context);
  REQUIRE(r.correct_rank.has_value());
  CHECK(*r.correct_rank == 1);  // Near outranks Far; first containing donor counts
  const SourceComponent& top =
      f.corpus.component(f.corpus.index_of(r.candidates[0].component_id));
  CHECK(top.raw_text.find("replayOrder") != std::string::npos);
}

namespace {

RankFixture combined_fixture() {
  std::string source =
      "class T {\n"
      "  void recipient() {\n"
      "    alpha = beta(gamma);\n"       // line 3: mod point
      "    prepare(alpha);\n"
      "  }\n"
      "  void donorStrong() {\n"         // near-copy vocabulary: top donor
      "    alpha = beta(gamma, delta);\n"    // most similar statement
      "    alpha = betaPrime(gamma);\n"      // correct ingredient: second
      "    prepare(alpha);\n"
      "  }\n"
      "  void donorWeak() {\n"
      "    unrelatedOne(widget);\n"
      "    unrelatedTwo(widget);\n"
      "  }\n"
      "}\n";
  return RankFixture({{"T.java", source}},
                     {replacement("T.java", 3, "    alpha = beta(gamma);",
                                  "    alpha = betaPrime(gamma);")});
}

}  // namespace

TEST_CASE("combined ranking flattens donor by donor", "[ranking][combined]") {
  RankFixture f = combined_fixture();
  Ranking r = rank_combined(f.corpus, f.tasks[0], MetricKind::Tfidf, MetricKind::Tfidf,
                            f.context);
  // recipient excluded as donor; donorStrong has 3 statements, donorWeak 2
  CHECK(r.candidates.size() == 5);
  // first three candidates belong to donorStrong
  for (size_t i = 0; i < 3; ++i) {
    const std::string& donor = f.corpus.enclosing_context(r.candidates[i].component_id);
    const SourceComponent& method = f.corpus.component(f.corpus.index_of(donor));
    CHECK(method.raw_text.find("donorStrong") != std::string::npos);
  }
}

TEST_CASE("second-most-similar statement of the top donor ranks second",
          "[ranking][combined]") {
  RankFixture f = combined_fixture();
  Ranking r = rank_combined(f.corpus, f.tasks[0], MetricKind::Tfidf, MetricKind::Tfidf,
                            f.context);
  REQUIRE(r.correct_rank.has_value());
  CHECK(*r.correct_rank == 2);
}

TEST_CASE("combined list length equals per-donor counts after exclusions",
          "[ranking][combined]") {
  RankFixture f = planted_fixture();
  Ranking combined = rank_combined(f.corpus, f.tasks[0], MetricKind::Tfidf,
                                   MetricKind::Tfidf, f.context);
  Ranking donors = rank_contexts(f.corpus, f.tasks[0], MetricKind::Tfidf, f.context);
  const SourceComponent& mod_point =
      f.corpus.component(f.corpus.index_of(f.tasks[0].modification_point_id));
  size_t expected = 0;
  for (const RankedCandidate& donor : donors.candidates) {
    for (size_t idx : f.corpus.statements_of(donor.component_id)) {
      if (!syntactically_equivalent(f.corpus.component(idx), mod_point)) ++expected;
    }
  }
  CHECK(combined.candidates.size() == expected);
}

TEST_CASE("missing ingredient reports an absent rank instead of failing", "[ranking]") {
  RankFixture f = planted_fixture();
  RepairTask broken = f.tasks[0];
  broken.correct_ingredient.raw_text = "neverInCorpus(zZz);";
  broken.correct_ingredient.tokens = lex(broken.correct_ingredient.raw_text);
  broken.correct_ingredient.finalize();
  Ranking r = rank_ingredients(f.corpus, broken, MetricKind::Tfidf, f.context);
  CHECK_FALSE(r.correct_rank.has_value());
}

TEST_CASE("pessimistic tie mode reports the worst rank of the tie group", "[ranking]") {
  std::string source =
      "class Tie {\n"
      "  void recipient() {\n"
      "    omega(one);\n"          // line 3: mod point
      "    settle(one);\n"
      "  }\n"
      "  void donors() {\n"
      "    omega(two);\n"          // same distance from the mod point ...
      "    omega(three);\n"        // ... as this one; ingredient is one of them
      "  }\n"
      "}\n";
  RankFixture f({{"Tie.java", source}},
                {replacement("Tie.java", 3, "    omega(one);", "    omega(three);")});
  RankOptions pessimistic;
  pessimistic.tie_mode = TieMode::Pessimistic;
  Ranking optimistic_r =
      rank_ingredients(f.corpus, f.tasks[0], MetricKind::Deckard, f.context);
  Ranking pessimistic_r =
      rank_ingredients(f.corpus, f.tasks[0], MetricKind::Deckard, f.context, pessimistic);
  REQUIRE(optimistic_r.correct_rank.has_value());
  REQUIRE(pessimistic_r.correct_rank.has_value());
  CHECK(*pessimistic_r.correct_rank >= *optimistic_r.correct_rank);
}
