#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include <random>

#include "ingrank/corpus.hpp"

using namespace ingrank;

namespace {

// 2-file fixture, hand-counted: 5 methods, 20 statements total.
std::vector<std::pair<std::string, std::string>> two_file_fixture() {
  std::string alpha =
      "class Alpha {\n"
      "  int scale(int v) {\n"
      "    int doubled = v * 2;\n"       // 1
      "    log(doubled);\n"              // 2
      "    return doubled;\n"            // 3
      "  }\n"
      "  int shrink(int v) {\n"
      "    int halved = v / 2;\n"        // 4
      "    log(halved);\n"               // 5
      "    return halved;\n"             // 6
      "  }\n"
      "  void reset() {\n"
      "    counter = 0;\n"               // 7
      "    log(counter);\n"              // 8
      "  }\n"
      "}\n";
  std::string beta =
      "class Beta {\n"
      "  int total(int[] values) {\n"
      "    int sum = 0;\n"               // 9
      "    for (int i = 0; i < values.length; i++)\n"  // 10 (header)
      "      sum += values[i];\n"        // 11
      "    return sum;\n"                // 12
      "  }\n"
      "  int largest(int[] values) {\n"
      "    int best = values[0];\n"      // 13
      "    for (int i = 1; i < values.length; i++)\n"  // 14 (header)
      "      if (values[i] > best)\n"    // 15 (header)
      "        best = values[i];\n"      // 16
      "    log(best);\n"                 // 17
      "    audit(best);\n"               // 18
      "    trace(best);\n"               // 19
      "    return best;\n"               // 20
      "  }\n"
      "}\n";
  return {{"Alpha.java", alpha}, {"Beta.java", beta}};
}

std::filesystem::path write_tree(const std::string& name,
                                 const std::vector<std::pair<std::string, std::string>>& files) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / ("ingrank_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  for (const auto& [rel, content] : files) {
    std::filesystem::path p = dir / rel;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p) << content;
  }
  return dir;
}

}  // namespace

TEST_CASE("two-file fixture yields pools of 5 methods and 20 statements", "[corpus]") {
  CorpusIndex index = CorpusIndex::build_from_memory(two_file_fixture());
  CHECK(index.context_pool().size() == 5);
  CHECK(index.statement_pool().size() == 20);
  CHECK(index.components().size() == 25);
}

TEST_CASE("per-file failures are recorded and skipped", "[corpus]") {
  auto files = two_file_fixture();
  files.push_back({"Broken.java", "class C {\n  void f() {\n}\n"});  // unbalanced
  CorpusIndex index = CorpusIndex::build_from_memory(files);
  CHECK(index.files().size() == 2);
  REQUIRE(index.diagnostics().size() == 1);
  CHECK(index.diagnostics()[0].file == "Broken.java");
  CHECK(index.context_pool().size() == 5);
}

TEST_CASE("empty directory is an error", "[corpus]") {
  std::filesystem::path dir = write_tree("empty", {});
  CHECK_THROWS_AS(CorpusIndex::build(dir), DataError);
}

TEST_CASE("containment is total over the statement pool", "[corpus]") {
  CorpusIndex index = CorpusIndex::build_from_memory(two_file_fixture());
  for (size_t idx : index.statement_pool()) {
    const SourceComponent& c = index.component(idx);
    const std::string& ctx = index.enclosing_context(c.id);
    CHECK(!ctx.empty());
    if (ctx != kTopLevelContext) {
      const SourceComponent* method = index.find(ctx);
      REQUIRE(method != nullptr);
      CHECK(method->role == Role::Method);
    }
  }
}

TEST_CASE("building twice from the same tree is idempotent", "[corpus]") {
  std::filesystem::path dir = write_tree("idem", two_file_fixture());
  CorpusIndex first = CorpusIndex::build(dir);
  CorpusIndex second = CorpusIndex::build(dir);
  REQUIRE(first.components().size() == second.components().size());
  for (size_t i = 0; i < first.components().size(); ++i) {
    CHECK(first.component(i).id == second.component(i).id);
    CHECK(first.component(i).signature == second.component(i).signature);
  }
  CHECK(first.serialize() == second.serialize());
  CHECK(first.content_hash() == second.content_hash());
}

TEST_CASE("save and load round trip preserves pools and containment", "[corpus]") {
  CorpusIndex index = CorpusIndex::build_from_memory(two_file_fixture());
  std::filesystem::path path =
      std::filesystem::temp_directory_path() / "ingrank_index.jsonl";
  index.save(path);
  CorpusIndex loaded = CorpusIndex::load(path);
  CHECK(loaded.statement_pool().size() == index.statement_pool().size());
  CHECK(loaded.context_pool().size() == index.context_pool().size());
  CHECK(loaded.serialize() == index.serialize());
  CHECK(loaded.containment().size() == index.containment().size());
}

TEST_CASE("glob filter selects files", "[corpus]") {
  auto files = two_file_fixture();
  files.push_back({"notes/readme.txt", "not java\n"});
  files.push_back({"deep/nested/Gamma.java",
                   "class Gamma {\n  void g() {\n    noop();\n  }\n}\n"});
  std::filesystem::path dir = write_tree("glob", files);
  CorpusIndex index = CorpusIndex::build(dir, {"**/*.java"});
  CHECK(index.files().size() == 3);
  CorpusIndex top_only = CorpusIndex::build(dir, {"*.java"});
  CHECK(top_only.files().size() == 2);
}

TEST_CASE("syntactic equivalence is an equivalence relation on random triples", "[corpus]") {
  CorpusIndex index = CorpusIndex::build_from_memory(two_file_fixture());
  const auto& pool = index.statement_pool();
  std::mt19937_64 rng(7);
  for (int round = 0; round < 300; ++round) {
    const SourceComponent& a = index.component(pool[rng() % pool.size()]);
    const SourceComponent& b = index.component(pool[rng() % pool.size()]);
    const SourceComponent& c = index.component(pool[rng() % pool.size()]);
    CHECK(syntactically_equivalent(a, a));  // reflexive
    CHECK(syntactically_equivalent(a, b) == syntactically_equivalent(b, a));
    if (syntactically_equivalent(a, b) && syntactically_equivalent(b, c)) {
      CHECK(syntactically_equivalent(a, c));  // transitive
    }
  }
}

TEST_CASE("equivalent statements in different files share token sequences", "[corpus]") {
  auto files = two_file_fixture();
  files.push_back({"Copy.java",
                   "class Copy {\n"
                   "  int scaleCopy(int v) {\n"
                   "    int doubled = v * 2;\n"
                   "    return doubled;\n"
                   "  }\n"
                   "}\n"});
  CorpusIndex index = CorpusIndex::build_from_memory(files);
  CHECK(index.pool_contains_equivalent(lex("int doubled = v * 2;")));
  CHECK(index.pool_contains_equivalent(lex("int doubled=v*2;")));  // whitespace-blind
  CHECK_FALSE(index.pool_contains_equivalent(lex("int doubled = v * 3;")));
}
