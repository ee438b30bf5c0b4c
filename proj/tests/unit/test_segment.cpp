#include <catch2/catch_amalgamated.hpp>

#include "ingrank/segment.hpp"

using namespace ingrank;

namespace {

const char* kSimpleClass =
    "class Calculator {\n"
    "  public int add(int a, int b) {\n"
    "    int sum = a + b;\n"
    "    log(sum);\n"
    "    return sum;\n"
    "  }\n"
    "}\n";

}  // namespace

TEST_CASE("one method with three simple statements", "[segment]") {
  SegmentResult seg = segment_file("Calculator.java", kSimpleClass);
  REQUIRE(seg.methods.size() == 1);
  REQUIRE(seg.statements.size() == 3);
  CHECK(seg.methods[0].role == Role::Method);
  CHECK(seg.statements[0].raw_text == "int sum = a + b;");
  CHECK(seg.statements[1].raw_text == "log(sum);");
  CHECK(seg.statements[2].raw_text == "return sum;");
  for (int enclosing : seg.enclosing) CHECK(enclosing == 0);
}

TEST_CASE("control-flow headers become statement components", "[segment]") {
  SegmentResult seg = segment_file("Loop.java",
      "class A {\n"
      "  void run(int n) {\n"
      "    for (int i = 0; i < n; i++) {\n"
      "      total += i;\n"
      "    }\n"
      "    if (total > 10) {\n"
      "      reset();\n"
      "    } else {\n"
      "      keep();\n"
      "    }\n"
      "  }\n"
      "}\n");
  REQUIRE(seg.methods.size() == 1);
  std::vector<std::string> texts;
  for (const SourceComponent& s : seg.statements) texts.push_back(s.raw_text);
  REQUIRE(texts == std::vector<std::string>{
      "for (int i = 0; i < n; i++)", "total += i;", "if (total > 10)",
      "reset();", "keep();"});
}

TEST_CASE("hand-segmented fixture with nested anonymous method", "[segment]") {
  // 10-line fixture: inner statements must map to the innermost method
  SegmentResult seg = segment_file("Outer.java",
      "class Outer {\n"
      "  void outer() {\n"
      "    Runnable r = new Runnable() {\n"
      "      public void run() {\n"
      "        ping();\n"
      "      }\n"
      "    };\n"
      "    r.run();\n"
      "  }\n"
      "}\n");
  REQUIRE(seg.methods.size() == 2);  // outer() and run()
  // find ping(); and r.run();
  int ping_index = -1, run_call_index = -1;
  for (size_t i = 0; i < seg.statements.size(); ++i) {
    if (seg.statements[i].raw_text == "ping();") ping_index = static_cast<int>(i);
    if (seg.statements[i].raw_text == "r.run();") run_call_index = static_cast<int>(i);
  }
  REQUIRE(ping_index >= 0);
  REQUIRE(run_call_index >= 0);
  const SourceComponent& ping_method =
      seg.methods[static_cast<size_t>(seg.enclosing[static_cast<size_t>(ping_index)])];
  const SourceComponent& call_method =
      seg.methods[static_cast<size_t>(seg.enclosing[static_cast<size_t>(run_call_index)])];
  CHECK(ping_method.raw_text.find("run()") != std::string::npos);
  CHECK(call_method.raw_text.find("outer()") != std::string::npos);
  CHECK(ping_method.id != call_method.id);
}

TEST_CASE("file with only field declarations has no methods or statements", "[segment]") {
  SegmentResult seg = segment_file("Fields.java",
      "class Config {\n"
      "  private int retries = 3;\n"
      "  static final String NAME = \"cfg\";\n"
      "}\n");
  CHECK(seg.methods.empty());
  CHECK(seg.statements.empty());
}

TEST_CASE("unbalanced braces raise a segmentation error naming file and line", "[segment]") {
  try {
    segment_file("Broken.java", "class A {\n  void f() {\n}\n");
    FAIL("expected SegmentError");
  } catch (const SegmentError& e) {
    CHECK(e.file() == "Broken.java");
    CHECK(e.line() == 1);
  }
}

TEST_CASE("multi-line statements are joined into one component", "[segment]") {
  SegmentResult seg = segment_file("Mult.java",
      "class A {\n"
      "  void f() {\n"
      "    total = alpha\n"
      "        + beta\n"
      "        + gamma;\n"
      "  }\n"
      "}\n");
  REQUIRE(seg.statements.size() == 1);
  CHECK(seg.statements[0].start_line == 3);
  CHECK(seg.statements[0].end_line == 5);
}

TEST_CASE("round trip: every component re-lexes to its own tokens", "[segment]") {
  SegmentResult seg = segment_file("Loop.java",
      "class A {\n"
      "  void run(int n) { /* body */\n"
      "    for (int i = 0; i < n; i++) {\n"
      "      total += i; // accumulate\n"
      "    }\n"
      "  }\n"
      "}\n");
  auto check_roundtrip = [](const SourceComponent& c) {
    std::vector<Token> relexed = lex(c.raw_text);
    REQUIRE(relexed.size() == c.tokens.size());
    for (size_t i = 0; i < relexed.size(); ++i) CHECK(relexed[i] == c.tokens[i]);
  };
  for (const SourceComponent& c : seg.methods) check_roundtrip(c);
  for (const SourceComponent& c : seg.statements) check_roundtrip(c);
}

TEST_CASE("constructors count as methods", "[segment]") {
  SegmentResult seg = segment_file("Ctor.java",
      "class Point {\n"
      "  private int x;\n"
      "  public Point(int x) {\n"
      "    this.x = x;\n"
      "  }\n"
      "}\n");
  REQUIRE(seg.methods.size() == 1);
  REQUIRE(seg.statements.size() == 1);
  CHECK(seg.statements[0].raw_text == "this.x = x;");
}

TEST_CASE("calls followed by blocks are not mistaken for methods", "[segment]") {
  SegmentResult seg = segment_file("Guard.java",
      "class A {\n"
      "  void f() {\n"
      "    if (check(a)) {\n"
      "      act();\n"
      "    }\n"
      "    while (poll(b)) {\n"
      "      step();\n"
      "    }\n"
      "  }\n"
      "}\n");
  REQUIRE(seg.methods.size() == 1);
}
