#include "microfor/parser.hpp"
#include "microfor/render.hpp"
#include "microfor/semantics.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

using namespace microfor;
using namespace microfor::ast;

namespace {

ForLoop loop_of(const std::string& source) {
  auto program = parse_program(source);
  return std::get<ForLoop>(program.at(0).node);
}

std::vector<BigInt> ints(std::initializer_list<int> values) {
  return {values.begin(), values.end()};
}

const ForLoop kTraditional = loop_of("for (i = 0; i < n; i++) { }");
const ForLoop kMicro = loop_of("for (i = 0; i++ < n;) { }");

// Native C++ executions of the two headers; the compiled reference the
// interpreter is checked against.
Trace native_traditional(long long n) {
  Trace t;
  long long i;
  for (i = 0; i < n; i++) {
    t.visible.push_back(i);
    ++t.iterations;
  }
  t.final = i;
  return t;
}

Trace native_micro(long long n) {
  Trace t;
  long long i;
  for (i = 0; i++ < n;) {
    t.visible.push_back(i);
    ++t.iterations;
  }
  t.final = i;
  return t;
}

}  // namespace

TEST_SUITE("eval_expr") {
  TEST_CASE("post-increment inside a comparison") {
    const auto r = eval_expr(parse_expression("i++ < n"), {{"i", 0}, {"n", 0}});
    CHECK(r.value == 0);
    CHECK(r.env.at("i") == 1);
    CHECK(r.env.at("n") == 0);
  }

  TEST_CASE("pure comparison leaves env unchanged") {
    const Env env{{"i", 0}, {"n", 0}};
    const auto r = eval_expr(parse_expression("i < n"), env);
    CHECK(r.value == 0);
    CHECK(r.env == env);
  }

  TEST_CASE("post and pre increment values") {
    auto r = eval_expr(parse_expression("i++"), {{"i", 4}});
    CHECK(r.value == 4);
    CHECK(r.env.at("i") == 5);
    r = eval_expr(parse_expression("++i"), {{"i", 4}});
    CHECK(r.value == 5);
    CHECK(r.env.at("i") == 5);
  }

  TEST_CASE("assignment, arithmetic, comparisons") {
    auto r = eval_expr(parse_expression("s = a + b - 3"), {{"a", 10}, {"b", 5}});
    CHECK(r.value == 12);
    CHECK(r.env.at("s") == 12);
    CHECK(eval_expr(parse_expression("2 <= 2"), {}).value == 1);
    CHECK(eval_expr(parse_expression("2 > 3"), {}).value == 0);
    CHECK(eval_expr(parse_expression("2 >= 3"), {}).value == 0);
    CHECK(eval_expr(parse_expression("2 == 2"), {}).value == 1);
    CHECK(eval_expr(parse_expression("2 != 2"), {}).value == 0);
    CHECK(eval_expr(parse_expression("0 - 5"), {}).value == -5);
  }

  TEST_CASE("integers do not wrap") {
    const auto r = eval_expr(parse_expression("x + x"), {{"x", BigInt("9223372036854775807")}});
    CHECK(r.value == BigInt("18446744073709551614"));
  }

  TEST_CASE("unbound variables are errors") {
    try {
      eval_expr(parse_expression("i < n"), {{"i", 0}});
      FAIL("expected UnboundVariable");
    } catch (const UnboundVariable& e) {
      CHECK(e.name() == "n");
    }
    CHECK_THROWS_AS(eval_expr(parse_expression("k++"), {}), UnboundVariable);
  }
}

TEST_SUITE("run_loop") {
  TEST_CASE("traditional loop, n = 3") {
    const Trace t = run_loop(kTraditional, {{"n", 3}}, "i");
    CHECK(t.visible == ints({0, 1, 2}));
    CHECK(t.iterations == 3);
    CHECK(t.final == 3);
  }

  TEST_CASE("micro loop, n = 3") {
    const Trace t = run_loop(kMicro, {{"n", 3}}, "i");
    CHECK(t.visible == ints({1, 2, 3}));
    CHECK(t.iterations == 3);
    CHECK(t.final == 4);
  }

  TEST_CASE("n = 0: micro condition still increments") {
    const Trace a = run_loop(kTraditional, {{"n", 0}}, "i");
    CHECK(a.visible.empty());
    CHECK(a.iterations == 0);
    CHECK(a.final == 0);
    const Trace b = run_loop(kMicro, {{"n", 0}}, "i");
    CHECK(b.visible.empty());
    CHECK(b.iterations == 0);
    CHECK(b.final == 1);
  }

  TEST_CASE("matches native execution for n in 0..100") {
    for (long long n = 0; n <= 100; ++n) {
      CAPTURE(n);
      CHECK(run_loop(kTraditional, {{"n", n}}, "i") == native_traditional(n));
      CHECK(run_loop(kMicro, {{"n", n}}, "i") == native_micro(n));
    }
  }

  TEST_CASE("the two forms differ by exactly one") {
    for (int n = 0; n <= 100; ++n) {
      const Trace a = run_loop(kTraditional, {{"n", n}}, "i");
      const Trace b = run_loop(kMicro, {{"n", n}}, "i");
      CHECK(a.iterations == static_cast<std::uint64_t>(n));
      CHECK(b.iterations == static_cast<std::uint64_t>(n));
      REQUIRE(a.visible.size() == b.visible.size());
      for (std::size_t k = 0; k < a.visible.size(); ++k) CHECK(b.visible[k] == a.visible[k] + 1);
      CHECK(b.final == a.final + 1);
    }
  }

  TEST_CASE("break and continue") {
    // continue skips the rest of the body but still runs the update.
    auto e = execute_loop(loop_of("for (i = 0; i < n; i++) { continue; s = s + 1; }"),
                          {{"n", 4}, {"s", 0}}, "i");
    CHECK(e.trace.iterations == 4);
    CHECK(e.env.at("s") == 0);
    CHECK(e.trace.final == 4);

    // In the micro form continue goes straight back to the condition.
    e = execute_loop(loop_of("for (i = 0; i++ < n;) { s = s + i; continue; }"), {{"n", 4}, {"s", 0}}, "i");
    CHECK(e.trace.visible == ints({1, 2, 3, 4}));
    CHECK(e.env.at("s") == 10);

    e = execute_loop(loop_of("for (i = 0; i < n; i++) { s = s + 1; break; }"), {{"n", 4}, {"s", 0}}, "i");
    CHECK(e.trace.iterations == 1);
    CHECK(e.trace.final == 0);

    // break inside a nested loop only leaves the inner loop.
    e = execute_loop(loop_of("for (i = 0; i < n; i++) { for (j = 0;; j++) { break; } s = s + 1; }"),
                     {{"n", 3}, {"s", 0}}, "i");
    CHECK(e.env.at("s") == 3);
  }

  TEST_CASE("fuel bounds infinite loops") {
    CHECK_THROWS_AS(run_loop(loop_of("for (i = 0;; i++) { }"), {}, "i", 1000), FuelExhausted);
    CHECK_THROWS_AS(run_loop(loop_of("for (i = 0; i < n;) { }"), {{"n", 1}}, "i", 50), FuelExhausted);
    // Exactly `fuel` iterations is allowed.
    CHECK(run_loop(kTraditional, {{"n", 50}}, "i", 50).iterations == 50);
  }

  TEST_CASE("unbound variables propagate") {
    CHECK_THROWS_AS(run_loop(kTraditional, {}, "i"), UnboundVariable);
    CHECK_THROWS_AS(run_loop(loop_of("for (;;) { break; }"), {}, "i"), UnboundVariable);
  }

  TEST_CASE("trace json") {
    const auto j = to_json(run_loop(kMicro, {{"n", 3}}, "i"));
    CHECK(j.dump() == R"({"final":4,"iterations":3,"visible":[1,2,3]})");
  }
}

// Differential test: random loops are rendered into a C program, compiled by
// the system compiler, and their observed traces compared with the
// interpreter's.
TEST_CASE("differential against compiled C") {
  namespace fs = std::filesystem;
  std::mt19937 rng(7);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const std::vector<std::string> bodies = {"s = s + i;", "t = t + 1;", "s = s + (i - 1);",
                                           "continue;", "t = t + 2; continue; s = s + 100;",
                                           "for (j = 0; j < 3; j++) { t = t + j; }", "s = s + i + t;"};
  struct Case {
    ForLoop loop;
    long long n;
  };
  std::vector<Case> cases;
  for (int k = 0; k < 60; ++k) {
    const int a = pick(0, 5);
    const int form = pick(0, 5);
    std::string header;
    const std::string init = "i = " + std::to_string(a);
    switch (form) {
      case 0: header = init + "; i < n; i++"; break;
      case 1: header = init + "; i <= n; ++i"; break;
      case 2: header = init + "; i++ < n;"; break;
      case 3: header = init + "; ++i < n;"; break;
      case 4: header = init + "; i < n + 2; i = i + 2"; break;
      default: header = init + "; i++ < n; i = i + 1"; break;
    }
    std::string body = "{";
    const int count = pick(0, 3);
    for (int b = 0; b < count; ++b) body += " " + bodies[static_cast<std::size_t>(pick(0, 6))];
    body += " }";
    cases.push_back({loop_of("for (" + header + ") " + body), pick(0, 1000)});
  }

  std::ostringstream c;
  c << "#include <stdio.h>\nint main(void) {\n  long long n, i, j, s, t, cnt; static long long vis[4096];\n";
  for (const auto& cs : cases) {
    const std::string text = render_loop(cs.loop);
    const auto brace = text.find(") {");
    c << "  n = " << cs.n << "; i = 0; j = 0; s = 0; t = 0; cnt = 0;\n  "
      << text.substr(0, brace + 3) << " vis[cnt++] = i;" << text.substr(brace + 3) << "\n"
      << "  printf(\"%lld %lld %lld %lld\", cnt, i, s, t);\n"
      << "  for (j = 0; j < cnt; j++) printf(\" %lld\", vis[j]);\n  printf(\"\\n\");\n";
  }
  c << "  return 0;\n}\n";

  const fs::path dir = fs::temp_directory_path() / ("microfor-diff-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream(dir / "diff.c") << c.str();
  }
  const std::string build = "cc -O0 -o '" + (dir / "diff").string() + "' '" + (dir / "diff.c").string() +
                            "' 2>/dev/null && '" + (dir / "diff").string() + "' > '" +
                            (dir / "out.txt").string() + "'";
  if (std::system(build.c_str()) != 0) {
    MESSAGE("no working C compiler; differential test skipped");
    fs::remove_all(dir);
    return;
  }
  std::ifstream results(dir / "out.txt");
  for (const auto& cs : cases) {
    CAPTURE(render_loop(cs.loop));
    CAPTURE(cs.n);
    std::string line;
    REQUIRE(std::getline(results, line));
    std::istringstream fields(line);
    long long count = 0, final_i = 0, s = 0, t = 0;
    fields >> count >> final_i >> s >> t;
    std::vector<BigInt> visible;
    for (long long v; fields >> v;) visible.push_back(v);

    const Execution e = execute_loop(cs.loop, {{"n", cs.n}, {"i", 0}, {"j", 0}, {"s", 0}, {"t", 0}}, "i");
    CHECK(e.trace.iterations == static_cast<std::uint64_t>(count));
    CHECK(e.trace.final == final_i);
    CHECK(e.trace.visible == visible);
    CHECK(e.env.at("s") == s);
    CHECK(e.env.at("t") == t);
  }
  fs::remove_all(dir);
}
