#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cosupp/dsl.hpp"

using namespace cosupp;
using nlohmann::json;

TEST_CASE("parsing") {
  SUBCASE("declarations and a query") {
    auto p = parse_program(
        "ring R = Q[x,y]; prime p = (x) in R; query cosupp_member R p;");
    REQUIRE(p.decls.size() == 2);
    REQUIRE(p.queries.size() == 1);
    CHECK(p.decls[0].kind == DeclAst::Kind::Ring);
    CHECK(p.decls[1].kind == DeclAst::Kind::Prime);
    CHECK(p.queries[0].keyword == "cosupp_member");
  }
  SUBCASE("power series over an extension") {
    auto p = parse_program("ring S = powerseries(F(2)[x], t);");
    REQUIRE(p.decls.size() == 1);
    const auto& e = p.decls[0].ring;
    CHECK(e.kind == RingExprAst::Kind::PowerSeries);
    CHECK(e.vars == std::vector<std::string>{"t"});
    REQUIRE(e.inner);
    CHECK(e.inner->kind == RingExprAst::Kind::PolyVars);
    CHECK(e.inner->inner->base == "F");
    CHECK(e.inner->inner->characteristic == 2);
  }
  SUBCASE("syntax errors carry location and expectations") {
    try {
      parse_program("ring T = Q[x,");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.line() == 1);
      CHECK(!e.expected().empty());
    }
    CHECK_THROWS_AS(parse_program("query frobnicate R;"), parse_error);
    CHECK_THROWS_AS(parse_program("bogus;"), parse_error);
  }
  SUBCASE("round trip") {
    std::string text =
        "ring R = powerseries(Q[x], t)/(x^2 - 1);\n"
        "ring A = Q[x,y];\n"
        "ring L = localize(Z, five);\n"
        "prime p = (x, t) in R;\n"
        "map f : A -> A = [x, y];\n"
        "module M = coker A [[x, y], [-y, x]];\n"
        "cf T = module(A, {(x): 2, (0): omega, (y): X});\n"
        "cf B = complex(A, 0, [T, T], bounded, semiflat, "
        "diff(0, (x), (x), zeromodp));\n"
        "query cosupp_member R p;\n"
        "query cosupp_describe A probe (x), (y);\n"
        "query notclosed A family (1 - x*y^n) 3 (x);\n"
        "query gb A (x^2 + y^2, x*y);\n";
    Program once = parse_program(text);
    Program twice = parse_program(print_program(once));
    CHECK(program_equal(once, twice));
    CHECK(print_program(once) == print_program(twice));
  }
}

TEST_CASE("program execution") {
  SUBCASE("complete local example") {
    auto p = parse_program(
        "ring R = powerseries(Q, x, y);"
        "query cosupp_describe R;"
        "query cosupp_member R (x, y);"
        "query cosupp_member R (x);");
    auto r = run_program(p, {});
    CHECK(!r.had_errors);
    auto j = json::parse(r.json_text);
    CHECK(j["schema"] == "cosupp/1");
    REQUIRE(j["results"].size() == 3);
    CHECK(j["results"][0]["set"]["kind"] == "finite");
    CHECK(j["results"][0]["set"]["primes"][0] == "(x, y)");
    CHECK(j["results"][1]["verdict"] == "yes");
    CHECK(j["results"][2]["verdict"] == "no");
  }
  SUBCASE("empty program") {
    auto r = run_program(parse_program(""), {});
    CHECK(!r.had_errors);
    auto j = json::parse(r.json_text);
    CHECK(j["results"].empty());
  }
  SUBCASE("unknown verdicts are results, not errors") {
    auto p = parse_program(
        "ring R = powerseries(field(uncountable), t)[x];"
        "query cosupp_member R (0);");
    auto r = run_program(p, {});
    CHECK(!r.had_errors);
    auto j = json::parse(r.json_text);
    CHECK(j["results"][0]["verdict"] == "unknown");
    CHECK(!j["results"][0]["frontier"].empty());
  }
  SUBCASE("reports are byte-deterministic") {
    std::string text =
        "ring R = powerseries(F(2), t)[x];"
        "query cosupp_member R (x);"
        "query cosupp_member R (1 - x*t);"
        "query cr_criterion R witness (x);";
    auto p = parse_program(text);
    auto a = run_program(p, {});
    auto b = run_program(p, {});
    CHECK(a.json_text == b.json_text);
    CHECK(a.human_text == b.human_text);
  }
  SUBCASE("engine errors do not abort later queries") {
    auto p = parse_program(
        "ring R = Q[x];"
        "query supp NOPE;"
        "query dim R (x);");
    auto r = run_program(p, {});
    CHECK(r.had_errors);
    auto j = json::parse(r.json_text);
    REQUIRE(j["results"].size() == 2);
    CHECK(j["results"][0]["status"] == "error");
    CHECK(j["results"][1]["status"] == "ok");
    CHECK(j["results"][1]["dim"] == 0);
  }
  SUBCASE("cf pipeline through the language") {
    auto p = parse_program(
        "ring A = Q[x];"
        "cf T = module(A, {(x): 1, (0): omega});"
        "cf B = complex(A, 0, [T, T], bounded, semiflat, "
        "diff(0, (x), (x), nonzero));"
        "query cf_lambda T (x);"
        "query cf_colocalize T (0);"
        "query cf_minimal B;");
    auto r = run_program(p, {});
    CHECK(!r.had_errors);
    auto j = json::parse(r.json_text);
    CHECK(j["results"][0]["module"] == "T(x)^(1)");
    CHECK(j["results"][1]["module"] == "T(0)^(omega)");
    CHECK(j["results"][2]["verdict"] == "no");
  }
  SUBCASE("base change through a declared quotient map") {
    auto p = parse_program(
        "ring A = Q[x,y];"
        "ring B = Q[x];"
        "map f : A -> B = [x, 0];"
        "cf T = module(A, {(y, x^2 + 1): 2});"
        "query cf_basechange T f;");
    auto r = run_program(p, {});
    CHECK(!r.had_errors);
    auto j = json::parse(r.json_text);
    CHECK(j["results"][0]["module"] == "T(x^2 + 1)^(2)");
  }
  SUBCASE("conjecture flag marks trace steps") {
    auto text =
        "ring R = field(uncountable)[x,y,z];"
        "query cosupp_member R (0);";
    RunOptions off;
    auto r_off = run_program(parse_program(text), off);
    auto j_off = json::parse(r_off.json_text);
    CHECK(j_off["results"][0]["verdict"] == "unknown");
    RunOptions on;
    on.assume_gruson_jensen = true;
    auto r_on = run_program(parse_program(text), on);
    auto j_on = json::parse(r_on.json_text);
    CHECK(j_on["results"][0]["verdict"] == "yes");
    bool saw_gj = false;
    for (const auto& s : j_on["results"][0]["trace"])
      if (s["rule_id"] == "RULE-GJ") {
        saw_gj = true;
        CHECK(s["conjecture"] == true);
      }
    CHECK(saw_gj);
  }
}

TEST_CASE("trace anchors match the documented catalog") {
  // docs/rules.md is the public rule table; every anchor the engine emits
  // must agree with it
  std::map<std::string, std::string> catalog;
  std::ifstream docs(std::string(COSUPP_SOURCE_DIR) + "/docs/rules.md");
  REQUIRE(docs.good());
  std::string line;
  while (std::getline(docs, line)) {
    if (line.rfind("| R", 0) != 0 && line.rfind("| DESCRIBE", 0) != 0)
      continue;
    std::istringstream row(line);
    std::string cell, rule, anchor;
    std::getline(row, cell, '|');
    std::getline(row, rule, '|');
    std::getline(row, anchor, '|');
    auto trim = [](std::string s) {
      while (!s.empty() && s.front() == ' ') s.erase(s.begin());
      while (!s.empty() && s.back() == ' ') s.pop_back();
      return s;
    };
    catalog[trim(rule)] = trim(anchor);
  }
  REQUIRE(catalog.size() >= 12);

  auto program = parse_program(
      "ring A = Q[x,y];"
      "ring P = powerseries(Q, x, y);"
      "ring S = powerseries(Q[x], t);"
      "ring T = powerseries(F(2), t)[x];"
      "ring G = field(uncountable)[x,y,z];"
      "query cosupp_member A (x);"
      "query cosupp_member P (x);"
      "query cosupp_member P (x, y);"
      "query cosupp_member S (t);"
      "query cosupp_member T (x);"
      "query cosupp_member T (1 - x*t);"
      "query cosupp_member G (0);"
      "query cosupp_describe T probe (x);");
  RunOptions opts;
  opts.assume_gruson_jensen = true;
  auto r = run_program(program, opts);
  auto j = json::parse(r.json_text);
  int steps_checked = 0;
  for (const auto& res : j["results"]) {
    if (!res.contains("trace")) continue;
    for (const auto& s : res["trace"]) {
      auto rule = s["rule_id"].get<std::string>();
      REQUIRE(catalog.count(rule));
      CHECK(catalog[rule] == s["paper_anchor"].get<std::string>());
      ++steps_checked;
    }
  }
  CHECK(steps_checked >= 8);
}
