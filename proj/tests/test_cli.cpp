#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mgm/demos.hpp"
#include "mgm/runner.hpp"

using namespace mgm;

namespace {

std::string data(const std::string& name) {
  std::ifstream in(std::string(MGM_TEST_DATA) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string demo(std::string_view name) {
  for (const auto& [n, text] : demos::kShipped)
    if (n == name) return std::string(text);
  FAIL("no demo " << name);
  return {};
}

Location error_at(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.where();
  }
  FAIL("no error for:\n" << text);
  return {};
}

std::string error_message(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.message();
  }
  return {};
}

}  // namespace

TEST_CASE("a minimal scenario parses") {
  Scenario s = parse_scenario("ring Z = integers\ncontext C over Z (2)\ncheck wpr C\n");
  REQUIRE(s.decls.size() == 2);
  REQUIRE(s.checks.size() == 1);
  CHECK(s.checks[0].kind == "wpr");
  CHECK(s.checks[0].args == std::vector<std::string>{"C"});
  CHECK(effective_bound(s, 0, std::nullopt) == kDefaultBound);
}

TEST_CASE("undeclared names are reported with their position") {
  const std::string text = "ring Z = integers\ncontext C over Z (2)\n\ncheck cofinite C Missing\n";
  Location at = error_at(text);
  CHECK(at.line == 4);
  CHECK(at.column == 1);
  CHECK(error_message(text).find("'Missing'") != std::string::npos);

  Location at2 = error_at("ring Z = integers\nmodule M over W free 2\n");
  CHECK(at2.line == 2);
  CHECK(error_message("ring Z = integers\nmodule M over W free 2\n").find("'W'") != std::string::npos);
}

TEST_CASE("malformed scenarios are rejected") {
  // ragged matrix
  CHECK(error_message("ring Z = integers\nmodule M over Z [\n 1, 2\n 3\n]\n").find("dimension mismatch") !=
        std::string::npos);
  CHECK(error_at("ring Z = integers\nmodule M over Z [\n 1, 2\n 3\n]\n").line == 2);
  // duplicate and reserved names
  CHECK(error_message("ring Z = integers\nring Z = rationals\n").find("already declared") != std::string::npos);
  CHECK(error_message("ring tor = integers\n").find("reserved") != std::string::npos);
  // syntax
  Location col = error_at("ring Z = integers\ncontext C over Z 2\n");
  CHECK(col.line == 2);
  CHECK(col.column == 18);
  CHECK(error_message("ring Z = integers\nmodule M over Z quotient (2 +)\n").find("bad polynomial") !=
        std::string::npos);
  // wrong kinds and arities
  CHECK(error_message("ring Z = integers\nmodule M over Z free 1\ncheck wpr M\n").find("not usable") !=
        std::string::npos);
  CHECK(error_message("ring Z = integers\ncontext C over Z (2)\ncheck wpr C C\n").find("takes 1") !=
        std::string::npos);
  CHECK(error_message("ring Z = integers\ncontext C over Z (2)\nmodule M over Z free 1\ncheck mgm C M\n")
            .find("side") != std::string::npos);
  // mixed rings
  CHECK(error_message("ring Z = integers\nring Q = rationals\ncontext C over Z (2)\nmodule M over Q free 1\n"
                      "check torsion_of_completion C M\n")
            .find("ring") != std::string::npos);
  CHECK(error_message("ring Z = integers\nmodule M over Z [\n 1\n").find("closing") != std::string::npos);
  CHECK(error_message("bound 1\n").find("at least") != std::string::npos);
}

TEST_CASE("printing and reparsing is a fixed point") {
  std::vector<std::string> texts;
  for (const auto& [name, text] : demos::kShipped) texts.emplace_back(text);
  texts.push_back(data("matrix.scn"));
  texts.push_back(data("false.scn"));
  texts.push_back(data("trivial.scn"));
  for (const auto& text : texts) {
    Scenario s = parse_scenario(text);
    const std::string printed = print_scenario(s);
    Scenario again = parse_scenario(printed);
    CHECK(again == s);
    CHECK(print_scenario(again) == printed);
  }
}

TEST_CASE("the serre demo describes the parabola and the line") {
  Scenario s = parse_scenario(demo("serre"));
  const auto* parabola = std::get_if<ModuleDecl>(&s.decls[3]);
  REQUIRE(parabola != nullptr);
  CHECK(parabola->name == "Parabola");
  CHECK(parabola->gens == std::vector<std::string>{"-x^2 + y"});
  REQUIRE(!s.checks.empty());
  CHECK(s.checks[0].kind == "serre");
  CHECK(s.checks[0].args == std::vector<std::string>{"D", "Parabola", "LineY"});
  CHECK(s.checks[0].expect == 2);
}

TEST_CASE("reproductions are self-contained") {
  Scenario s = parse_scenario(demo("serre"));
  for (std::size_t i = 0; i < s.checks.size(); ++i) {
    Scenario one = parse_scenario(reproduction(s, i));
    REQUIRE(one.checks.size() == 1);
    CHECK(one.checks[0] == s.checks[i]);
  }
  // only what the check needs
  const std::string r = reproduction(s, 0);
  CHECK(r.find("LineX") == std::string::npos);
  CHECK(r.find("Parabola") != std::string::npos);
}

TEST_CASE("bounds resolve from override, check, scenario, default") {
  Scenario s = parse_scenario(data("matrix.scn"));
  CHECK(effective_bound(s, 0, std::nullopt) == 4);
  CHECK(effective_bound(s, 1, std::nullopt) == 6);
  CHECK(effective_bound(s, 0, 3) == 3);
}

TEST_CASE("an all-trivial scenario exits 0") {
  Report r = run_scenario(parse_scenario(data("trivial.scn")), {});
  CHECK(r.passed == r.records.size());
  CHECK(exit_code(r) == 0);
  CHECK(to_json(r)["summary"]["passed"] == 2);
}

TEST_CASE("a false comparison exits 1 with a witness") {
  Report r = run_scenario(parse_scenario(data("false.scn")), {});
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].verdict == "failed");
  CHECK(!r.records[0].witnesses.empty());
  CHECK(exit_code(r) == 1);
}

TEST_CASE("precondition violations are errors, not failures") {
  Report r = run_scenario(
      parse_scenario("ring Z = integers\ncontext C over Z (2)\nmodule A over Z free 1\ncheck mgm C A tor\n"), {});
  CHECK(r.records[0].verdict == "error");
  CHECK(r.errors == 1);
  CHECK(exit_code(r) == 1);
}

TEST_CASE("report verdicts match the checks themselves") {
  Scenario s = parse_scenario(data("matrix.scn"));
  Workspace ws = instantiate(s);
  Report r = run_scenario(s, {});
  for (std::size_t i = 0; i < s.checks.size(); ++i) {
    TheoremInstance t = run_check(ws, s, i);
    CHECK(r.records[i].witnesses == t.verdict.witnesses);
    CHECK((r.records[i].verdict == "verified") == t.verdict.passed());
  }
}

TEST_CASE("reports do not depend on the number of workers") {
  for (std::string_view name : {"serre", "wpr", "cofinite"}) {
    Scenario s = parse_scenario(demo(name));
    RunOptions one, many;
    many.jobs = 8;
    CHECK(to_json(run_scenario(s, one)).dump(2) == to_json(run_scenario(s, many)).dump(2));
  }
}

TEST_CASE("wall time stays out of reports unless asked for") {
  Scenario s = parse_scenario(data("trivial.scn"));
  CHECK(to_json(run_scenario(s, {})).dump().find("wall_seconds") == std::string::npos);
  RunOptions t;
  t.timings = true;
  CHECK(to_json(run_scenario(s, t)).dump().find("wall_seconds") != std::string::npos);
}

TEST_CASE("inputs digest") {
  CHECK(fnv1a("") == "cbf29ce484222325");
  CHECK(fnv1a("a") == "af63dc4c8601ec8c");
}
