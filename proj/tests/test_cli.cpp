#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ybp/errors.hpp"
#include "ybp/pipeline.hpp"
#include "ybp/problem.hpp"

using namespace ybp;

namespace {

const std::vector<std::string> kFixtures = {
    "abelian-scaling", "heisenberg-nonyb", "oscillator",      "oscillator-adjoint",
    "remark-aff1",     "translations-r2",  "translations-r4", "volume-3chart"};

std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(YBCHECK_FIXTURE_DIR) + "/" + name + ".json");
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, Verdict> verdict_map(const Report& r) {
  std::map<std::string, Verdict> m;
  for (const auto& res : r.results) m[res.check] = res.verdict;
  return m;
}

void expect_input_error(const std::string& json_text, const std::string& code,
                        const std::string& fragment) {
  try {
    ProblemSpec p = parse_problem(json_text);
    realize(p);  // expression errors surface when the objects are built
    CHECK_MESSAGE(false, "accepted: ", fragment);
  } catch (const InputError& e) {
    CHECK(e.code == code);
    CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos,
                  "got: ", e.what());
  }
}

// Minimal valid problem with splice points for the violation tests.
std::string patched(const std::string& replace_what, const std::string& replace_with) {
  std::string base = R"({
  "schema_version": 1,
  "name": "probe",
  "lie_algebra": {"basis": ["a", "b"], "brackets": []},
  "r": [{"pair": ["a", "b"], "coeff": "1"}],
  "action": {"coords": ["x", "y"], "fields": {"a": ["1", "0"], "b": ["0", "1"]}}
})";
  if (replace_what.empty()) return base;
  auto at = base.find(replace_what);
  REQUIRE(at != std::string::npos);
  return base.replace(at, replace_what.size(), replace_with);
}

}  // namespace

TEST_CASE("problem files round-trip through emit and parse") {
  for (const auto& name : kFixtures) {
    CAPTURE(name);
    ProblemSpec spec = parse_problem(fixture_text(name));
    CHECK(spec.name == name);
    std::string emitted = emit_problem(spec);
    ProblemSpec again = parse_problem(emitted);
    CHECK(again == spec);
    CHECK(emit_problem(again) == emitted);
    RealizedProblem rp = realize(spec);
    CHECK(rp.algebra.dim() == static_cast<int>(spec.basis.size()));
  }
}

TEST_CASE("realize builds the declared structures") {
  ProblemSpec spec = parse_problem(fixture_text("translations-r2"));
  RealizedProblem rp = realize(spec);
  CHECK(rp.algebra.dim() == 2);
  CHECK(rp.algebra.jacobi().ok);
  CHECK(rp.r.comp(0, 1) == Rat(1));
  CHECK(rp.r.comp(1, 0) == Rat(-1));
  REQUIRE(rp.action.has_value());
  CHECK(rp.action->chart().dim() == 2);
  CHECK(rp.action->field(0) == VectorField::coordinate(rp.action->chart(), 0));
  REQUIRE(rp.cometric.has_value());
  REQUIRE(rp.volume.has_value());
  CHECK(rp.volume->is_constant());
  CHECK(rp.probe_points.size() == 1);
  CHECK(rp.cert_point == RatVec{Rat(0), Rat(0)});
  CHECK(rp.parallel_candidates.size() == 3);
  CHECK(rp.expect_parallel == std::vector<int>{0, 1});

  ProblemSpec bare = parse_problem(fixture_text("oscillator"));
  RealizedProblem rb = realize(bare);
  CHECK(!rb.action.has_value());
  CHECK(!rb.cometric.has_value());
  CHECK(!rb.volume.has_value());
  CHECK(rb.parallel_candidates.empty());
  CHECK(rb.algebra.dim() == 6);
}

TEST_CASE("schema violations are typed input errors") {
  expect_input_error("not json", errcode::schema, "invalid json");
  expect_input_error("[1, 2]", errcode::schema, "top level must be an object");
  expect_input_error(patched("\"schema_version\": 1,", ""), errcode::schema,
                     "missing key 'schema_version'");
  expect_input_error(patched("\"schema_version\": 1", "\"schema_version\": 2"), errcode::schema,
                     "schema_version must be the integer 1");
  expect_input_error(patched("\"name\": \"probe\"", "\"name\": \"probe\", \"extra\": 1"),
                     errcode::schema, "problem: unknown key 'extra'");
  expect_input_error(patched("\"brackets\": []",
                             "\"brackets\": [{\"pair\": [\"a\", \"zz\"], \"value\": {}}]"),
                     errcode::unknown_identifier, "unknown name 'zz'");
  expect_input_error(patched("[{\"pair\": [\"a\", \"b\"], \"coeff\": \"1\"}]",
                             "[{\"pair\": [\"a\", \"a\"], \"coeff\": \"1\"}]"),
                     errcode::r_not_antisymmetric, "r pair repeats a basis name");
  expect_input_error(patched("[{\"pair\": [\"a\", \"b\"], \"coeff\": \"1\"}]",
                             "[{\"pair\": [\"a\", \"b\"], \"coeff\": \"1\"},"
                             " {\"pair\": [\"b\", \"a\"], \"coeff\": \"2\"}]"),
                     errcode::r_not_antisymmetric, "duplicate r pair");
  expect_input_error(patched("\"basis\": [\"a\", \"b\"]", "\"basis\": [\"a\", \"a\"]"),
                     errcode::schema, "basis names");
  // Expression problems surface when the described objects get built.
  expect_input_error(patched("\"a\": [\"1\", \"0\"]", "\"a\": [\"2x\", \"0\"]"), errcode::expr,
                     "");
  expect_input_error(patched("\"a\": [\"1\", \"0\"]", "\"a\": [\"q\", \"0\"]"),
                     errcode::unknown_identifier, "");
  // Chart-dependent sections without an action.
  std::string no_action = patched(
      ",\n  \"action\": {\"coords\": [\"x\", \"y\"], \"fields\": {\"a\": [\"1\", \"0\"], "
      "\"b\": [\"0\", \"1\"]}}",
      ",\n  \"volume\": \"1\"");
  expect_input_error(no_action, errcode::schema, "requires an action");
  expect_input_error(patched("\"name\": \"probe\"",
                             "\"name\": \"probe\", \"expect\": {\"zzz\": \"pass\"}"),
                     errcode::schema, "expect: unknown check 'zzz'");
  expect_input_error(patched("\"name\": \"probe\"",
                             "\"name\": \"probe\", \"expect\": {\"yb\": \"great\"}"),
                     errcode::schema, "expect: unknown verdict 'great'");
}

TEST_CASE("pipeline honors every declared expectation") {
  for (const auto& name : kFixtures) {
    CAPTURE(name);
    ProblemSpec spec = parse_problem(fixture_text(name));
    Report report = run_pipeline(spec, {});
    CHECK(report.problem == name);
    CHECK(report.results.size() == check_names().size());
    CHECK(report_exit_code(report) == 0);
    for (std::size_t i = 0; i < report.results.size(); ++i) {
      const CheckResult& res = report.results[i];
      CHECK(res.check == check_names()[i]);
      CHECK(!res.detail.empty());
      if (res.verdict == Verdict::fail) CHECK(!res.witness.empty());
      if (res.expected) CHECK(*res.expected == verdict_name(res.verdict));
    }
  }

  auto flat = verdict_map(run_pipeline(parse_problem(fixture_text("translations-r2")), {}));
  for (const auto& [check, v] : flat) CHECK(v == Verdict::pass);

  auto bare = verdict_map(run_pipeline(parse_problem(fixture_text("oscillator")), {}));
  CHECK(bare["yb"] == Verdict::pass);
  CHECK(bare["unimodular"] == Verdict::pass);
  CHECK(bare["morphism"] == Verdict::skipped);
  CHECK(bare["hawkins"] == Verdict::skipped);

  auto bent = verdict_map(run_pipeline(parse_problem(fixture_text("heisenberg-nonyb")), {}));
  CHECK(bent["yb"] == Verdict::fail);
  CHECK(bent["poisson"] == Verdict::refused);
  CHECK(bent["flatness"] == Verdict::refused);
  CHECK(bent["freeness"] == Verdict::pass);
}

TEST_CASE("selection runs only the named checks and refuses absent data") {
  ProblemSpec flat = parse_problem(fixture_text("translations-r2"));
  RunOptions only_yb;
  only_yb.only = {"yb"};
  Report r = run_pipeline(flat, only_yb);
  REQUIRE(r.results.size() == 1);
  CHECK(r.results[0].check == "yb");
  CHECK(r.results[0].verdict == Verdict::pass);

  // A selected check still sees its dependencies computed.
  RunOptions only_flatness;
  only_flatness.only = {"flatness"};
  r = run_pipeline(flat, only_flatness);
  REQUIRE(r.results.size() == 1);
  CHECK(r.results[0].check == "flatness");
  CHECK(r.results[0].verdict == Verdict::pass);

  // Missing data is a skip by default but a refusal when asked for by name.
  ProblemSpec bare = parse_problem(fixture_text("oscillator"));
  RunOptions only_poisson;
  only_poisson.only = {"poisson"};
  r = run_pipeline(bare, only_poisson);
  REQUIRE(r.results.size() == 1);
  CHECK(r.results[0].verdict == Verdict::refused);
  CHECK(r.results[0].detail.find("requested explicitly") != std::string::npos);

  RunOptions unknown;
  unknown.only = {"nope"};
  try {
    run_pipeline(flat, unknown);
    CHECK(false);
  } catch (const InputError& e) {
    CHECK(e.code == errcode::schema);
    CHECK(std::string(e.what()).find("unknown check 'nope'") != std::string::npos);
  }
}

TEST_CASE("reports serialize deterministically") {
  ProblemSpec spec = parse_problem(fixture_text("heisenberg-nonyb"));
  Report report = run_pipeline(spec, {});
  std::string a = emit_report_json(report, false);
  std::string b = emit_report_json(run_pipeline(spec, {}), false);
  CHECK(a == b);
  CHECK(a.find("\"check\": \"yb\"") != std::string::npos);
  CHECK(a.find("elapsed_ms") == std::string::npos);
  CHECK(emit_report_json(report, true).find("elapsed_ms") != std::string::npos);

  std::string text = emit_report_text(report);
  CHECK(text.find("result: ok") != std::string::npos);
  CHECK(text.find("(as expected)") != std::string::npos);

  // Exit-code policy: expectation mismatches and undeclared failures are 1.
  CHECK(report_exit_code(report) == 0);
  ProblemSpec contradicted = spec;
  contradicted.expect["yb"] = "pass";
  Report bad = run_pipeline(contradicted, {});
  CHECK(report_exit_code(bad) == 1);
  std::string bad_text = emit_report_text(bad);
  CHECK(bad_text.find("(expected pass)") != std::string::npos);
  CHECK(bad_text.find("result: unexpected verdicts") != std::string::npos);

  ProblemSpec undeclared = spec;
  undeclared.expect.clear();
  CHECK(report_exit_code(run_pipeline(undeclared, {})) == 1);

  CHECK(std::string(verdict_name(Verdict::pass)) == "pass");
  CHECK(std::string(verdict_name(Verdict::fail)) == "fail");
  CHECK(std::string(verdict_name(Verdict::skipped)) == "skipped");
  CHECK(std::string(verdict_name(Verdict::refused)) == "refused");
}
