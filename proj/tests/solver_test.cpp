#include "streamverify/analysis.hpp"
#include "streamverify/pipeline.hpp"
#include "streamverify/solver.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

namespace sv = streamverify;
using sv::testing::load_file;
using sv::testing::source_dir;

namespace {

sv::Specification running() { return load_file(source_dir() / "corpus/running.lola"); }

sv::SolverConfig z3() {
  sv::SolverConfig cfg;
  cfg.executable = "z3";
  cfg.args = sv::SolverConfig::default_args("z3");
  cfg.timeout_seconds = 60;
  return cfg;
}

// A stand-in solver: a shell snippet that ignores its input.
sv::SolverConfig fake(const std::string& snippet, double timeout = 10) {
  sv::SolverConfig cfg;
  cfg.executable = "sh";
  cfg.args = {"-c", "cat > /dev/null & " + snippet};
  cfg.timeout_seconds = timeout;
  return cfg;
}

sv::ProofObligation trivially_false() {
  auto spec = sv::load_specification("input a: Bool\nassert <x> false");
  return sv::run_obligation(spec, {0, 0});
}

}  // namespace

TEST(SolverConfig, DefaultArguments) {
  EXPECT_EQ(sv::SolverConfig::default_args("z3"), (std::vector<std::string>{"-in"}));
  EXPECT_EQ(sv::SolverConfig::default_args("/opt/bin/z3"), (std::vector<std::string>{"-in"}));
  EXPECT_FALSE(sv::SolverConfig::default_args("cvc5").empty());
  EXPECT_TRUE(sv::SolverConfig::default_args("my-solver").empty());
}

TEST(RunQuery, SatWithModelAndValues) {
  auto r = sv::run_query("(declare-const x Int)\n(assert (> x 41))\n(assert (< x 43))\n(check-sat)\n", {"x", "(+ x 1)"},
                         z3());
  ASSERT_EQ(r.answer, sv::QueryResult::Answer::Sat);
  ASSERT_TRUE(r.model.count("x"));
  EXPECT_EQ(*r.model["x"].number, 42);
  ASSERT_EQ(r.values.size(), 2u);
  EXPECT_EQ(*r.values[1].number, 43);
}

TEST(RunQuery, Unsat) {
  auto r = sv::run_query("(declare-const x Int)\n(assert (> x x))\n(check-sat)\n", {}, z3());
  EXPECT_EQ(r.answer, sv::QueryResult::Answer::Unsat);
}

TEST(RunQuery, MissingExecutableIsUnknown) {
  sv::SolverConfig cfg;
  cfg.executable = "/nonexistent/solver";
  auto r = sv::run_query("(check-sat)\n", {}, cfg);
  EXPECT_EQ(r.answer, sv::QueryResult::Answer::Unknown);
  EXPECT_FALSE(r.reason.empty());
}

TEST(RunQuery, TimeoutIsUnknown) {
  auto r = sv::run_query("(check-sat)\n", {}, fake("sleep 30", 0.5));
  EXPECT_EQ(r.answer, sv::QueryResult::Answer::Unknown);
  EXPECT_LT(r.seconds, 5);
}

TEST(Check, GarbageIsNeverValid) {
  for (const char* reply : {"echo garbage", "echo '(error \"boom\")'; echo unsat", "echo unsat; echo '(error \"x\")'",
                            "echo", "exit 1", "echo '((('"}) {
    auto result = sv::check(trivially_false(), fake(reply));
    EXPECT_EQ(result.status, sv::CheckStatus::Unknown) << reply;
  }
}

TEST(Check, UnparseableModelIsUnknown) {
  auto result = sv::check(trivially_false(), fake("echo sat; echo '(model (define-fun'"));
  EXPECT_NE(result.status, sv::CheckStatus::Valid);
}

TEST(Check, TrueImpliesFalseIsInvalid) {
  auto result = sv::check(trivially_false(), z3());
  ASSERT_EQ(result.status, sv::CheckStatus::Invalid);
  ASSERT_TRUE(result.model);
  EXPECT_EQ(result.model->failed_ids, (std::vector<std::string>{"x"}));
  EXPECT_EQ(result.model->failed_goals, (sv::Positions{0}));
}

TEST(Check, RunningExampleObligationsValid) {
  auto spec = running();
  for (const auto& ob : sv::inductive_obligations(spec, sv::compute_window(spec)))
    EXPECT_EQ(sv::check(ob, z3()).status, sv::CheckStatus::Valid) << ob.name();
}

TEST(Check, SumRunCounterModel) {
  auto spec = load_file(source_dir() / "corpus/sum.lola");
  auto w = sv::compute_window(spec);
  auto result = sv::check(sv::run_obligation(spec, w), z3());
  ASSERT_EQ(result.status, sv::CheckStatus::Invalid);
  const auto& cm = *result.model;
  EXPECT_EQ(cm.failed_goals, (sv::Positions{3}));
  const auto& cell = cm.cells.at("sum").at(2);
  EXPECT_TRUE(cell.hypothesis);
  ASSERT_TRUE(cell.value.number);
  EXPECT_GE(*cell.value.number, 91);
  EXPECT_LE(*cell.value.number, 100);
}

TEST(Check, ModelCoversEveryVariable) {
  auto spec = load_file(source_dir() / "corpus/ctrl_output_buggy.lola");
  auto w = sv::compute_window(spec);
  auto ob = sv::run_obligation(spec, w);
  auto result = sv::check(ob, z3());
  ASSERT_EQ(result.status, sv::CheckStatus::Invalid);
  for (const auto& v : ob.universe->variables()) {
    const auto& column = result.model->cells.at(v.stream);
    ASSERT_EQ(column.size(), static_cast<std::size_t>(ob.n + 1));
    EXPECT_FALSE(column[static_cast<std::size_t>(v.position)].text.empty());
  }
}

TEST(Check, UnconstrainedCellsGetDefaults) {
  // A solver that answers sat with an empty model.
  auto result = sv::check(trivially_false(), fake("echo sat; echo '()'; echo '()'"));
  ASSERT_EQ(result.status, sv::CheckStatus::Invalid);
  const auto& cell = result.model->cells.at("a").at(0);
  EXPECT_TRUE(cell.unconstrained);
  EXPECT_EQ(cell.text, "false");
}

TEST(Render, DeterministicAndMarked) {
  auto spec = load_file(source_dir() / "corpus/sum.lola");
  auto result = sv::check(sv::run_obligation(spec, sv::compute_window(spec)), z3());
  ASSERT_TRUE(result.model);
  std::string a = sv::render_counterexample(*result.model, spec);
  std::string b = sv::render_counterexample(*result.model, spec);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("‡"), std::string::npos);
  EXPECT_NE(a.find("> 3"), std::string::npos);
  EXPECT_NE(a.find("<a1>"), std::string::npos);
}

TEST(Render, ExactRationals) {
  auto spec = sv::load_specification("input x: Float64\nassert <a> x * 3.0 != 1.0");
  auto result = sv::check(sv::run_obligation(spec, {0, 0}), z3());
  ASSERT_TRUE(result.model);
  EXPECT_EQ(result.model->cells.at("x")[0].text, "1/3");
}

TEST(Finite, RunningExampleAgreesWithExhaustiveInterpretation) {
  auto spec = running();
  EXPECT_EQ(sv::check(sv::finite_obligation(spec, 2), z3()).status, sv::CheckStatus::Valid);
  for (int bits = 0; bits < 8; ++bits) {
    sv::Trace t;
    for (int i = 0; i < 3; ++i) t.columns["reset"].push_back(static_cast<bool>(bits >> i & 1));
    EXPECT_TRUE(sv::check_annotations(spec, t)[0].respected()) << bits;
  }
}

TEST(Finite, OffsetFreeEquationForcesGoal) {
  auto spec = sv::load_specification("input a: Int64\noutput o := a\nassert <x> o == a");
  EXPECT_EQ(sv::check(sv::finite_obligation(spec, 0), z3()).status, sv::CheckStatus::Valid);
}

TEST(Pipeline, VerdictAggregation) {
  auto outcome = [](sv::CheckStatus s) {
    sv::ObligationOutcome o;
    o.result.status = s;
    return o;
  };
  using S = sv::CheckStatus;
  EXPECT_EQ(sv::inductive_verdict({outcome(S::Valid), outcome(S::Valid)}), sv::Verdict::Verified);
  EXPECT_EQ(sv::inductive_verdict({outcome(S::Valid), outcome(S::Unknown)}), sv::Verdict::Unknown);
  EXPECT_EQ(sv::inductive_verdict({outcome(S::Unknown), outcome(S::Invalid)}), sv::Verdict::Refuted);
  EXPECT_EQ(sv::inductive_verdict({}), sv::Verdict::Verified);
}

TEST(Pipeline, ParallelMatchesSequential) {
  auto spec = load_file(source_dir() / "corpus/appendix/imu_output.lola");
  auto obligations = sv::inductive_obligations(spec, sv::compute_window(spec));
  auto one = sv::check_all(obligations, z3(), 1);
  auto four = sv::check_all(obligations, z3(), 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].status, four[i].status);
}

TEST(Pipeline, VerifyRejectsIllFormed) {
  sv::VerifyOptions options;
  options.solver = z3();
  EXPECT_THROW(sv::verify(sv::load_specification("output a := a"), options), sv::SpecError);
}

TEST(Pipeline, VacuityWarning) {
  sv::VerifyOptions options;
  options.solver = z3();
  options.check_vacuity = true;
  auto spec = sv::load_specification("input a: Int64\nassume <x> a > 0 and a < 0\nassert <x> a == 5");
  auto report = sv::verify(spec, options);
  EXPECT_EQ(report.verdict, sv::Verdict::Verified);
  ASSERT_EQ(report.warnings.size(), 1u);
  EXPECT_NE(report.warnings[0].find("<x>"), std::string::npos);
}

TEST(Pipeline, DivisionChecksRefuteUnguardedDivision) {
  sv::VerifyOptions options;
  options.solver = z3();
  options.check_div = true;
  auto spec = sv::load_specification("input a: Int64\noutput q := 10 / a\nassert <x> true");
  EXPECT_EQ(sv::verify(spec, options).verdict, sv::Verdict::Refuted);
  auto guarded = sv::load_specification("input a: Int64\nassume <x> a > 0\noutput q := 10 / a\nassert <x> true");
  EXPECT_EQ(sv::verify(guarded, options).verdict, sv::Verdict::Verified);
}

TEST(Pipeline, TraceModesAgreeOnExamples) {
  auto spec = running();
  sv::Trace t;
  t.columns["reset"] = {true, false, false, false, true};
  auto a = sv::check_trace_interpret(spec, t);
  auto b = sv::check_trace_smt(spec, t, z3());
  EXPECT_EQ(a.verdicts[0].violations, b.verdicts[0].violations);

  auto frozen = load_file(source_dir() / "corpus/imu_frozen_buggy.lola", {{"eps", "0.1"}});
  sv::Trace z;
  z.columns["ax"] = {0.0, 1.0, 2.5};
  auto c = sv::check_trace_interpret(frozen, z);
  auto d = sv::check_trace_smt(frozen, z, z3());
  EXPECT_EQ(c.verdicts[0].violations, (std::vector<std::size_t>{0}));
  EXPECT_EQ(d.verdicts[0].violations, (std::vector<std::size_t>{0}));
}

TEST(Pipeline, JsonShape) {
  sv::VerifyOptions options;
  options.solver = z3();
  auto spec = load_file(source_dir() / "corpus/sum.lola");
  auto j = sv::to_json(sv::verify(spec, options), spec);
  EXPECT_EQ(j["verdict"], "refuted");
  EXPECT_EQ(j["window"]["past"], 1);
  EXPECT_EQ(j["obligations"].size(), 4u);
  EXPECT_EQ(j["obligations"][2]["name"], "run");
  EXPECT_EQ(j["obligations"][2]["counterexample"]["failures"][0]["position"], 3);
}
