#include "streamverify/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace streamverify {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

std::size_t VerificationReport::valid_count() const {
  std::size_t n = 0;
  for (const auto& o : obligations) n += o.result.status == CheckStatus::Valid;
  return n;
}

std::vector<CheckResult> check_all(const std::vector<ProofObligation>& obligations, const SolverConfig& cfg,
                                   unsigned jobs) {
  std::vector<CheckResult> results(obligations.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < obligations.size(); i = next++) results[i] = check(obligations[i], cfg);
  };
  unsigned count = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(obligations.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
  }
  return results;
}

Verdict inductive_verdict(const std::vector<ObligationOutcome>& outcomes) {
  bool unknown = false;
  for (const auto& o : outcomes) {
    if (o.result.status == CheckStatus::Invalid) return Verdict::Refuted;
    if (o.result.status == CheckStatus::Unknown) unknown = true;
  }
  return unknown ? Verdict::Unknown : Verdict::Verified;
}

std::vector<ProofObligation> verification_obligations(const Specification& spec, const VerifyOptions& options) {
  const UnfoldingWindow w = compute_window(spec);
  std::vector<ProofObligation> obligations = inductive_obligations(spec, w);
  if (options.check_div) {
    const std::size_t base_count = obligations.size();
    for (std::size_t i = 0; i < base_count; ++i)
      for (auto& d : division_obligations(spec, obligations[i])) obligations.push_back(std::move(d));
  }
  return obligations;
}

VerificationReport verify(const Specification& spec, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_well_formed(build_graph(spec));
  VerificationReport report;
  report.window = compute_window(spec);
  if (spec.identifiers().empty())
    report.warnings.push_back("the specification has no assumptions or assertions; it is verified vacuously");

  std::vector<ProofObligation> obligations = verification_obligations(spec, options);
  std::vector<CheckResult> results = check_all(obligations, options.solver, options.jobs);
  for (std::size_t i = 0; i < obligations.size(); ++i)
    report.obligations.push_back(
        {obligations[i].name(), obligations[i].kind, obligations[i].n, obligations[i].params, std::move(results[i])});
  report.verdict = inductive_verdict(report.obligations);

  if (options.check_vacuity) {
    std::vector<ProofObligation> vacuity = vacuity_obligations(spec, report.window);
    std::vector<CheckResult> checks = check_all(vacuity, options.solver, options.jobs);
    for (std::size_t i = 0; i < vacuity.size(); ++i) {
      if (checks[i].status == CheckStatus::Valid)
        report.warnings.push_back("the hypotheses of <" + vacuity[i].base +
                                  "> are contradictory in the run window; its verification is vacuous");
      else if (checks[i].status == CheckStatus::Unknown)
        report.warnings.push_back("vacuity check for <" + vacuity[i].base + "> was inconclusive: " + checks[i].reason);
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool TraceReport::respected() const {
  for (const auto& v : verdicts)
    if (!v.respected()) return false;
  return true;
}

TraceReport check_trace_interpret(const Specification& spec, const Trace& trace) {
  EvaluationResult result = evaluate(spec, trace);
  return {check_annotations(spec, result), result.triggers};
}

namespace {

smt::TermPtr value_term(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return smt::boolean(*b);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return smt::number(*i, smt::Sort::Int);
  return smt::number(to_rational(v), smt::Sort::Real);
}

// Trigger conditions evaluated in the solver's model of the equations with
// the inputs fixed.
std::vector<TriggerEvent> solver_triggers(const Specification& spec, const VariableUniverse& u,
                                          const std::vector<smt::TermPtr>& inputs, const SolverConfig& cfg) {
  std::vector<smt::TermPtr> facts = inputs;
  for (std::size_t k = 0; k < spec.outputs.size(); ++k)
    for (std::int64_t j = 0; j <= u.n(); ++j) facts.push_back(equation(k, j, u));
  std::vector<smt::TermPtr> terms = facts;
  std::vector<std::string> probes;
  for (std::int64_t j = 0; j <= u.n(); ++j)
    for (const auto& t : spec.triggers) {
      terms.push_back(encode(t.condition, j, u));
      probes.push_back(smt::to_string(terms.back()));
    }
  std::ostringstream script;
  script << "(set-option :produce-models true)\n(set-logic " << cfg.logic << ")\n";
  for (const auto& v : u.variables())
    script << "(declare-const " << v.term->symbol << " " << smt::sort_name(v.term->sort) << ")\n";
  for (const auto& d : FunctionTable::declarations(terms)) script << d << "\n";
  for (const auto& c : u.sort_constraints()) script << "(assert " << smt::to_string(c) << ")\n";
  for (const auto& a : FunctionTable::axioms(terms)) script << "(assert " << smt::to_string(a) << ")\n";
  for (const auto& f : facts) script << "(assert " << smt::to_string(f) << ")\n";
  script << "(check-sat)\n";
  QueryResult r = run_query(script.str(), probes, cfg, false);
  if (r.answer != QueryResult::Answer::Sat || r.values.size() != probes.size())
    throw std::runtime_error("solver could not evaluate the triggers: " + r.reason);
  std::vector<TriggerEvent> events;
  std::size_t i = 0;
  for (std::int64_t j = 0; j <= u.n(); ++j)
    for (const auto& t : spec.triggers)
      if (r.values[i++].boolean.value_or(false)) events.push_back({static_cast<std::size_t>(j), t.message});
  return events;
}

}  // namespace

TraceReport check_trace_smt(const Specification& spec, const Trace& trace, const SolverConfig& cfg) {
  validate_trace(spec, trace);
  TraceReport report;
  for (const auto& id : spec.identifiers()) report.verdicts.push_back({id, {}});
  if (trace.length() == 0 || report.verdicts.empty()) return report;

  const auto n = static_cast<std::int64_t>(trace.length()) - 1;
  ProofObligation ob = finite_obligation(spec, n, FiniteMode::Global);
  std::vector<smt::TermPtr> facts;
  for (const auto& in : spec.inputs)
    for (std::int64_t j = 0; j <= n; ++j)
      facts.push_back(smt::equals(ob.universe->at(in.name, j),
                                  value_term(trace.columns.at(in.name)[static_cast<std::size_t>(j)])));
  strengthen(ob, facts);

  CheckResult result = check(ob, cfg);
  if (result.status == CheckStatus::Unknown) throw std::runtime_error("solver could not decide the trace: " + result.reason);
  if (!spec.triggers.empty()) report.triggers = solver_triggers(spec, *ob.universe, facts, cfg);
  if (result.status == CheckStatus::Invalid) {
    if (result.model->failures.empty()) throw std::runtime_error("solver model does not identify the violation");
    for (const auto& [id, pos] : result.model->failures)
      for (auto& v : report.verdicts)
        if (v.id == id) v.violations.push_back(static_cast<std::size_t>(pos));
  }
  return report;
}

namespace {

nlohmann::json positions_json(const Positions& p) { return nlohmann::json(p); }

nlohmann::json counter_model_json(const CounterModel& cm, const Specification& spec) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& [id, pos] : cm.failures) failures.push_back({{"id", id}, {"position", pos}});
  nlohmann::json streams = nlohmann::json::object();
  auto add = [&](const std::string& name) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : cm.cells.at(name))
      cells.push_back(
          {{"value", c.text}, {"hypothesis", c.hypothesis}, {"derived", c.derived}, {"unconstrained", c.unconstrained}});
    streams[name] = cells;
  };
  for (const auto& i : spec.inputs) add(i.name);
  for (const auto& o : spec.outputs) add(o.name);
  return {{"failures", failures}, {"goals", positions_json(cm.goals)}, {"streams", streams}};
}

}  // namespace

nlohmann::json to_json(const VerificationReport& report, const Specification& spec) {
  nlohmann::json obligations = nlohmann::json::array();
  for (const auto& o : report.obligations) {
    nlohmann::json entry = {
        {"name", o.name},
        {"kind", std::string(kind_name(o.kind))},
        {"n", o.n},
        {"status", std::string(status_name(o.result.status))},
        {"seconds", o.result.seconds},
        {"params",
         {{"assumed", positions_json(o.params.assumed)},
          {"hypotheses", positions_json(o.params.hypotheses)},
          {"equations", positions_json(o.params.equations)},
          {"goals", positions_json(o.params.goals)}}},
    };
    if (o.result.status == CheckStatus::Unknown) entry["reason"] = o.result.reason;
    if (o.result.model) entry["counterexample"] = counter_model_json(*o.result.model, spec);
    obligations.push_back(std::move(entry));
  }
  return {
      {"command", "verify"},
      {"verdict", std::string(verdict_name(report.verdict))},
      {"window", {{"past", report.window.past}, {"future", report.window.future}}},
      {"obligations", obligations},
      {"warnings", report.warnings},
      {"seconds", report.seconds},
  };
}

nlohmann::json to_json(const TraceReport& report) {
  nlohmann::json annotations = nlohmann::json::array();
  for (const auto& v : report.verdicts) annotations.push_back({{"id", v.id}, {"violations", v.violations}});
  nlohmann::json triggers = nlohmann::json::array();
  for (const auto& t : report.triggers) triggers.push_back({{"position", t.position}, {"message", t.message}});
  return {
      {"command", "check-trace"},
      {"verdict", report.respected() ? "respected" : "violated"},
      {"annotations", annotations},
      {"triggers", triggers},
  };
}

}  // namespace streamverify
