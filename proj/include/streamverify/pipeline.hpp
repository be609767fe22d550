#pragma once

#include "streamverify/interpreter.hpp"
#include "streamverify/solver.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace streamverify {

enum class Verdict { Verified, Refuted, Unknown };

std::string_view verdict_name(Verdict v);

struct VerifyOptions {
  SolverConfig solver = SolverConfig::from_environment();
  bool check_div = false;
  bool check_vacuity = false;
  unsigned jobs = 1;
};

struct ObligationOutcome {
  std::string name;
  ObligationKind kind = ObligationKind::Run;
  std::int64_t n = 0;
  TemplateParams params;
  CheckResult result;
};

struct VerificationReport {
  Verdict verdict = Verdict::Unknown;
  UnfoldingWindow window;
  std::vector<ObligationOutcome> obligations;
  std::vector<std::string> warnings;
  double seconds = 0;

  std::size_t valid_count() const;
};

/// Checks obligations on up to `jobs` concurrent solver sessions; results
/// come back in input order.
std::vector<CheckResult> check_all(const std::vector<ProofObligation>& obligations, const SolverConfig& cfg,
                                   unsigned jobs);

/// Verified iff every outcome is valid; any invalid one refutes; otherwise
/// (some unknown) Unknown. Never Verified with an unknown outcome.
Verdict inductive_verdict(const std::vector<ObligationOutcome>& outcomes);

/// Obligations checked by `verify`: Begin, Run, End and division checks.
std::vector<ProofObligation> verification_obligations(const Specification& spec, const VerifyOptions& options);

/// Well-formedness, windows, obligations, solver, verdict. Throws SpecError
/// for ill-formed specifications.
VerificationReport verify(const Specification& spec, const VerifyOptions& options);

enum class TraceMode { Interpret, Smt };

struct TraceReport {
  std::vector<AnnotationVerdict> verdicts;
  std::vector<TriggerEvent> triggers;

  bool respected() const;
};

/// Replays the trace through the interpreter.
TraceReport check_trace_interpret(const Specification& spec, const Trace& trace);

/// Decides the finite-trace formula with inputs fixed to the trace.
/// Throws std::runtime_error when the solver cannot decide it.
TraceReport check_trace_smt(const Specification& spec, const Trace& trace, const SolverConfig& cfg);

nlohmann::json to_json(const VerificationReport& report, const Specification& spec);
nlohmann::json to_json(const TraceReport& report);

}  // namespace streamverify
