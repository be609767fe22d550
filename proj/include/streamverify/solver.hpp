#pragma once

#include "streamverify/obligations.hpp"
#include "streamverify/smt.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace streamverify {

struct SolverConfig {
  std::string executable = "z3";
  std::vector<std::string> args;
  double timeout_seconds = 60;
  std::string logic = "QF_UFNIRA";

  /// Executable from STREAMVERIFY_SOLVER (else `z3`), with the arguments
  /// that make known solvers read SMT-LIB from stdin.
  static SolverConfig from_environment();
  /// Default stdin arguments for a solver executable name.
  static std::vector<std::string> default_args(const std::string& executable);
};

/// Raw answer of one solver session.
struct QueryResult {
  enum class Answer { Sat, Unsat, Unknown };
  Answer answer = Answer::Unknown;
  /// Filled on sat when requested.
  std::map<std::string, smt::ModelValue> model;
  /// get-value results, in probe order (sat only).
  std::vector<smt::ModelValue> values;
  /// Why the answer is Unknown.
  std::string reason;
  /// Everything the solver printed.
  std::string output;
  double seconds = 0;
};

/// Runs `script` (which must end in `(check-sat)`) in a fresh solver process.
/// On sat, fetches the model and the values of `probes`. Launch failures,
/// timeouts and unparseable replies yield Answer::Unknown.
QueryResult run_query(const std::string& script, const std::vector<std::string>& probes, const SolverConfig& cfg,
                      bool want_model = true);

/// One stream value in a counter-model.
struct ModelCell {
  smt::ModelValue value;
  std::string text;
  /// Constrained by an assertion taken as induction hypothesis.
  bool hypothesis = false;
  /// Defined by a stream equation inside the window.
  bool derived = false;
  /// Absent from the solver model; shown with the sort's default.
  bool unconstrained = false;
};

struct CounterModel {
  std::string obligation;
  ObligationKind kind = ObligationKind::Run;
  std::int64_t n = 0;
  Positions goals;
  /// Identifiers whose implication is falsified.
  std::vector<std::string> failed_ids;
  /// Goal positions whose assertion is false under a true hypothesis.
  Positions failed_goals;
  /// (identifier, goal position) pairs behind the two lists above.
  std::vector<std::pair<std::string, std::int64_t>> failures;
  /// stream → value per position 0..N.
  std::map<std::string, std::vector<ModelCell>> cells;
};

enum class CheckStatus { Valid, Invalid, Unknown };

std::string_view status_name(CheckStatus s);

struct CheckResult {
  CheckStatus status = CheckStatus::Unknown;
  std::optional<CounterModel> model;
  std::string reason;
  std::string output;
  double seconds = 0;
};

/// Validity of an obligation: its negation is handed to the solver.
CheckResult check(const ProofObligation& ob, const SolverConfig& cfg);

/// Position-by-position table; deterministic.
std::string render_counterexample(const CounterModel& cm, const Specification& spec);

}  // namespace streamverify
