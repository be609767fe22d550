#pragma once

#include "streamverify/analysis.hpp"
#include "streamverify/encoder.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace streamverify {

using Positions = std::vector<std::int64_t>;

/// Position sets of the template formula, each within 0..N.
struct TemplateParams {
  Positions assumed;     // assumptions θ
  Positions hypotheses;  // assertions ψ taken as induction hypothesis
  Positions equations;   // stream equations
  Positions goals;       // assertions ψ to prove

  bool operator==(const TemplateParams&) const = default;
};

enum class ObligationKind { Begin, Run, End, Finite, DivCheck, Vacuity };

std::string_view kind_name(ObligationKind k);

/// How the finite-trace formula scopes equations and assumptions.
enum class FiniteMode {
  /// Per position i: θ(i) and the equations at i imply ψ(i).
  Literal,
  /// Per position i: θ(i) and the equations at every position imply ψ(i).
  Global,
  /// θ and equations at every position imply ψ at every position.
  Closed,
};

std::optional<FiniteMode> parse_finite_mode(std::string_view text);

/// One implication of the obligation: hypothesis → ⋀ goals.
struct Implication {
  std::string id;
  /// Position for per-position finite formulas.
  std::optional<std::int64_t> position;
  smt::TermPtr hypothesis;
  /// (goal position, goal formula).
  std::vector<std::pair<std::int64_t, smt::TermPtr>> goals;
  /// Solver variables constrained by induction-hypothesis assertions.
  std::vector<std::string> hypothesis_variables;
};

struct ProofObligation {
  ObligationKind kind = ObligationKind::Run;
  std::int64_t n = 0;
  TemplateParams params;
  /// DivCheck: refined obligation, goal position and division index.
  /// Vacuity: the identifier checked.
  std::string base;
  std::int64_t div_position = 0;
  std::size_t div_index = 0;

  std::shared_ptr<const VariableUniverse> universe;
  std::vector<Implication> implications;
  /// The closed formula ⋀ (hypothesis → ⋀ goals).
  smt::TermPtr formula;
  /// Background facts: UInt64 ranges and function range axioms.
  std::vector<smt::TermPtr> background;

  /// File stem: begin_N3, run, end, finite_N2, divcheck_run_p3_d0.
  std::string name() const;
  /// Complete SMT-LIB script asserting the negation, ending with (check-sat).
  std::string script(std::string_view logic = "QF_UFNIRA") const;
};

TemplateParams begin_params(const UnfoldingWindow& w, std::int64_t n);
TemplateParams run_params(const UnfoldingWindow& w);
TemplateParams end_params(const UnfoldingWindow& w);
std::int64_t run_length(const UnfoldingWindow& w);
std::int64_t end_length(const UnfoldingWindow& w);
std::int64_t begin_count(const UnfoldingWindow& w);

ProofObligation instantiate_template(const Specification& spec, ObligationKind kind, std::int64_t n,
                                     const TemplateParams& params);

std::vector<ProofObligation> begin_obligations(const Specification& spec, const UnfoldingWindow& w);
ProofObligation run_obligation(const Specification& spec, const UnfoldingWindow& w);
ProofObligation end_obligation(const Specification& spec, const UnfoldingWindow& w);
/// Begin, Run and End in that order.
std::vector<ProofObligation> inductive_obligations(const Specification& spec, const UnfoldingWindow& w);

ProofObligation finite_obligation(const Specification& spec, std::int64_t n, FiniteMode mode = FiniteMode::Closed);

/// Divisor-nonzero checks at each goal position of `base`, under its hypotheses.
std::vector<ProofObligation> division_obligations(const Specification& spec, const ProofObligation& base);

/// Conjoins `facts` to every hypothesis of `ob` and rebuilds its formula.
void strengthen(ProofObligation& ob, const std::vector<smt::TermPtr>& facts);

/// Per identifier: "the Run hypotheses are contradictory". Valid means the
/// identifier's Run obligation holds vacuously.
std::vector<ProofObligation> vacuity_obligations(const Specification& spec, const UnfoldingWindow& w);

}  // namespace streamverify
