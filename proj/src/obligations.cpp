#include "streamverify/obligations.hpp"

#include <algorithm>
#include <sstream>

namespace streamverify {

using smt::TermPtr;

std::string_view kind_name(ObligationKind k) {
  switch (k) {
    case ObligationKind::Begin: return "begin";
    case ObligationKind::Run: return "run";
    case ObligationKind::End: return "end";
    case ObligationKind::Finite: return "finite";
    case ObligationKind::DivCheck: return "divcheck";
    case ObligationKind::Vacuity: return "vacuity";
  }
  return "?";
}

std::optional<FiniteMode> parse_finite_mode(std::string_view text) {
  if (text == "literal") return FiniteMode::Literal;
  if (text == "global") return FiniteMode::Global;
  if (text == "closed") return FiniteMode::Closed;
  return std::nullopt;
}

std::string ProofObligation::name() const {
  switch (kind) {
    case ObligationKind::Begin: return "begin_N" + std::to_string(n);
    case ObligationKind::Finite: return "finite_N" + std::to_string(n);
    case ObligationKind::DivCheck:
      return "divcheck_" + base + "_p" + std::to_string(div_position) + "_d" + std::to_string(div_index);
    case ObligationKind::Vacuity: return "vacuity_" + base;
    default: return std::string(kind_name(kind));
  }
}

std::string ProofObligation::script(std::string_view logic) const {
  std::ostringstream os;
  os << "; " << name() << " (N=" << n << ")\n";
  os << "(set-option :produce-models true)\n";
  os << "(set-logic " << logic << ")\n";
  for (const auto& d : FunctionTable::declarations({formula})) os << d << "\n";
  for (const auto& v : universe->variables())
    os << "(declare-const " << v.term->symbol << " " << smt::sort_name(v.term->sort) << ")\n";
  for (const auto& b : background) os << "(assert " << smt::to_string(b) << ")\n";
  os << "(assert (not " << smt::to_string(formula) << "))\n";
  os << "(check-sat)\n";
  return os.str();
}

namespace {

Positions range(std::int64_t lo, std::int64_t hi) {
  Positions p;
  for (std::int64_t i = std::max<std::int64_t>(lo, 0); i <= hi; ++i) p.push_back(i);
  return p;
}

std::vector<TermPtr> at_positions(const std::vector<ExprPtr>& formulas, const Positions& positions,
                                  const VariableUniverse& u) {
  std::vector<TermPtr> out;
  for (std::int64_t i : positions)
    for (const auto& f : formulas) out.push_back(encode(f, i, u));
  return out;
}

std::vector<TermPtr> equations_at(const Positions& positions, const VariableUniverse& u) {
  std::vector<TermPtr> out;
  for (std::int64_t i : positions)
    for (std::size_t k = 0; k < u.spec().outputs.size(); ++k) out.push_back(equation(k, i, u));
  return out;
}

void append(std::vector<TermPtr>& into, std::vector<TermPtr> more) {
  into.insert(into.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<std::string> variable_names(const std::vector<TermPtr>& terms) {
  std::vector<std::string> names;
  for (const auto& v : smt::free_variables(smt::conjunction(terms)))
    if (std::find(names.begin(), names.end(), v->symbol) == names.end()) names.push_back(v->symbol);
  return names;
}

// θ and ψ of the given identifiers plus the equations, over the template sets.
TermPtr hypothesis(const Specification& spec, const VariableUniverse& u, const TemplateParams& params,
                   const std::vector<std::string>& ids, std::vector<std::string>* assumed_vars = nullptr) {
  std::vector<TermPtr> parts, induction;
  for (const auto& id : ids) append(parts, at_positions(spec.assume(id), params.assumed, u));
  for (const auto& id : ids) append(induction, at_positions(spec.assert_(id), params.hypotheses, u));
  if (assumed_vars) *assumed_vars = variable_names(induction);
  append(parts, induction);
  append(parts, equations_at(params.equations, u));
  return smt::conjunction(std::move(parts));
}

void finish(ProofObligation& ob) {
  std::vector<TermPtr> conjuncts;
  for (const auto& imp : ob.implications) {
    std::vector<TermPtr> goals;
    for (const auto& [pos, g] : imp.goals) goals.push_back(g);
    conjuncts.push_back(smt::implies(imp.hypothesis, smt::conjunction(std::move(goals))));
  }
  ob.formula = smt::conjunction(std::move(conjuncts));
  ob.background = ob.universe->sort_constraints();
  append(ob.background, FunctionTable::axioms({ob.formula}));
}

}  // namespace

std::int64_t run_length(const UnfoldingWindow& w) { return 3 * (w.past + w.future); }
std::int64_t end_length(const UnfoldingWindow& w) { return 3 * w.past + w.future; }
std::int64_t begin_count(const UnfoldingWindow& w) { return std::max<std::int64_t>(1, 2 * (w.past + w.future)); }

TemplateParams begin_params(const UnfoldingWindow& w, std::int64_t n) {
  std::int64_t goal_end = std::max<std::int64_t>(1, std::min<std::int64_t>(n + 1, 2 * w.past));
  return {range(0, n), {}, range(0, n), range(0, goal_end - 1)};
}

TemplateParams run_params(const UnfoldingWindow& w) {
  const std::int64_t n = run_length(w);
  TemplateParams p{range(w.past, n - w.future), range(2 * w.past, n - 2 * w.future),
                   range(2 * w.past, n - 2 * w.future), {3 * w.past}};
  std::erase(p.hypotheses, 3 * w.past);
  return p;
}

TemplateParams end_params(const UnfoldingWindow& w) {
  const std::int64_t n = end_length(w);
  return {range(w.past, n), range(2 * w.past, 3 * w.past - 1), range(2 * w.past, n), range(3 * w.past, n)};
}

ProofObligation instantiate_template(const Specification& spec, ObligationKind kind, std::int64_t n,
                                     const TemplateParams& params) {
  ProofObligation ob;
  ob.kind = kind;
  ob.n = n;
  ob.params = params;
  ob.universe = std::make_shared<VariableUniverse>(spec, n);
  const VariableUniverse& u = *ob.universe;
  for (const auto& id : spec.identifiers()) {
    Implication imp;
    imp.id = id;
    imp.hypothesis = hypothesis(spec, u, params, {id}, &imp.hypothesis_variables);
    for (std::int64_t i : params.goals) imp.goals.emplace_back(i, smt::conjunction(at_positions(spec.assert_(id), {i}, u)));
    ob.implications.push_back(std::move(imp));
  }
  finish(ob);
  return ob;
}

std::vector<ProofObligation> begin_obligations(const Specification& spec, const UnfoldingWindow& w) {
  std::vector<ProofObligation> out;
  for (std::int64_t n = 0; n < begin_count(w); ++n)
    out.push_back(instantiate_template(spec, ObligationKind::Begin, n, begin_params(w, n)));
  return out;
}

ProofObligation run_obligation(const Specification& spec, const UnfoldingWindow& w) {
  return instantiate_template(spec, ObligationKind::Run, run_length(w), run_params(w));
}

ProofObligation end_obligation(const Specification& spec, const UnfoldingWindow& w) {
  return instantiate_template(spec, ObligationKind::End, end_length(w), end_params(w));
}

std::vector<ProofObligation> inductive_obligations(const Specification& spec, const UnfoldingWindow& w) {
  std::vector<ProofObligation> out = begin_obligations(spec, w);
  out.push_back(run_obligation(spec, w));
  out.push_back(end_obligation(spec, w));
  return out;
}

ProofObligation finite_obligation(const Specification& spec, std::int64_t n, FiniteMode mode) {
  const Positions all = range(0, n);
  if (mode == FiniteMode::Closed) return instantiate_template(spec, ObligationKind::Finite, n, {all, {}, all, all});
  ProofObligation ob;
  ob.kind = ObligationKind::Finite;
  ob.n = n;
  ob.params = {all, {}, all, all};
  ob.universe = std::make_shared<VariableUniverse>(spec, n);
  const VariableUniverse& u = *ob.universe;
  for (std::int64_t i = 0; i <= n; ++i)
    for (const auto& id : spec.identifiers()) {
      Implication imp;
      imp.id = id;
      imp.position = i;
      std::vector<TermPtr> parts = at_positions(spec.assume(id), {i}, u);
      append(parts, equations_at(mode == FiniteMode::Literal ? Positions{i} : all, u));
      imp.hypothesis = smt::conjunction(std::move(parts));
      imp.goals.emplace_back(i, smt::conjunction(at_positions(spec.assert_(id), {i}, u)));
      ob.implications.push_back(std::move(imp));
    }
  finish(ob);
  return ob;
}

std::vector<ProofObligation> division_obligations(const Specification& spec, const ProofObligation& base) {
  std::vector<ProofObligation> out;
  auto u = std::make_shared<VariableUniverse>(spec, base.n);
  TermPtr hyp = hypothesis(spec, *u, base.params, spec.identifiers());
  for (std::int64_t p : base.params.goals) {
    std::vector<TermPtr> conditions;
    for (const auto& o : spec.outputs) append(conditions, well_definedness_side_conditions(o.expr, p, *u));
    for (const auto& a : spec.assumptions) append(conditions, well_definedness_side_conditions(a.formula, p, *u));
    for (const auto& a : spec.assertions) append(conditions, well_definedness_side_conditions(a.formula, p, *u));
    for (std::size_t d = 0; d < conditions.size(); ++d) {
      ProofObligation ob;
      ob.kind = ObligationKind::DivCheck;
      ob.n = base.n;
      ob.params = base.params;
      ob.base = base.name();
      ob.div_position = p;
      ob.div_index = d;
      ob.universe = u;
      ob.implications.push_back({"", p, hyp, {{p, conditions[d]}}, {}});
      finish(ob);
      out.push_back(std::move(ob));
    }
  }
  return out;
}

void strengthen(ProofObligation& ob, const std::vector<TermPtr>& facts) {
  for (auto& imp : ob.implications) {
    std::vector<TermPtr> parts = facts;
    parts.push_back(imp.hypothesis);
    imp.hypothesis = smt::conjunction(std::move(parts));
  }
  finish(ob);
}

std::vector<ProofObligation> vacuity_obligations(const Specification& spec, const UnfoldingWindow& w) {
  std::vector<ProofObligation> out;
  const TemplateParams params = run_params(w);
  for (const auto& id : spec.identifiers()) {
    ProofObligation ob;
    ob.kind = ObligationKind::Vacuity;
    ob.n = run_length(w);
    ob.params = params;
    ob.base = id;
    ob.universe = std::make_shared<VariableUniverse>(spec, ob.n);
    ob.implications.push_back({id, std::nullopt, hypothesis(spec, *ob.universe, params, {id}), {{0, smt::boolean(false)}}, {}});
    finish(ob);
    out.push_back(std::move(ob));
  }
  return out;
}

}  // namespace streamverify
