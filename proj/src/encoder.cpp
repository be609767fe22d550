#include "streamverify/encoder.hpp"

#include <set>
#include <stdexcept>

namespace streamverify {

using smt::Sort;
using smt::TermPtr;

smt::Sort sort_of(ValueType t) {
  if (t == ValueType::Bool) return Sort::Bool;
  return is_float(t) ? Sort::Real : Sort::Int;
}

std::string variable_name(const std::string& stream, std::int64_t position) {
  return stream + "@" + std::to_string(position);
}

std::optional<std::pair<std::string, std::int64_t>> parse_variable_name(const std::string& name) {
  auto at = name.rfind('@');
  if (at == std::string::npos || at == 0 || at + 1 == name.size()) return std::nullopt;
  std::int64_t pos = 0;
  for (std::size_t i = at + 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
    pos = pos * 10 + (name[i] - '0');
  }
  return std::make_pair(name.substr(0, at), pos);
}

VariableUniverse::VariableUniverse(const Specification& spec, std::int64_t n) : spec_(&spec), n_(n) {
  auto add = [&](const std::string& name, ValueType type, bool input) {
    first_[name] = variables_.size();
    for (std::int64_t j = 0; j <= n; ++j)
      variables_.push_back({name, j, type, input, smt::variable(variable_name(name, j), sort_of(type))});
  };
  for (const auto& i : spec.inputs) add(i.name, i.type, true);
  for (const auto& o : spec.outputs) add(o.name, o.type, false);
}

const TermPtr& VariableUniverse::at(const std::string& stream, std::int64_t position) const {
  auto it = first_.find(stream);
  if (it == first_.end() || position < 0 || position > n_)
    throw std::out_of_range("no solver variable for " + variable_name(stream, position));
  return variables_[it->second + static_cast<std::size_t>(position)].term;
}

std::vector<TermPtr> VariableUniverse::sort_constraints() const {
  std::vector<TermPtr> out;
  for (const auto& v : variables_)
    if (v.type == ValueType::UInt64) out.push_back(smt::app(">=", Sort::Bool, {v.term, smt::number(0, Sort::Int)}));
  return out;
}

std::string FunctionTable::symbol(Op op) { return std::string(prefix) + std::string(op_symbol(op)); }

std::vector<std::string> FunctionTable::declarations(const std::vector<TermPtr>& terms) {
  std::set<std::string> symbols;
  for (const auto& t : terms)
    for (const auto& a : smt::applications(t, prefix)) symbols.insert(a->symbol);
  std::vector<std::string> out;
  for (const auto& s : symbols) out.push_back("(declare-fun " + s + " (Real) Real)");
  return out;
}

std::vector<TermPtr> FunctionTable::axioms(const std::vector<TermPtr>& terms) {
  // pi/2 with pi = 3.1415926535.
  const Rational half_pi = Rational(31415926535, 20000000000);
  auto real = [](Rational r) { return smt::number(std::move(r), Sort::Real); };
  auto cmp = [](const char* op, TermPtr a, TermPtr b) { return smt::app(op, Sort::Bool, {std::move(a), std::move(b)}); };
  std::vector<TermPtr> out;
  std::set<std::string> seen;
  for (const auto& t : terms)
    for (const auto& a : smt::applications(t, prefix)) {
      if (!seen.insert(smt::to_string(a)).second) continue;
      if (a->symbol == symbol(Op::Sqrt)) {
        out.push_back(cmp(">=", a, real(0)));
      } else if (a->symbol == symbol(Op::Arctan)) {
        out.push_back(cmp("<", real(-half_pi), a));
        out.push_back(cmp("<", a, real(half_pi)));
      } else {
        out.push_back(cmp("<=", real(-1), a));
        out.push_back(cmp("<=", a, real(1)));
      }
    }
  return out;
}

namespace {

std::string_view smt_symbol(Op op) {
  switch (op) {
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Implies: return "=>";
    case Op::Not: return "not";
    case Op::Eq: return "=";
    default: return op_symbol(op);
  }
}

TermPtr apply(const Expr& e, std::vector<TermPtr> args) {
  const Sort sort = sort_of(*e.type);
  switch (e.op) {
    case Op::Neg:
      return smt::app("-", sort, std::move(args));
    case Op::Ne:
      return smt::negation(smt::equals(args[0], args[1]));
    case Op::Div:
      if (sort == Sort::Int) {
        // Truncating division expressed with the solver's Euclidean div.
        const TermPtr& a = args[0];
        const TermPtr& b = args[1];
        TermPtr nonneg = smt::app(">=", Sort::Bool, {a, smt::number(0, Sort::Int)});
        TermPtr neg_a = smt::app("-", Sort::Int, {a});
        return smt::app("ite", Sort::Int,
                        {nonneg, smt::app("div", Sort::Int, {a, b}),
                         smt::app("-", Sort::Int, {smt::app("div", Sort::Int, {neg_a, b})})});
      }
      return smt::app("/", sort, std::move(args));
    case Op::Cast:
      if (sort == Sort::Real && args[0]->sort == Sort::Int) return smt::app("to_real", Sort::Real, std::move(args));
      return args[0];
    case Op::Abs: {
      TermPtr zero = smt::number(0, sort);
      return smt::app("ite", sort,
                      {smt::app("<", Sort::Bool, {args[0], zero}), smt::app("-", sort, {args[0]}), args[0]});
    }
    case Op::Min:
    case Op::Max:
      return smt::app("ite", sort,
                      {smt::app(e.op == Op::Min ? "<=" : ">=", Sort::Bool, {args[0], args[1]}), args[0], args[1]});
    default:
      break;
  }
  if (is_transcendental(e.op)) return smt::app(FunctionTable::symbol(e.op), Sort::Real, std::move(args));
  return smt::app(std::string(smt_symbol(e.op)), sort, std::move(args));
}

void collect_side_conditions(const ExprPtr& e, std::int64_t j, const VariableUniverse& u,
                             std::vector<TermPtr>& path, std::vector<TermPtr>& out) {
  switch (e->kind) {
    case Expr::Kind::Constant:
    case Expr::Kind::StreamRef:
      return;
    case Expr::Kind::Offset: {
      std::int64_t target = j + e->offset;
      if (target < 0 || target > u.n()) collect_side_conditions(e->default_value(), j, u, path, out);
      return;
    }
    case Expr::Kind::RangeFold:
      throw std::logic_error("range expressions must be desugared before encoding");
    case Expr::Kind::Ite: {
      collect_side_conditions(e->cond(), j, u, path, out);
      TermPtr c = encode(e->cond(), j, u);
      path.push_back(c);
      collect_side_conditions(e->then_branch(), j, u, path, out);
      path.back() = smt::negation(c);
      collect_side_conditions(e->else_branch(), j, u, path, out);
      path.pop_back();
      return;
    }
    case Expr::Kind::Apply:
      break;
  }
  if (e->op == Op::And || e->op == Op::Or || e->op == Op::Implies) {
    collect_side_conditions(e->args[0], j, u, path, out);
    TermPtr lhs = encode(e->args[0], j, u);
    path.push_back(e->op == Op::Or ? smt::negation(lhs) : lhs);
    collect_side_conditions(e->args[1], j, u, path, out);
    path.pop_back();
    return;
  }
  for (const auto& a : e->args) collect_side_conditions(a, j, u, path, out);
  if (e->op == Op::Div) {
    const ExprPtr& divisor = e->args[1];
    TermPtr nonzero = smt::negation(smt::equals(encode(divisor, j, u), smt::number(0, sort_of(*divisor->type))));
    out.push_back(path.empty() ? nonzero : smt::implies(smt::conjunction(path), nonzero));
  }
}

}  // namespace

TermPtr encode(const ExprPtr& e, std::int64_t j, const VariableUniverse& u) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      if (*e->type == ValueType::Bool) return smt::boolean(e->constant.boolean);
      return smt::number(e->constant.number, sort_of(*e->type));
    case Expr::Kind::StreamRef:
      return u.at(e->name, j);
    case Expr::Kind::Offset: {
      std::int64_t target = j + e->offset;
      if (target >= 0 && target <= u.n()) return u.at(e->name, target);
      return encode(e->default_value(), j, u);
    }
    case Expr::Kind::Ite:
      return smt::app("ite", sort_of(*e->type),
                      {encode(e->cond(), j, u), encode(e->then_branch(), j, u), encode(e->else_branch(), j, u)});
    case Expr::Kind::RangeFold:
      throw std::logic_error("range expressions must be desugared before encoding");
    case Expr::Kind::Apply:
      break;
  }
  std::vector<TermPtr> args;
  for (const auto& a : e->args) args.push_back(encode(a, j, u));
  return apply(*e, std::move(args));
}

TermPtr equation(std::size_t k, std::int64_t j, const VariableUniverse& u) {
  const Output& out = u.spec().outputs.at(k);
  return smt::equals(u.at(out.name, j), encode(out.expr, j, u));
}

std::vector<TermPtr> well_definedness_side_conditions(const ExprPtr& e, std::int64_t j, const VariableUniverse& u) {
  std::vector<TermPtr> path, out;
  collect_side_conditions(e, j, u, path, out);
  return out;
}

}  // namespace streamverify
