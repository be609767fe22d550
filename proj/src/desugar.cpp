#include "streamverify/frontend.hpp"

#include <set>

namespace streamverify {

namespace {

ExprPtr typed(ExprPtr e, ValueType t) {
  auto copy = std::make_shared<Expr>(*e);
  copy->type = t;
  return copy;
}

ExprPtr zero_of(ValueType t, SourceSpan span) {
  return typed(Expr::make_number(0, is_float(t) ? Expr::Literal::Decimal : Expr::Literal::Integer, span), t);
}

ExprPtr apply(Op op, std::vector<ExprPtr> args, ValueType t, SourceSpan span) {
  return typed(Expr::make_apply(op, std::move(args), span), t);
}

ExprPtr access(const std::string& name, std::int64_t k, const ExprPtr& dflt, ValueType t, SourceSpan span) {
  if (k == 0) return typed(Expr::make_ref(name, span), t);
  return typed(Expr::make_offset(name, k, dflt, span), t);
}

ExprPtr rewrite(const ExprPtr& e) {
  std::vector<ExprPtr> args;
  bool changed = false;
  for (const auto& a : e->args) {
    args.push_back(rewrite(a));
    changed |= args.back() != a;
  }
  const ValueType t = *e->type;
  switch (e->kind) {
    case Expr::Kind::Offset:
      if (e->offset == 0) return typed(Expr::make_ref(e->name, e->span), t);
      break;
    case Expr::Kind::RangeFold: {
      if (e->offset >= e->offset_to)
        throw SpecError(e->span, "empty offset range " + std::to_string(e->offset) + ".." +
                                     std::to_string(e->offset_to) + " (lower bound must be below upper bound)");
      const ExprPtr& dflt = args[0];
      const ValueType elem = *dflt->type;
      ExprPtr acc;
      if (is_comparison(e->op)) {
        // a[x..y] with `<` means a[x] < a[x+1] and ... and a[y-1] < a[y].
        for (std::int64_t k = e->offset; k < e->offset_to; ++k) {
          ExprPtr link = apply(e->op, {access(e->name, k, dflt, elem, e->span), access(e->name, k + 1, dflt, elem, e->span)},
                               ValueType::Bool, e->span);
          acc = acc ? apply(Op::And, {acc, link}, ValueType::Bool, e->span) : link;
        }
      } else {
        for (std::int64_t k = e->offset; k <= e->offset_to; ++k) {
          ExprPtr item = access(e->name, k, dflt, elem, e->span);
          acc = acc ? apply(e->op, {acc, item}, t, e->span) : item;
        }
      }
      return acc;
    }
    case Expr::Kind::Apply:
      if (e->op == Op::Abs) {
        const ExprPtr& x = args[0];
        return typed(Expr::make_ite(apply(Op::Lt, {x, zero_of(t, e->span)}, ValueType::Bool, e->span),
                                    apply(Op::Neg, {x}, t, e->span), x, e->span),
                     t);
      }
      if (e->op == Op::Min || e->op == Op::Max) {
        Op cmp = e->op == Op::Min ? Op::Le : Op::Ge;
        return typed(Expr::make_ite(apply(cmp, {args[0], args[1]}, ValueType::Bool, e->span), args[0], args[1],
                                    e->span),
                     t);
      }
      break;
    default:
      break;
  }
  if (!changed) return e;
  auto copy = std::make_shared<Expr>(*e);
  copy->args = std::move(args);
  return copy;
}

}  // namespace

Specification desugar(const Specification& spec) {
  Specification out = spec;
  for (auto& o : out.outputs) o.expr = rewrite(o.expr);
  for (auto& t : out.triggers) t.condition = rewrite(t.condition);
  for (auto& a : out.assumptions) a.formula = rewrite(a.formula);
  for (auto& a : out.assertions) a.formula = rewrite(a.formula);

  // trigger_once φ: a latch `seen := φ or seen[-1, false]` and a plain
  // trigger on `φ and not seen[-1, false]`.
  std::set<std::string> taken;
  for (const auto& i : out.inputs) taken.insert(i.name);
  for (const auto& o : out.outputs) taken.insert(o.name);
  std::size_t counter = 0;
  for (const auto& once : spec.once_triggers) {
    std::string name;
    do name = "once_seen_" + std::to_string(counter++);
    while (taken.count(name));
    taken.insert(name);
    ExprPtr phi = rewrite(once.condition);
    SourceSpan span = phi->span;
    ExprPtr before = typed(Expr::make_offset(name, -1, typed(Expr::make_bool(false, span), ValueType::Bool), span),
                           ValueType::Bool);
    out.outputs.push_back({name, ValueType::Bool, apply(Op::Or, {phi, before}, ValueType::Bool, span)});
    out.triggers.push_back(
        {apply(Op::And, {phi, apply(Op::Not, {before}, ValueType::Bool, span)}, ValueType::Bool, span),
         once.message});
  }
  out.once_triggers.clear();
  return out;
}

}  // namespace streamverify
