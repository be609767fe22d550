#include "streamverify/ast.hpp"

#include <algorithm>
#include <array>

namespace streamverify {

namespace {

struct OpInfo {
  Op op;
  std::string_view symbol;
  int arity;
};

constexpr std::array<OpInfo, 23> kOps{{
    {Op::Add, "+", 2},      {Op::Sub, "-", 2},       {Op::Mul, "*", 2},
    {Op::Div, "/", 2},      {Op::Neg, "-", 1},       {Op::Not, "!", 1},
    {Op::And, "and", 2},    {Op::Or, "or", 2},       {Op::Implies, "->", 2},
    {Op::Eq, "=", 2},       {Op::Ne, "!=", 2},       {Op::Lt, "<", 2},
    {Op::Le, "<=", 2},      {Op::Gt, ">", 2},        {Op::Ge, ">=", 2},
    {Op::Cast, "cast", 1},  {Op::Abs, "abs", 1},     {Op::Min, "min", 2},
    {Op::Max, "max", 2},    {Op::Sqrt, "sqrt", 1},   {Op::Sin, "sin", 1},
    {Op::Cos, "cos", 1},    {Op::Arctan, "arctan", 1},
}};

const OpInfo& info(Op op) {
  for (const auto& i : kOps)
    if (i.op == op) return i;
  return kOps[0];
}

}  // namespace

std::string_view op_symbol(Op op) { return info(op).symbol; }
int op_arity(Op op) { return info(op).arity; }

bool is_comparison(Op op) {
  return op == Op::Eq || op == Op::Ne || op == Op::Lt || op == Op::Le || op == Op::Gt || op == Op::Ge;
}

bool is_math_function(Op op) {
  return op == Op::Abs || op == Op::Min || op == Op::Max || is_transcendental(op);
}

bool is_transcendental(Op op) {
  return op == Op::Sqrt || op == Op::Sin || op == Op::Cos || op == Op::Arctan;
}

std::optional<Op> function_by_name(std::string_view name) {
  for (Op op : {Op::Cast, Op::Abs, Op::Min, Op::Max, Op::Sqrt, Op::Sin, Op::Cos, Op::Arctan})
    if (op_symbol(op) == name) return op;
  return std::nullopt;
}

ExprPtr Expr::make_bool(bool v, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Constant;
  e->constant.boolean = v;
  e->literal = Literal::Bool;
  e->span = span;
  return e;
}

ExprPtr Expr::make_number(Rational v, Literal lit, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Constant;
  e->constant.number = std::move(v);
  e->literal = lit;
  e->span = span;
  return e;
}

ExprPtr Expr::make_ref(std::string name, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::StreamRef;
  e->name = std::move(name);
  e->span = span;
  return e;
}

ExprPtr Expr::make_ite(ExprPtr c, ExprPtr t, ExprPtr f, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Ite;
  e->args = {std::move(c), std::move(t), std::move(f)};
  e->span = span;
  return e;
}

ExprPtr Expr::make_apply(Op op, std::vector<ExprPtr> args, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Apply;
  e->op = op;
  e->args = std::move(args);
  e->span = span;
  return e;
}

ExprPtr Expr::make_offset(std::string name, std::int64_t k, ExprPtr dflt, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Offset;
  e->name = std::move(name);
  e->offset = k;
  e->args = {std::move(dflt)};
  e->span = span;
  return e;
}

ExprPtr Expr::make_fold(std::string name, std::int64_t from, std::int64_t to, ExprPtr dflt, Op op,
                        SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::RangeFold;
  e->name = std::move(name);
  e->offset = from;
  e->offset_to = to;
  e->op = op;
  e->args = {std::move(dflt)};
  e->span = span;
  return e;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->type != b->type || a->args.size() != b->args.size()) return false;
  switch (a->kind) {
    case Expr::Kind::Constant:
      if (a->constant.boolean != b->constant.boolean || a->constant.number != b->constant.number)
        return false;
      break;
    case Expr::Kind::StreamRef:
      if (a->name != b->name) return false;
      break;
    case Expr::Kind::Ite:
      break;
    case Expr::Kind::Apply:
      if (a->op != b->op) return false;
      break;
    case Expr::Kind::Offset:
      if (a->name != b->name || a->offset != b->offset) return false;
      break;
    case Expr::Kind::RangeFold:
      if (a->name != b->name || a->offset != b->offset || a->offset_to != b->offset_to || a->op != b->op)
        return false;
      break;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

std::vector<std::string> Specification::identifiers() const {
  std::vector<std::string> ids;
  auto add = [&](const std::string& id) {
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  };
  for (const auto& a : assumptions) add(a.id);
  for (const auto& a : assertions) add(a.id);
  return ids;
}

std::vector<ExprPtr> Specification::assume(const std::string& id) const {
  std::vector<ExprPtr> out;
  for (const auto& a : assumptions)
    if (a.id == id) out.push_back(a.formula);
  return out;
}

std::vector<ExprPtr> Specification::assert_(const std::string& id) const {
  std::vector<ExprPtr> out;
  for (const auto& a : assertions)
    if (a.id == id) out.push_back(a.formula);
  return out;
}

const Input* Specification::find_input(const std::string& name) const {
  for (const auto& i : inputs)
    if (i.name == name) return &i;
  return nullptr;
}

const Output* Specification::find_output(const std::string& name) const {
  for (const auto& o : outputs)
    if (o.name == name) return &o;
  return nullptr;
}

std::optional<ValueType> Specification::stream_type(const std::string& name) const {
  if (const auto* i = find_input(name)) return i->type;
  if (const auto* o = find_output(name)) return o->type;
  return std::nullopt;
}

bool Specification::has_stream(const std::string& name) const {
  return find_input(name) != nullptr || find_output(name) != nullptr;
}

std::size_t Specification::output_index(const std::string& name) const {
  for (std::size_t i = 0; i < outputs.size(); ++i)
    if (outputs[i].name == name) return i;
  return outputs.size();
}

namespace {

bool equal_triggers(const std::vector<Trigger>& a, const std::vector<Trigger>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].message != b[i].message || !equal(a[i].condition, b[i].condition)) return false;
  return true;
}

bool equal_annotations(const std::vector<Annotation>& a, const std::vector<Annotation>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].id != b[i].id || !equal(a[i].formula, b[i].formula)) return false;
  return true;
}

}  // namespace

bool equal(const Specification& a, const Specification& b) {
  if (a.inputs.size() != b.inputs.size() || a.outputs.size() != b.outputs.size()) return false;
  for (std::size_t i = 0; i < a.inputs.size(); ++i)
    if (a.inputs[i].name != b.inputs[i].name || a.inputs[i].type != b.inputs[i].type) return false;
  for (std::size_t i = 0; i < a.outputs.size(); ++i)
    if (a.outputs[i].name != b.outputs[i].name || a.outputs[i].type != b.outputs[i].type ||
        !equal(a.outputs[i].expr, b.outputs[i].expr))
      return false;
  return a.math_imported == b.math_imported && equal_triggers(a.triggers, b.triggers) &&
         equal_triggers(a.once_triggers, b.once_triggers) &&
         equal_annotations(a.assumptions, b.assumptions) && equal_annotations(a.assertions, b.assertions);
}

}  // namespace streamverify
