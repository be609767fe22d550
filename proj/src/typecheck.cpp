#include "streamverify/frontend.hpp"

#include <unordered_map>

namespace streamverify {

namespace {

// Sets of candidate types as bit masks.
using TypeSet = unsigned;

constexpr TypeSet bit(ValueType t) { return 1u << static_cast<unsigned>(t); }
constexpr TypeSet kBool = bit(ValueType::Bool);
constexpr TypeSet kFloat = bit(ValueType::Float32) | bit(ValueType::Float64);
constexpr TypeSet kInteger = bit(ValueType::Int32) | bit(ValueType::Int64) | bit(ValueType::UInt64);
constexpr TypeSet kNumeric = kFloat | kInteger;
constexpr TypeSet kAny = kNumeric | kBool;

std::string describe(TypeSet set) {
  for (ValueType t : {ValueType::Bool, ValueType::Int32, ValueType::Int64, ValueType::UInt64, ValueType::Float32,
                      ValueType::Float64})
    if (set == bit(t)) return std::string(type_name(t));
  if (set == kFloat) return "a float type";
  if (set == kInteger) return "an integer type";
  if (set == kNumeric) return "a numeric type";
  if (set == kAny) return "any type";
  std::string s = "one of {";
  bool first = true;
  for (ValueType t : {ValueType::Bool, ValueType::Int32, ValueType::Int64, ValueType::UInt64, ValueType::Float32,
                      ValueType::Float64})
    if (set & bit(t)) {
      s += (first ? "" : ", ") + std::string(type_name(t));
      first = false;
    }
  return s + "}";
}

/// Union-find over type variables; each class is a set of admissible types,
/// with an optional fallback taken from literals.
class TypeSolver {
 public:
  int fresh(TypeSet allowed, SourceSpan origin, std::optional<ValueType> fallback = std::nullopt) {
    parent_.push_back(static_cast<int>(parent_.size()));
    classes_.push_back({allowed, fallback, origin});
    return parent_.back();
  }

  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }

  void restrict(int v, TypeSet allowed, SourceSpan where) {
    int r = find(v);
    TypeSet merged = classes_[r].allowed & allowed;
    if (!merged)
      throw SpecError(where, "type mismatch: expected " + describe(allowed) + " but found " +
                                 describe(classes_[r].allowed) + " (constrained at " +
                                 to_string(classes_[r].origin) + ")");
    classes_[r].allowed = merged;
    fix_fallback(classes_[r], std::nullopt);
  }

  void unify(int a, int b, SourceSpan where) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return;
    TypeSet merged = classes_[ra].allowed & classes_[rb].allowed;
    if (!merged)
      throw SpecError(where, "type mismatch: " + describe(classes_[ra].allowed) + " (from " +
                                 to_string(classes_[ra].origin) + ") vs " + describe(classes_[rb].allowed) +
                                 " (from " + to_string(classes_[rb].origin) + ")");
    parent_[rb] = ra;
    classes_[ra].allowed = merged;
    fix_fallback(classes_[ra], classes_[rb].fallback);
  }

  std::optional<ValueType> resolve(int v) {
    const Class& c = classes_[find(v)];
    for (ValueType t : {ValueType::Bool, ValueType::Int32, ValueType::Int64, ValueType::UInt64, ValueType::Float32,
                        ValueType::Float64})
      if (c.allowed == bit(t)) return t;
    return c.fallback;
  }

 private:
  struct Class {
    TypeSet allowed;
    std::optional<ValueType> fallback;
    SourceSpan origin;
  };

  static void fix_fallback(Class& c, std::optional<ValueType> other) {
    if (c.fallback && (c.allowed & bit(*c.fallback))) return;
    c.fallback = other && (c.allowed & bit(*other)) ? other : std::nullopt;
  }

  std::vector<int> parent_;
  std::vector<Class> classes_;
};

class Inference {
 public:
  Inference(const RawSpecification& raw, const ConstantBindings& constants) : raw_(raw), constants_(constants) {}

  Specification run() {
    for (const auto& item : raw_.items) {
      if (std::holds_alternative<ImportDecl>(item)) math_ = true;
      if (const auto* in = std::get_if<InputDecl>(&item)) {
        streams_[in->name] = solver_.fresh(bit(in->type), in->span);
      }
      if (const auto* out = std::get_if<OutputDecl>(&item))
        streams_[out->name] = solver_.fresh(out->declared ? bit(*out->declared) : kAny, out->span);
    }

    // Resolve names first, then constrain every node.
    std::vector<std::pair<const Declaration*, ExprPtr>> resolved;
    for (const auto& item : raw_.items) {
      if (const auto* out = std::get_if<OutputDecl>(&item)) {
        ExprPtr e = resolve(out->expr);
        solver_.unify(streams_.at(out->name), infer(e), out->expr->span);
        resolved.emplace_back(&item, e);
      } else if (const auto* trig = std::get_if<TriggerDecl>(&item)) {
        ExprPtr e = resolve(trig->condition);
        solver_.restrict(infer(e), kBool, e->span);
        resolved.emplace_back(&item, e);
      } else if (const auto* ann = std::get_if<AnnotationDecl>(&item)) {
        ExprPtr e = resolve(ann->formula);
        solver_.restrict(infer(e), kBool, e->span);
        resolved.emplace_back(&item, e);
      }
    }

    Specification spec;
    spec.math_imported = math_;
    for (const auto& item : raw_.items)
      if (const auto* in = std::get_if<InputDecl>(&item)) spec.inputs.push_back({in->name, in->type});
    for (const auto& [item, e] : resolved) {
      if (const auto* out = std::get_if<OutputDecl>(item)) {
        auto type = solver_.resolve(streams_.at(out->name));
        if (!type)
          throw SpecError(out->span, "cannot infer the type of output '" + out->name +
                                         "'; add a type annotation");
        spec.outputs.push_back({out->name, *type, annotate(e)});
      } else if (const auto* trig = std::get_if<TriggerDecl>(item)) {
        Trigger t{annotate(e), trig->message.value_or("")};
        (trig->once ? spec.once_triggers : spec.triggers).push_back(std::move(t));
      } else if (const auto* ann = std::get_if<AnnotationDecl>(item)) {
        Annotation a{ann->id, annotate(e)};
        (ann->kind == AnnotationDecl::Kind::Assume ? spec.assumptions : spec.assertions).push_back(std::move(a));
      }
    }
    return spec;
  }

 private:
  // Replaces identifiers that are not streams: `f`/`t` shorthands and bound
  // named constants become literals.
  ExprPtr resolve(const ExprPtr& e) {
    if (e->kind == Expr::Kind::StreamRef && !streams_.count(e->name)) {
      if (e->bool_shorthand) return Expr::make_bool(e->name == "t", e->span);
      auto it = constants_.find(e->name);
      if (it == constants_.end())
        throw SpecError(e->span, "unknown stream '" + e->name +
                                     "' (a named constant needs a binding, e.g. --const " + e->name + "=VALUE)");
      return bind_constant(it->second, e->span, e->name);
    }
    if ((e->kind == Expr::Kind::Offset || e->kind == Expr::Kind::RangeFold) && !streams_.count(e->name))
      throw SpecError(e->span, "offset target '" + e->name + "' is not a declared stream");
    if (e->kind == Expr::Kind::Apply && is_math_function(e->op) && !math_)
      throw SpecError(e->span, "function '" + std::string(op_symbol(e->op)) + "' requires 'import math'");
    bool changed = false;
    std::vector<ExprPtr> args;
    for (const auto& a : e->args) {
      args.push_back(resolve(a));
      changed |= args.back() != a;
    }
    if (!changed) return e;
    auto copy = std::make_shared<Expr>(*e);
    copy->args = std::move(args);
    return copy;
  }

  static ExprPtr bind_constant(const std::string& text, SourceSpan span, const std::string& name) {
    if (text == "true" || text == "false") return Expr::make_bool(text == "true", span);
    auto value = parse_decimal(text);
    if (!value) throw SpecError(span, "binding for constant '" + name + "' is not a literal: '" + text + "'");
    bool integral = text.find_first_of(".eE") == std::string::npos;
    return Expr::make_number(*value, integral ? Expr::Literal::Integer : Expr::Literal::Decimal, span);
  }

  int infer(const ExprPtr& e) {
    int v = infer_node(*e);
    vars_[e.get()] = v;
    return v;
  }

  int infer_node(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Constant:
        if (e.literal == Expr::Literal::Bool) return solver_.fresh(kBool, e.span);
        if (e.literal == Expr::Literal::Integer) return solver_.fresh(kNumeric, e.span, ValueType::Int64);
        return solver_.fresh(kFloat, e.span, ValueType::Float64);
      case Expr::Kind::StreamRef:
        return streams_.at(e.name);
      case Expr::Kind::Ite: {
        solver_.restrict(infer(e.cond()), kBool, e.cond()->span);
        int t = infer(e.then_branch());
        solver_.unify(t, infer(e.else_branch()), e.span);
        return t;
      }
      case Expr::Kind::Offset: {
        int s = streams_.at(e.name);
        solver_.unify(s, infer(e.default_value()), e.default_value()->span);
        return s;
      }
      case Expr::Kind::RangeFold: {
        int s = streams_.at(e.name);
        solver_.unify(s, infer(e.default_value()), e.default_value()->span);
        return combine(e.op, s, s, e.span);
      }
      case Expr::Kind::Apply:
        break;
    }
    std::vector<int> args;
    for (const auto& a : e.args) args.push_back(infer(a));
    switch (e.op) {
      case Op::Cast: {
        solver_.restrict(args[0], kNumeric, e.args[0]->span);
        return solver_.fresh(kNumeric, e.span);
      }
      case Op::Abs:
      case Op::Neg:
        solver_.restrict(args[0], kNumeric, e.span);
        return args[0];
      case Op::Sqrt:
      case Op::Sin:
      case Op::Cos:
      case Op::Arctan:
        solver_.restrict(args[0], kFloat, e.span);
        return args[0];
      case Op::Not:
        solver_.restrict(args[0], kBool, e.span);
        return args[0];
      case Op::Min:
      case Op::Max:
        return combine(Op::Add, args[0], args[1], e.span);
      default:
        return combine(e.op, args[0], args[1], e.span);
    }
  }

  // Binary operator typing.
  int combine(Op op, int lhs, int rhs, SourceSpan span) {
    solver_.unify(lhs, rhs, span);
    switch (op) {
      case Op::And:
      case Op::Or:
      case Op::Implies:
        solver_.restrict(lhs, kBool, span);
        return lhs;
      case Op::Eq:
      case Op::Ne:
        return solver_.fresh(kBool, span);
      case Op::Lt:
      case Op::Le:
      case Op::Gt:
      case Op::Ge:
        solver_.restrict(lhs, kNumeric, span);
        return solver_.fresh(kBool, span);
      default:
        solver_.restrict(lhs, kNumeric, span);
        return lhs;
    }
  }

  ExprPtr annotate(const ExprPtr& e) {
    auto copy = std::make_shared<Expr>(*e);
    copy->type = solver_.resolve(vars_.at(e.get()));
    if (!copy->type) throw SpecError(e->span, "cannot infer the type of this expression");
    if (e->kind == Expr::Kind::Constant && e->literal == Expr::Literal::Integer && is_integer(*copy->type) &&
        !integer_fits(boost::multiprecision::numerator(e->constant.number), *copy->type))
      throw SpecError(e->span, "literal " + format_rational(e->constant.number, false) + " is out of range for " +
                                   std::string(type_name(*copy->type)));
    if (e->kind == Expr::Kind::Apply && e->op == Op::Cast) {
      auto from = solver_.resolve(vars_.at(e->args[0].get()));
      if (from && is_float(*from) && is_integer(*copy->type))
        throw SpecError(e->span, "cast from " + std::string(type_name(*from)) + " to " +
                                     std::string(type_name(*copy->type)) + " is not supported");
    }
    for (auto& a : copy->args) a = annotate(a);
    return copy;
  }

  const RawSpecification& raw_;
  const ConstantBindings& constants_;
  TypeSolver solver_;
  std::unordered_map<std::string, int> streams_;
  std::unordered_map<const Expr*, int> vars_;
  bool math_ = false;
};

}  // namespace

Specification infer_types(const RawSpecification& raw, const ConstantBindings& constants) {
  return Inference(raw, constants).run();
}

Specification load_specification(std::string_view text, const ConstantBindings& constants) {
  return desugar(infer_types(parse(text), constants));
}

}  // namespace streamverify
