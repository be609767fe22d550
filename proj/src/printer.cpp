#include "streamverify/frontend.hpp"

#include <sstream>

namespace streamverify {

namespace {

std::string binary_symbol(Op op) {
  switch (op) {
    case Op::Eq:
      return "==";
    case Op::And:
      return "&&";
    case Op::Or:
      return "||";
    default:
      return std::string(op_symbol(op));
  }
}

std::string constant_text(const Expr& e) {
  if (e.literal == Expr::Literal::Bool || e.type == ValueType::Bool) return e.constant.boolean ? "true" : "false";
  bool as_float = e.type ? is_float(*e.type) : e.literal == Expr::Literal::Decimal;
  std::string s = format_rational(e.constant.number, as_float);
  // Non-terminating rationals have no decimal spelling; write a division.
  if (auto slash = s.find('/'); slash != std::string::npos)
    return "(" + s.substr(0, slash) + ".0 / " + s.substr(slash + 1) + ".0)";
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_source(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      return constant_text(*e);
    case Expr::Kind::StreamRef:
      return e->name;
    case Expr::Kind::Ite:
      return "(if " + to_source(e->cond()) + " then " + to_source(e->then_branch()) + " else " +
             to_source(e->else_branch()) + ")";
    case Expr::Kind::Offset:
      return e->name + "[" + std::to_string(e->offset) + ", " + to_source(e->default_value()) + "]";
    case Expr::Kind::RangeFold:
      return e->name + "[" + std::to_string(e->offset) + ".." + std::to_string(e->offset_to) + ", " +
             to_source(e->default_value()) + ", " + binary_symbol(e->op) + "]";
    case Expr::Kind::Apply:
      break;
  }
  switch (e->op) {
    case Op::Neg:
      // `-(x)` keeps a negated literal distinct from a negative literal.
      return "-(" + to_source(e->args[0]) + ")";
    case Op::Not:
      return "!(" + to_source(e->args[0]) + ")";
    default:
      break;
  }
  if (op_arity(e->op) == 2 && !function_by_name(op_symbol(e->op)))
    return "(" + to_source(e->args[0]) + " " + binary_symbol(e->op) + " " + to_source(e->args[1]) + ")";
  std::string s = std::string(op_symbol(e->op)) + "(";
  for (std::size_t i = 0; i < e->args.size(); ++i) s += (i ? ", " : "") + to_source(e->args[i]);
  return s + ")";
}

std::string to_source(const Specification& spec) {
  std::ostringstream os;
  if (spec.math_imported) os << "import math\n";
  for (const auto& i : spec.inputs) os << "input " << i.name << " : " << type_name(i.type) << "\n";
  for (const auto& o : spec.outputs)
    os << "output " << o.name << " : " << type_name(o.type) << " := " << to_source(o.expr) << "\n";
  auto triggers = [&](const std::vector<Trigger>& list, const char* keyword) {
    for (const auto& t : list) {
      os << keyword << " " << to_source(t.condition);
      if (!t.message.empty()) os << " " << quote(t.message);
      os << "\n";
    }
  };
  triggers(spec.triggers, "trigger");
  triggers(spec.once_triggers, "trigger_once");
  for (const auto& a : spec.assumptions) os << "assume <" << a.id << "> " << to_source(a.formula) << "\n";
  for (const auto& a : spec.assertions) os << "assert <" << a.id << "> " << to_source(a.formula) << "\n";
  return os.str();
}

}  // namespace streamverify
