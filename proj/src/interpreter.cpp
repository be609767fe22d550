#include "streamverify/interpreter.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace streamverify {

std::string format_value(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  double d = std::get<double>(v);
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
  std::string s(buf, end);
  if (std::isfinite(d) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

Rational to_rational(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? 1 : 0;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return Rational(*i);
  double d = std::get<double>(v);
  int exponent = 0;
  double mantissa = std::frexp(d, &exponent);
  // 53 bits of mantissa as an exact integer.
  auto bits = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  BigInt num = bits;
  if (exponent >= 0) return Rational(num << exponent);
  return Rational(num, BigInt(1) << -exponent);
}

std::size_t Trace::length() const { return columns.empty() ? rows : columns.begin()->second.size(); }

EvaluationError::EvaluationError(std::string stream, std::size_t position, const std::string& what)
    : std::runtime_error(stream + " at position " + std::to_string(position) + ": " + what),
      stream_(std::move(stream)),
      position_(position) {}

namespace {

bool fits(std::int64_t v, ValueType t) {
  if (t == ValueType::Int32)
    return v >= std::numeric_limits<std::int32_t>::min() && v <= std::numeric_limits<std::int32_t>::max();
  if (t == ValueType::UInt64) return v >= 0;
  return true;
}

bool value_matches(const Value& v, ValueType t) {
  if (t == ValueType::Bool) return std::holds_alternative<bool>(v);
  if (is_float(t)) return std::holds_alternative<double>(v);
  const auto* i = std::get_if<std::int64_t>(&v);
  return i && fits(*i, t);
}

class Evaluator {
 public:
  Evaluator(const Specification& spec, const Trace& trace) : spec_(spec), trace_(trace), n_(trace.length()) {
    for (const auto& [name, column] : trace.columns) inputs_[name] = &column;
    for (std::size_t k = 0; k < spec.outputs.size(); ++k) outputs_[spec.outputs[k].name] = k;
    memo_.assign(spec.outputs.size(), std::vector<std::optional<Value>>(n_));
    state_.assign(spec.outputs.size(), std::vector<char>(n_, 0));
  }

  EvaluationResult run() {
    // Demands resolve dependencies themselves, so declaration order is enough.
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < spec_.outputs.size(); ++k) demand(k, j);

    EvaluationResult result;
    result.length = n_;
    for (const auto& [name, column] : trace_.columns) result.streams[name] = column;
    for (std::size_t k = 0; k < spec_.outputs.size(); ++k) {
      auto& column = result.streams[spec_.outputs[k].name];
      column.reserve(n_);
      for (auto& v : memo_[k]) column.push_back(*v);
    }
    std::vector<std::string> trigger_labels;
    for (std::size_t t = 0; t < spec_.triggers.size(); ++t) trigger_labels.push_back("trigger " + std::to_string(t));
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t t = 0; t < spec_.triggers.size(); ++t)
        if (std::get<bool>(closed(*spec_.triggers[t].condition, j, trigger_labels[t])))
          result.triggers.push_back({j, spec_.triggers[t].message});
    for (const auto& id : spec_.identifiers()) {
      auto table = [&](const std::vector<ExprPtr>& formulas, const std::string& label) {
        std::vector<bool> holds(n_, true);
        for (std::size_t j = 0; j < n_; ++j)
          for (const auto& f : formulas) holds[j] = holds[j] && std::get<bool>(closed(*f, j, label));
        return holds;
      };
      result.assumption_holds[id] = table(spec_.assume(id), "assumption <" + id + ">");
      result.assertion_holds[id] = table(spec_.assert_(id), "assertion <" + id + ">");
    }
    return result;
  }

 private:
  struct Task {
    std::size_t stream;
    std::size_t pos;
  };

  // Computes output (k, j), following demands on not-yet-known values with an
  // explicit stack instead of recursion.
  void demand(std::size_t k, std::size_t j) {
    if (memo_[k][j]) return;
    std::vector<Task> stack{{k, j}};
    state_[k][j] = 1;
    while (!stack.empty()) {
      Task top = stack.back();
      const Output& out = spec_.outputs[top.stream];
      context_ = &out.name;
      context_pos_ = top.pos;
      missing_.reset();
      std::optional<Value> v = eval(*out.expr, static_cast<std::int64_t>(top.pos));
      if (v) {
        memo_[top.stream][top.pos] = std::move(v);
        state_[top.stream][top.pos] = 2;
        stack.pop_back();
        continue;
      }
      Task need = *missing_;
      if (state_[need.stream][need.pos] == 1)
        throw EvaluationError(out.name, top.pos,
                              "cyclic dependency through " + spec_.outputs[need.stream].name + " at position " +
                                  std::to_string(need.pos));
      state_[need.stream][need.pos] = 1;
      stack.push_back(need);
    }
  }

  Value closed(const Expr& e, std::size_t j, const std::string& label) {
    context_ = &label;
    context_pos_ = j;
    return *eval(e, static_cast<std::int64_t>(j));
  }

  [[noreturn]] void fail(const std::string& what) const { throw EvaluationError(*context_, context_pos_, what); }

  // Stream behind a reference node: an input column or an output index.
  struct Slot {
    const std::vector<Value>* input = nullptr;
    std::size_t output = 0;
  };

  const Slot& slot(const Expr& e) {
    auto [it, fresh] = slots_.try_emplace(&e);
    if (fresh) {
      if (auto in = inputs_.find(e.name); in != inputs_.end())
        it->second.input = in->second;
      else
        it->second.output = outputs_.at(e.name);
    }
    return it->second;
  }

  std::optional<Value> lookup(const Expr& e, std::int64_t j) {
    auto pos = static_cast<std::size_t>(j);
    const Slot& s = slot(e);
    if (s.input) return (*s.input)[pos];
    if (!memo_[s.output][pos]) missing_ = Task{s.output, pos};
    return memo_[s.output][pos];
  }

  const Value& constant(const Expr& e) {
    auto [it, fresh] = constants_.try_emplace(&e);
    if (fresh) {
      if (*e.type == ValueType::Bool)
        it->second = e.constant.boolean;
      else if (is_float(*e.type))
        it->second = e.constant.number.convert_to<double>();
      else
        it->second = boost::multiprecision::numerator(e.constant.number).convert_to<std::int64_t>();
    }
    return it->second;
  }

  std::int64_t checked(bool overflow, std::int64_t v, ValueType t) const {
    if (overflow || !fits(v, t)) fail(std::string("integer overflow in ") + std::string(type_name(t)) + " arithmetic");
    return v;
  }

  std::optional<Value> eval(const Expr& e, std::int64_t j) {
    switch (e.kind) {
      case Expr::Kind::Constant:
        return constant(e);
      case Expr::Kind::StreamRef:
        return lookup(e, j);
      case Expr::Kind::Offset: {
        std::int64_t target = j + e.offset;
        if (target < 0 || target >= static_cast<std::int64_t>(n_)) return eval(*e.default_value(), j);
        return lookup(e, target);
      }
      case Expr::Kind::Ite: {
        auto c = eval(*e.cond(), j);
        if (!c) return c;
        return eval(std::get<bool>(*c) ? *e.then_branch() : *e.else_branch(), j);
      }
      case Expr::Kind::RangeFold:
        fail("range expressions must be desugared before evaluation");
      case Expr::Kind::Apply:
        break;
    }
    if (e.op == Op::And || e.op == Op::Or || e.op == Op::Implies) {
      auto a = eval(*e.args[0], j);
      if (!a) return a;
      bool lhs = std::get<bool>(*a);
      if (e.op == Op::And && !lhs) return Value(false);
      if (e.op == Op::Or && lhs) return Value(true);
      if (e.op == Op::Implies && !lhs) return Value(true);
      return eval(*e.args[1], j);
    }
    std::array<Value, 2> args;
    if (e.args.size() > args.size()) fail("operator '" + std::string(op_symbol(e.op)) + "' has too many operands");
    for (std::size_t i = 0; i < e.args.size(); ++i) {
      auto v = eval(*e.args[i], j);
      if (!v) return v;
      args[i] = *v;
    }
    return apply(e, args);
  }

  Value apply(const Expr& e, const std::array<Value, 2>& args) const {
    const ValueType t = *e.type;
    switch (e.op) {
      case Op::Not:
        return !std::get<bool>(args[0]);
      case Op::Eq:
        return args[0] == args[1];
      case Op::Ne:
        return args[0] != args[1];
      case Op::Cast: {
        if (is_float(t)) {
          if (const auto* i = std::get_if<std::int64_t>(&args[0])) return static_cast<double>(*i);
          return args[0];
        }
        return checked(false, std::get<std::int64_t>(args[0]), t);
      }
      case Op::Sqrt:
        return std::sqrt(std::get<double>(args[0]));
      case Op::Sin:
        return std::sin(std::get<double>(args[0]));
      case Op::Cos:
        return std::cos(std::get<double>(args[0]));
      case Op::Arctan:
        return std::atan(std::get<double>(args[0]));
      default:
        break;
    }
    if (std::holds_alternative<double>(args[0])) {
      double a = std::get<double>(args[0]);
      double b = e.args.size() > 1 ? std::get<double>(args[1]) : 0.0;
      switch (e.op) {
        case Op::Add: return a + b;
        case Op::Sub: return a - b;
        case Op::Mul: return a * b;
        case Op::Div:
          if (b == 0.0) fail("division by zero");
          return a / b;
        case Op::Neg: return -a;
        case Op::Lt: return a < b;
        case Op::Le: return a <= b;
        case Op::Gt: return a > b;
        case Op::Ge: return a >= b;
        case Op::Abs: return std::fabs(a);
        case Op::Min: return std::min(a, b);
        case Op::Max: return std::max(a, b);
        default: break;
      }
    } else {
      std::int64_t a = std::get<std::int64_t>(args[0]);
      std::int64_t b = e.args.size() > 1 ? std::get<std::int64_t>(args[1]) : 0;
      std::int64_t r = 0;
      switch (e.op) {
        case Op::Add: {
          bool overflow = __builtin_add_overflow(a, b, &r);
          return checked(overflow, r, t);
        }
        case Op::Sub: {
          bool overflow = __builtin_sub_overflow(a, b, &r);
          return checked(overflow, r, t);
        }
        case Op::Mul: {
          bool overflow = __builtin_mul_overflow(a, b, &r);
          return checked(overflow, r, t);
        }
        case Op::Div:
          if (b == 0) fail("division by zero");
          return checked(a == std::numeric_limits<std::int64_t>::min() && b == -1, b == -1 ? -a : a / b, t);
        case Op::Neg: return checked(a == std::numeric_limits<std::int64_t>::min(), -a, t);
        case Op::Lt: return a < b;
        case Op::Le: return a <= b;
        case Op::Gt: return a > b;
        case Op::Ge: return a >= b;
        case Op::Abs: return checked(a == std::numeric_limits<std::int64_t>::min(), a < 0 ? -a : a, t);
        case Op::Min: return std::min(a, b);
        case Op::Max: return std::max(a, b);
        default: break;
      }
    }
    fail("operator '" + std::string(op_symbol(e.op)) + "' is not applicable here");
  }

  const Specification& spec_;
  const Trace& trace_;
  std::size_t n_;
  std::unordered_map<std::string, const std::vector<Value>*> inputs_;
  std::unordered_map<std::string, std::size_t> outputs_;
  std::vector<std::vector<std::optional<Value>>> memo_;
  // 0 untouched, 1 in progress, 2 done.
  std::vector<std::vector<char>> state_;
  std::optional<Task> missing_;
  std::unordered_map<const Expr*, Slot> slots_;
  std::unordered_map<const Expr*, Value> constants_;
  const std::string* context_ = nullptr;
  std::size_t context_pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

Value parse_cell(const std::string& cell, ValueType t, std::size_t row, const std::string& column) {
  auto bad = [&]() -> TraceError {
    return TraceError("row " + std::to_string(row) + ", column " + column + ": '" + cell + "' is not a valid " +
                      std::string(type_name(t)));
  };
  if (t == ValueType::Bool) {
    if (cell == "true") return true;
    if (cell == "false") return false;
    throw bad();
  }
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && cell[0] == '+') ++first;
  if (is_integer(t)) {
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || end != last || cell.empty() || !fits(v, t)) throw bad();
    return v;
  }
  double v = 0;
  auto [end, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || end != last || cell.empty()) throw bad();
  return v;
}

}  // namespace

void validate_trace(const Specification& spec, const Trace& trace) {
  for (const auto& in : spec.inputs)
    if (!trace.columns.count(in.name)) throw TraceError("trace has no column for input '" + in.name + "'");
  for (const auto& [name, column] : trace.columns) {
    const Input* in = spec.find_input(name);
    if (!in) throw TraceError("trace column '" + name + "' is not an input of the specification");
    if (column.size() != trace.length()) throw TraceError("trace columns differ in length");
    for (std::size_t j = 0; j < column.size(); ++j)
      if (!value_matches(column[j], in->type))
        throw TraceError("value " + format_value(column[j]) + " of '" + name + "' at position " + std::to_string(j) +
                         " does not match type " + std::string(type_name(in->type)));
  }
}

EvaluationResult evaluate(const Specification& spec, const Trace& trace) {
  validate_trace(spec, trace);
  return Evaluator(spec, trace).run();
}

std::vector<AnnotationVerdict> check_annotations(const Specification& spec, const EvaluationResult& result) {
  std::vector<AnnotationVerdict> verdicts;
  for (const auto& id : spec.identifiers()) {
    AnnotationVerdict v{id, {}};
    const auto& assumed = result.assumption_holds.at(id);
    const auto& asserted = result.assertion_holds.at(id);
    for (std::size_t j = 0; j < result.length; ++j)
      if (assumed[j] && !asserted[j]) v.violations.push_back(j);
    verdicts.push_back(std::move(v));
  }
  return verdicts;
}

std::vector<AnnotationVerdict> check_annotations(const Specification& spec, const Trace& trace) {
  return check_annotations(spec, evaluate(spec, trace));
}

Trace read_trace_csv(std::string_view text, const Specification& spec) {
  std::vector<std::string> lines;
  std::istringstream is{std::string(text)};
  for (std::string line; std::getline(is, line);)
    if (!trim(line).empty()) lines.push_back(line);
  if (lines.empty()) throw TraceError("trace file is empty");
  std::vector<std::string> header = split_row(lines[0]);
  Trace trace;
  for (const auto& name : header) {
    if (!spec.find_input(name)) throw TraceError("trace column '" + name + "' is not an input of the specification");
    if (!trace.columns.emplace(name, std::vector<Value>{}).second)
      throw TraceError("duplicate trace column '" + name + "'");
  }
  for (const auto& in : spec.inputs)
    if (!trace.columns.count(in.name)) throw TraceError("trace has no column for input '" + in.name + "'");
  for (std::size_t r = 1; r < lines.size(); ++r) {
    std::vector<std::string> cells = split_row(lines[r]);
    if (cells.size() != header.size())
      throw TraceError("row " + std::to_string(r) + " has " + std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(header.size()));
    for (std::size_t c = 0; c < cells.size(); ++c)
      trace.columns[header[c]].push_back(parse_cell(cells[c], spec.find_input(header[c])->type, r, header[c]));
  }
  trace.rows = lines.size() - 1;
  return trace;
}

std::string write_trace_csv(const Trace& trace, const Specification& spec) {
  std::ostringstream os;
  for (std::size_t i = 0; i < spec.inputs.size(); ++i) os << (i ? "," : "") << spec.inputs[i].name;
  os << "\n";
  for (std::size_t j = 0; j < trace.length(); ++j) {
    for (std::size_t i = 0; i < spec.inputs.size(); ++i)
      os << (i ? "," : "") << format_value(trace.columns.at(spec.inputs[i].name)[j]);
    os << "\n";
  }
  return os.str();
}

}  // namespace streamverify
