#include "generators.hpp"

#include "streamverify/analysis.hpp"
#include "streamverify/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace streamverify::testing {

namespace {

enum class Kind { Bool, Int, Real };

struct Stream {
  std::string name;
  Kind kind;
  ValueType type;
};

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

std::string dyadic_text(Rng& rng) {
  // Quarter steps keep every sum and product by the constants below exact.
  int k = uniform(rng, -40, 40);
  std::ostringstream os;
  os << k / 4 << "." << (std::abs(k % 4) * 25);
  std::string s = os.str();
  if (k < 0 && k / 4 == 0) s = "-" + s;
  return k < 0 ? "(" + s + ")" : s;
}

class SpecWriter {
 public:
  SpecWriter(Rng& rng, const SpecShape& shape) : rng_(rng), shape_(shape) {}

  std::string write() {
    int_type_ = coin(rng_) ? ValueType::Int64 : ValueType::Int32;
    real_type_ = coin(rng_) ? ValueType::Float64 : ValueType::Float32;
    const int total = uniform(rng_, 2, std::max(2, shape_.max_streams));
    const int inputs = uniform(rng_, 1, total - 1);
    std::ostringstream os;
    for (int i = 0; i < inputs; ++i) {
      Stream s = input_stream("i" + std::to_string(i));
      os << "input " << s.name << ": " << type_name(s.type) << "\n";
      streams_.push_back(s);
    }
    std::vector<Stream> outputs;
    for (int i = 0; i < total - inputs; ++i) {
      Kind k = static_cast<Kind>(uniform(rng_, 0, 2));
      outputs.push_back({"o" + std::to_string(i), k, type_of(k)});
    }
    for (const auto& o : outputs) streams_.push_back(o);
    for (const auto& o : outputs)
      os << "output " << o.name << ": " << type_name(o.type) << " := " << expr(o.kind, shape_.max_depth) << "\n";
    if (coin(rng_, 0.4)) os << "trigger " << expr(Kind::Bool, 2) << " \"fired\"\n";
    if (shape_.annotations) {
      const int ids = uniform(rng_, 1, 2);
      for (int a = 1; a <= ids; ++a) {
        if (coin(rng_, 0.7)) os << "assume <a" << a << "> " << expr(Kind::Bool, 2) << "\n";
        os << "assert <a" << a << "> " << expr(Kind::Bool, 2) << "\n";
      }
    }
    return os.str();
  }

 private:
  // One integer and one float type per specification: the language has no
  // implicit conversions between widths.
  ValueType type_of(Kind k) const {
    return k == Kind::Bool ? ValueType::Bool : k == Kind::Int ? int_type_ : real_type_;
  }

  Stream input_stream(std::string name) {
    Kind k = static_cast<Kind>(uniform(rng_, 0, 2));
    return {std::move(name), k, type_of(k)};
  }

  std::string literal(Kind k) {
    if (k == Kind::Bool) return coin(rng_) ? "true" : "false";
    if (k == Kind::Int) {
      int v = uniform(rng_, -5, 5);
      return v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v);
    }
    return dyadic_text(rng_);
  }

  std::string reference(Kind k) {
    std::vector<const Stream*> candidates;
    for (const auto& s : streams_)
      if (s.kind == k) candidates.push_back(&s);
    if (candidates.empty()) return literal(k);
    const Stream& s = *pick(rng_, candidates);
    int offset = uniform(rng_, -shape_.max_offset, shape_.max_offset);
    if (offset == 0 || coin(rng_, 0.3)) return s.name;
    return s.name + "[" + std::to_string(offset) + ", " + literal(k) + "]";
  }

  bool has(Kind k) const {
    return std::any_of(streams_.begin(), streams_.end(), [k](const Stream& s) { return s.kind == k; });
  }

  std::string expr(Kind k, int depth) {
    if (depth <= 0 || coin(rng_, 0.25)) return coin(rng_, 0.7) ? reference(k) : literal(k);
    const int d = depth - 1;
    if (coin(rng_, 0.12)) return "(if " + expr(Kind::Bool, d) + " then " + expr(k, d) + " else " + expr(k, d) + ")";
    switch (k) {
      case Kind::Bool: {
        switch (uniform(rng_, 0, 5)) {
          case 0: return "(" + expr(Kind::Bool, d) + " and " + expr(Kind::Bool, d) + ")";
          case 1: return "(" + expr(Kind::Bool, d) + " or " + expr(Kind::Bool, d) + ")";
          case 2: return "(!" + expr(Kind::Bool, d) + ")";
          case 3: return "(" + expr(Kind::Bool, d) + " -> " + expr(Kind::Bool, d) + ")";
          default: {
            // The left operand is a stream so that the comparison has a type.
            Kind operand = coin(rng_) ? Kind::Int : Kind::Real;
            if (!has(operand)) operand = operand == Kind::Int ? Kind::Real : Kind::Int;
            if (!has(operand)) return "(" + expr(Kind::Bool, d) + " -> " + expr(Kind::Bool, d) + ")";
            static const std::vector<std::string> cmp = {"<", "<=", ">", ">=", "==", "!="};
            return "(" + reference(operand) + " " + pick(rng_, cmp) + " " + expr(operand, d) + ")";
          }
        }
      }
      case Kind::Int: {
        switch (uniform(rng_, 0, 4)) {
          case 0: return "(" + expr(k, d) + " + " + expr(k, d) + ")";
          case 1: return "(" + expr(k, d) + " - " + expr(k, d) + ")";
          case 2: return "(-" + expr(k, d) + ")";
          case 3: return "(" + std::to_string(uniform(rng_, -3, 3)) + " * " + expr(k, d) + ")";
          default: {
            static const std::vector<std::string> divisors = {"1", "2", "3", "(-2)"};
            return "(" + expr(k, d) + " / " + pick(rng_, divisors) + ")";
          }
        }
      }
      case Kind::Real: {
        switch (uniform(rng_, 0, 5)) {
          case 0: return "(" + expr(k, d) + " + " + expr(k, d) + ")";
          case 1: return "(" + expr(k, d) + " - " + expr(k, d) + ")";
          case 2: return "(-" + expr(k, d) + ")";
          case 3: {
            static const std::vector<std::string> factors = {"0.5", "2.0", "(-1.5)", "0.25"};
            return "(" + pick(rng_, factors) + " * " + expr(k, d) + ")";
          }
          case 4: {
            static const std::vector<std::string> divisors = {"2.0", "4.0", "0.5", "(-2.0)"};
            return "(" + expr(k, d) + " / " + pick(rng_, divisors) + ")";
          }
          default:
            if (!has(Kind::Int)) return literal(k);
            return "cast(" + reference(Kind::Int) + ")";
        }
      }
    }
    return literal(k);
  }

  Rng& rng_;
  SpecShape shape_;
  ValueType int_type_ = ValueType::Int64;
  ValueType real_type_ = ValueType::Float64;
  std::vector<Stream> streams_;
};

// Value of the same type, log-uniform magnitude.
Value fresh_value(ValueType t, Rng& rng) {
  switch (t) {
    case ValueType::Bool: return coin(rng);
    case ValueType::UInt64: {
      double scale = std::pow(10.0, std::uniform_real_distribution<double>(0, 6)(rng));
      return static_cast<std::int64_t>(std::uniform_real_distribution<double>(0, scale)(rng));
    }
    case ValueType::Int32:
    case ValueType::Int64: return static_cast<std::int64_t>(uniform(rng, -1000, 1000) / (coin(rng) ? 1 : 20));
    case ValueType::Float32:
    case ValueType::Float64: return uniform(rng, -6400, 6400) / 64.0;
  }
  return false;
}

Value nudge(const Value& base, ValueType t, Rng& rng) {
  if (t == ValueType::Bool) return !std::get<bool>(base);
  if (is_integer(t)) {
    auto v = std::get<std::int64_t>(base);
    auto step =
        coin(rng, 0.3) ? 1 : static_cast<std::int64_t>(std::pow(10.0, std::uniform_real_distribution<double>(0, 5)(rng)));
    std::int64_t r = 0;
    switch (uniform(rng, 0, 2)) {
      case 0: r = v + step; break;
      case 1: r = v - step; break;
      default: r = v / 2; break;
    }
    if (t == ValueType::UInt64) r = std::max<std::int64_t>(r, 0);
    if (t == ValueType::Int32) r = std::clamp<std::int64_t>(r, -1000000, 1000000);
    return r;
  }
  double v = std::get<double>(base);
  double step = coin(rng, 0.3) ? std::abs(v) * 1e-12 + 1e-12 : std::ldexp(1.0, uniform(rng, -6, 4));
  switch (uniform(rng, 0, 2)) {
    case 0: return v + step;
    case 1: return v - step;
    default: return v * 0.5;
  }
}

// (first position where an assumption fails or evaluation stops, positions satisfied)
std::pair<std::size_t, std::size_t> score(const Specification& spec, const Trace& trace) {
  const std::size_t n = trace.length();
  try {
    EvaluationResult r = evaluate(spec, trace);
    std::size_t first = n, count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      bool ok = true;
      for (const auto& [id, holds] : r.assumption_holds) ok = ok && holds[j];
      if (ok)
        ++count;
      else
        first = std::min(first, j);
    }
    return {first, count};
  } catch (const EvaluationError& e) {
    return {e.position(), 0};
  }
}

}  // namespace

std::string random_spec_source(Rng& rng, const SpecShape& shape) { return SpecWriter(rng, shape).write(); }

Specification random_spec(Rng& rng, const SpecShape& shape, std::string* source) {
  for (;;) {
    std::string text = random_spec_source(rng, shape);
    Specification spec = load_specification(text);
    if (find_zero_walk(build_graph(spec))) continue;
    if (source) *source = text;
    return spec;
  }
}

Trace random_trace(const Specification& spec, std::size_t length, Rng& rng) {
  Trace t;
  t.rows = length;
  for (const auto& in : spec.inputs) {
    auto& column = t.columns[in.name];
    for (std::size_t j = 0; j < length; ++j) column.push_back(fresh_value(in.type, rng));
  }
  return t;
}

bool assumptions_hold(const Specification&, const EvaluationResult& result) {
  for (const auto& [id, holds] : result.assumption_holds)
    if (std::find(holds.begin(), holds.end(), false) != holds.end()) return false;
  return true;
}

namespace {

// Real comparisons in `t` tightened by `eps` in the direction that makes the
// formula harder to satisfy, so that solutions keep a distance from the
// boundary that floating-point evaluation could cross.
smt::TermPtr with_margin(const smt::TermPtr& t, bool positive, const Rational& eps) {
  if (t->kind != smt::Term::Kind::App) return t;
  const std::string& f = t->symbol;
  auto rebuild = [&](std::vector<smt::TermPtr> args) { return smt::app(f, t->sort, std::move(args)); };
  if (f == "and" || f == "or") {
    std::vector<smt::TermPtr> args;
    for (const auto& a : t->args) args.push_back(with_margin(a, positive, eps));
    return rebuild(std::move(args));
  }
  if (f == "not") return rebuild({with_margin(t->args[0], !positive, eps)});
  if (f == "=>") return rebuild({with_margin(t->args[0], !positive, eps), with_margin(t->args[1], positive, eps)});
  const bool less = f == "<" || f == "<=";
  if ((less || f == ">" || f == ">=") && t->args[0]->sort == smt::Sort::Real) {
    // positive a < b becomes a + eps < b; negative becomes a - eps < b.
    const bool add = less == positive;
    auto shifted = smt::app(add ? "+" : "-", smt::Sort::Real, {t->args[0], smt::number(eps, smt::Sort::Real)});
    return rebuild({shifted, t->args[1]});
  }
  return t;
}

// Inputs from a solver model of the equations and all assumptions over
// 0..length-1, with a random share of the input cells pinned to random values.
QueryResult admissibility_query(const Specification& spec, std::size_t length, Rng& rng, double pinned,
                                const Rational& eps) {
  static const SolverConfig cfg = [] {
    SolverConfig c = SolverConfig::from_environment();
    c.timeout_seconds = 5;
    return c;
  }();
  const auto n = static_cast<std::int64_t>(length) - 1;
  VariableUniverse u(spec, n);
  const UnfoldingWindow w = compute_window(spec);
  std::vector<smt::TermPtr> facts = u.sort_constraints();
  for (std::size_t k = 0; k < spec.outputs.size(); ++k)
    for (std::int64_t j = 0; j <= n; ++j) facts.push_back(equation(k, j, u));
  for (const auto& id : spec.identifiers())
    for (const auto& f : spec.assume(id))
      for (std::int64_t j = 0; j <= n; ++j) {
        // Near the ends defaults often make a comparison hold with equality
        // (t - (t - 0.1) <= 0.1); no margin there.
        const bool interior = j >= w.past && j + w.future <= n;
        facts.push_back(interior ? with_margin(encode(f, j, u), true, eps) : encode(f, j, u));
      }
  const Trace hint = random_trace(spec, length, rng);
  std::vector<std::string> probes;
  for (const auto& in : spec.inputs)
    for (std::int64_t j = 0; j <= n; ++j) {
      probes.push_back(variable_name(in.name, j));
      if (!coin(rng, pinned)) continue;
      const Value& v = hint.columns.at(in.name)[static_cast<std::size_t>(j)];
      smt::TermPtr value = std::holds_alternative<bool>(v) ? smt::boolean(std::get<bool>(v))
                                                           : smt::number(to_rational(v), sort_of(in.type));
      facts.push_back(smt::equals(u.at(in.name, j), value));
    }
  std::ostringstream script;
  script << "(set-option :produce-models true)\n(set-logic " << cfg.logic << ")\n";
  for (const auto& v : u.variables())
    script << "(declare-const " << v.term->symbol << " " << smt::sort_name(v.term->sort) << ")\n";
  for (const auto& d : FunctionTable::declarations(facts)) script << d << "\n";
  for (const auto& a : FunctionTable::axioms(facts)) script << "(assert " << smt::to_string(a) << ")\n";
  for (const auto& f : facts) script << "(assert " << smt::to_string(f) << ")\n";
  script << "(check-sat)\n";
  return run_query(script.str(), probes, cfg, false);
}

std::optional<Trace> solved_trace(const Specification& spec, std::size_t length, Rng& rng, double pinned,
                                  const Rational& eps) {
  const auto n = static_cast<std::int64_t>(length) - 1;
  QueryResult r = admissibility_query(spec, length, rng, pinned, eps);
  if (r.answer != QueryResult::Answer::Sat || r.values.size() != spec.inputs.size() * length) return std::nullopt;
  Trace t;
  t.rows = length;
  std::size_t i = 0;
  for (const auto& in : spec.inputs)
    for (std::int64_t j = 0; j <= n; ++j) {
      const smt::ModelValue& m = r.values[i++];
      auto& column = t.columns[in.name];
      if (in.type == ValueType::Bool) {
        if (!m.boolean) return std::nullopt;
        column.push_back(*m.boolean);
      } else if (!m.number) {
        return std::nullopt;
      } else if (is_integer(in.type)) {
        if (boost::multiprecision::denominator(*m.number) != 1 || !integer_fits(numerator(*m.number), in.type))
          return std::nullopt;
        column.push_back(numerator(*m.number).convert_to<std::int64_t>());
      } else {
        column.push_back(m.number->convert_to<double>());
      }
    }
  return t;
}

// Hill climbing on the score, mutating inputs around the first failing
// position. True once every position is admissible.
bool climb(const Specification& spec, Trace& trace, Rng& rng, std::size_t steps_per_position = 80) {
  const std::size_t length = trace.length();
  const UnfoldingWindow w = compute_window(spec);
  const auto last = static_cast<std::int64_t>(length) - 1;
  auto current = score(spec, trace);
  for (std::size_t step = 0; step < steps_per_position * length && current.first < length; ++step) {
    const auto p = static_cast<std::int64_t>(current.first);
    const auto q = static_cast<std::size_t>(
        std::clamp<std::int64_t>(p + uniform(rng, -static_cast<int>(w.past), static_cast<int>(w.future)), 0, last));
    const Input& in = pick(rng, spec.inputs);
    auto& column = trace.columns[in.name];
    const Value saved = column[q];
    switch (uniform(rng, 0, 4)) {
      case 0: column[q] = fresh_value(in.type, rng); break;
      case 1: column[q] = q > 0 ? column[q - 1] : fresh_value(in.type, rng); break;
      case 2: column[q] = nudge(q > 0 ? column[q - 1] : column[q], in.type, rng); break;
      default: column[q] = nudge(column[q], in.type, rng); break;
    }
    auto next = score(spec, trace);
    if (next >= current)
      current = next;
    else
      column[q] = saved;
  }
  return current.first == length;
}

Value zero(ValueType t) {
  if (t == ValueType::Bool) return false;
  if (is_float(t)) return 0.0;
  return std::int64_t{0};
}

void split_conjuncts(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (e->kind == Expr::Kind::Apply && e->op == Op::And) {
    for (const auto& a : e->args) split_conjuncts(a, out);
    return;
  }
  out.push_back(e);
}

// The specification with each top-level conjunct of an assumption as its own
// identifier and no assertions: a finer score for one position.
Specification conjunct_view(const Specification& spec) {
  Specification view = spec;
  view.assumptions.clear();
  view.assertions.clear();
  std::vector<ExprPtr> parts;
  for (const auto& a : spec.assumptions) split_conjuncts(a.formula, parts);
  for (std::size_t i = 0; i < parts.size(); ++i) view.assumptions.push_back({"c" + std::to_string(i), parts[i]});
  return view;
}

// Conjuncts holding at the last position of the trace, or -1 if evaluation
// fails.
int conjuncts_at_end(const Specification& view, const Trace& t) {
  try {
    EvaluationResult r = evaluate(view, t);
    int count = 0;
    for (const auto& [id, holds] : r.assumption_holds) count += holds.back();
    return count;
  } catch (const EvaluationError&) {
    return -1;
  }
}

// Builds the trace one position at a time. Each row starts from the previous
// one (copied, nudged or fresh per input) and then climbs, one input at a
// time, on the number of assumption conjuncts it meets. Exact for past-only
// specifications; with future offsets the caller checks the whole trace.
std::optional<Trace> grow(const Specification& spec, const Specification& view, std::size_t length, Rng& rng) {
  const int total = static_cast<int>(view.assumptions.size());
  Trace t;
  for (const auto& in : spec.inputs) t.columns[in.name];
  auto redraw = [&](const Input& in, std::size_t j) {
    auto& column = t.columns[in.name];
    if (j == 0) return coin(rng, 0.2) ? zero(in.type) : fresh_value(in.type, rng);
    const Value& prev = column[j - 1];
    switch (uniform(rng, 0, 6)) {
      case 0: case 1: return prev;
      case 2: case 3: return nudge(prev, in.type, rng);
      case 4: return nudge(column[j], in.type, rng);
      default: return fresh_value(in.type, rng);
    }
  };
  for (std::size_t j = 0; j < length; ++j) {
    t.rows = j + 1;
    bool placed = false;
    for (int round = 0; round < 4 && !placed; ++round) {
      for (const auto& in : spec.inputs) {
        auto& column = t.columns[in.name];
        column.resize(j + 1, zero(in.type));
        column[j] = j == 0 ? redraw(in, j) : (coin(rng) ? column[j - 1] : nudge(column[j - 1], in.type, rng));
      }
      int current = conjuncts_at_end(view, t);
      for (int step = 0; step < 300 && current < total; ++step) {
        const Input& in = pick(rng, spec.inputs);
        auto& column = t.columns[in.name];
        const Value saved = column[j];
        column[j] = redraw(in, j);
        const int next = conjuncts_at_end(view, t);
        if (next >= current)
          current = next;
        else
          column[j] = saved;
      }
      placed = current == total;
    }
    if (!placed) return std::nullopt;
  }
  return t;
}

}  // namespace

std::optional<Trace> admissible_trace(const Specification& spec, std::size_t length, Rng& rng, int restarts) {
  if (spec.inputs.empty() || length == 0) {
    Trace t = random_trace(spec, length, rng);
    return score(spec, t).first == length ? std::optional<Trace>(t) : std::nullopt;
  }
  const Specification view = conjunct_view(spec);
  for (int attempt = 0; attempt < restarts; ++attempt) {
    auto grown = grow(spec, view, length, rng);
    if (grown && (score(spec, *grown).first == length || climb(spec, *grown, rng))) return grown;
    Trace trace = random_trace(spec, length, rng);
    if (climb(spec, trace, rng)) return trace;
  }
  // Tight assumptions: start from inputs proposed by the solver. Its exact
  // arithmetic may sit on a boundary that floating point misses, which the
  // climb repairs.
  for (double pinned : {0.5, 0.3, 0.2, 0.1, 0.05, 0.0})
    for (const Rational& eps : {Rational(1, 1000000), Rational(0)}) {
      auto trace = solved_trace(spec, length, rng, pinned, eps);
      if (trace && climb(spec, *trace, rng)) return trace;
    }
  return std::nullopt;
}

bool admissible_length(const Specification& spec, std::size_t length) {
  if (length == 0) return true;
  Rng unused(0);
  return admissibility_query(spec, length, unused, 0.0, Rational(0)).answer != QueryResult::Answer::Unsat;
}

std::optional<std::map<std::string, std::vector<smt::ModelValue>>> solver_stream_values(const Specification& spec,
                                                                                        const Trace& trace,
                                                                                        const SolverConfig& cfg) {
  const auto n = static_cast<std::int64_t>(trace.length()) - 1;
  if (n < 0) return std::map<std::string, std::vector<smt::ModelValue>>{};
  VariableUniverse u(spec, n);
  std::ostringstream script;
  script << "(set-option :produce-models true)\n(set-logic " << cfg.logic << ")\n";
  for (const auto& v : u.variables())
    script << "(declare-const " << v.term->symbol << " " << smt::sort_name(v.term->sort) << ")\n";
  for (const auto& c : u.sort_constraints()) script << "(assert " << smt::to_string(c) << ")\n";
  for (const auto& in : spec.inputs)
    for (std::int64_t j = 0; j <= n; ++j) {
      const Value& v = trace.columns.at(in.name)[static_cast<std::size_t>(j)];
      smt::TermPtr value = std::holds_alternative<bool>(v) ? smt::boolean(std::get<bool>(v))
                                                           : smt::number(to_rational(v), sort_of(in.type));
      script << "(assert " << smt::to_string(smt::equals(u.at(in.name, j), value)) << ")\n";
    }
  std::vector<std::string> probes;
  for (std::size_t k = 0; k < spec.outputs.size(); ++k)
    for (std::int64_t j = 0; j <= n; ++j) {
      script << "(assert " << smt::to_string(equation(k, j, u)) << ")\n";
      probes.push_back(variable_name(spec.outputs[k].name, j));
    }
  script << "(check-sat)\n";
  QueryResult r = run_query(script.str(), probes, cfg, false);
  if (r.answer != QueryResult::Answer::Sat || r.values.size() != probes.size()) return std::nullopt;
  std::map<std::string, std::vector<smt::ModelValue>> values;
  std::size_t i = 0;
  for (const auto& out : spec.outputs)
    for (std::int64_t j = 0; j <= n; ++j) values[out.name].push_back(r.values[i++]);
  return values;
}

bool same_value(const Value& interpreted, const smt::ModelValue& solved) {
  if (const bool* b = std::get_if<bool>(&interpreted)) return solved.boolean && *solved.boolean == *b;
  if (!solved.number) return false;
  if (const auto* i = std::get_if<std::int64_t>(&interpreted)) return *solved.number == Rational(*i);
  const double expected = solved.number->convert_to<double>();
  const double actual = std::get<double>(interpreted);
  return std::abs(actual - expected) <= 1e-9 * std::max({1.0, std::abs(expected), std::abs(actual)});
}

std::string position_line(const std::string& name, std::int64_t n, const TemplateParams& params) {
  auto set = [](const Positions& p) {
    std::string s = "{";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "}";
  };
  return name + " N=" + std::to_string(n) + " assumed=" + set(params.assumed) + " hypotheses=" +
         set(params.hypotheses) + " equations=" + set(params.equations) + " goals=" + set(params.goals) + "\n";
}

std::filesystem::path source_dir() { return STREAMVERIFY_SOURCE_DIR; }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Specification load_file(const std::filesystem::path& path, const ConstantBindings& constants) {
  return load_specification(read_text(path), constants);
}

std::vector<CorpusEntry> corpus_entries() {
  std::vector<CorpusEntry> entries;
  const auto root = source_dir() / "corpus";
  for (const auto& dir : {root, root / "appendix"})
    for (const auto& f : std::filesystem::directory_iterator(dir))
      if (f.path().extension() == ".lola") {
        CorpusEntry e{std::filesystem::relative(f.path(), root).string(), {}};
        if (e.file.starts_with("imu_frozen")) e.constants["eps"] = "0.1";
        entries.push_back(std::move(e));
      }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.file < b.file; });
  return entries;
}

}  // namespace streamverify::testing
