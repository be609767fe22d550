#include "streamverify/smt.hpp"

#include <cctype>
#include <set>
#include <stdexcept>

namespace streamverify::smt {

std::string_view sort_name(Sort s) {
  switch (s) {
    case Sort::Bool: return "Bool";
    case Sort::Int: return "Int";
    case Sort::Real: return "Real";
  }
  return "?";
}

TermPtr variable(std::string name, Sort sort) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Variable;
  t->sort = sort;
  t->symbol = std::move(name);
  return t;
}

TermPtr boolean(bool v) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::BoolConst;
  t->boolean = v;
  return t;
}

TermPtr number(Rational v, Sort sort) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Number;
  t->sort = sort;
  t->number = std::move(v);
  return t;
}

TermPtr app(std::string symbol, Sort sort, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::App;
  t->sort = sort;
  t->symbol = std::move(symbol);
  t->args = std::move(args);
  return t;
}

TermPtr conjunction(std::vector<TermPtr> terms) {
  if (terms.empty()) return boolean(true);
  if (terms.size() == 1) return terms.front();
  return app("and", Sort::Bool, std::move(terms));
}

TermPtr implies(TermPtr a, TermPtr b) { return app("=>", Sort::Bool, {std::move(a), std::move(b)}); }
TermPtr negation(TermPtr a) { return app("not", Sort::Bool, {std::move(a)}); }
TermPtr equals(TermPtr a, TermPtr b) { return app("=", Sort::Bool, {std::move(a), std::move(b)}); }

namespace {

std::string number_text(const Rational& r, Sort sort) {
  bool negative = r < 0;
  Rational magnitude = negative ? Rational(-r) : r;
  std::string body;
  if (sort == Sort::Int) {
    body = boost::multiprecision::numerator(magnitude).str();
  } else {
    body = format_rational(magnitude, true);
    if (auto slash = body.find('/'); slash != std::string::npos)
      body = "(/ " + body.substr(0, slash) + ".0 " + body.substr(slash + 1) + ".0)";
  }
  return negative ? "(- " + body + ")" : body;
}

void print(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case Term::Kind::Variable:
      out += t->symbol;
      return;
    case Term::Kind::BoolConst:
      out += t->boolean ? "true" : "false";
      return;
    case Term::Kind::Number:
      out += number_text(t->number, t->sort);
      return;
    case Term::Kind::App:
      break;
  }
  out += '(';
  out += t->symbol;
  for (const auto& a : t->args) {
    out += ' ';
    print(a, out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const TermPtr& t) {
  std::string out;
  print(t, out);
  return out;
}

std::vector<TermPtr> free_variables(const TermPtr& root) {
  std::vector<TermPtr> vars;
  std::set<std::string> seen;
  std::set<const Term*> visited;
  std::vector<const TermPtr*> stack{&root};
  while (!stack.empty()) {
    const TermPtr& t = *stack.back();
    stack.pop_back();
    if (!visited.insert(t.get()).second) continue;
    if (t->kind == Term::Kind::Variable && seen.insert(t->symbol).second) vars.push_back(t);
    for (auto it = t->args.rbegin(); it != t->args.rend(); ++it) stack.push_back(&*it);
  }
  return vars;
}

std::vector<TermPtr> applications(const TermPtr& root, std::string_view prefix) {
  std::vector<TermPtr> found;
  std::set<std::string> seen;
  std::set<const Term*> visited;
  std::vector<const TermPtr*> stack{&root};
  while (!stack.empty()) {
    const TermPtr& t = *stack.back();
    stack.pop_back();
    if (!visited.insert(t.get()).second) continue;
    if (t->kind == Term::Kind::App && t->symbol.starts_with(prefix) && seen.insert(to_string(t)).second)
      found.push_back(t);
    for (auto it = t->args.rbegin(); it != t->args.rend(); ++it) stack.push_back(&*it);
  }
  return found;
}

std::string SExpr::to_string() const {
  if (!is_list) return atom;
  std::string s = "(";
  for (std::size_t i = 0; i < list.size(); ++i) s += (i ? " " : "") + list[i].to_string();
  return s + ")";
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
  std::vector<SExpr> top;
  std::vector<SExpr> stack;
  std::size_t i = 0;
  auto emit = [&](SExpr e) {
    if (stack.empty())
      top.push_back(std::move(e));
    else
      stack.back().list.push_back(std::move(e));
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(') {
      SExpr e;
      e.is_list = true;
      stack.push_back(std::move(e));
      ++i;
    } else if (c == ')') {
      if (stack.empty()) throw std::runtime_error("unbalanced ')' in solver output");
      SExpr e = std::move(stack.back());
      stack.pop_back();
      emit(std::move(e));
      ++i;
    } else if (c == '"' || c == '|') {
      std::size_t start = i++;
      while (i < text.size()) {
        if (text[i] == c) {
          // "" escapes a quote inside SMT-LIB strings.
          if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
            i += 2;
            continue;
          }
          break;
        }
        ++i;
      }
      if (i >= text.size()) throw std::runtime_error("unterminated literal in solver output");
      ++i;
      emit(SExpr{std::string(text.substr(start, i - start)), {}, false});
    } else {
      std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
             text[i] != ')' && text[i] != ';')
        ++i;
      emit(SExpr{std::string(text.substr(start, i - start)), {}, false});
    }
  }
  if (!stack.empty()) throw std::runtime_error("unbalanced '(' in solver output");
  return top;
}

namespace {

std::optional<Rational> numeric(const SExpr& e) {
  if (!e.is_list) return parse_decimal(e.atom);
  if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "-") {
    auto v = numeric(e.list[1]);
    if (v) return Rational(-*v);
    return std::nullopt;
  }
  if (e.list.size() == 3 && !e.list[0].is_list && e.list[0].atom == "/") {
    auto a = numeric(e.list[1]), b = numeric(e.list[2]);
    if (a && b && *b != 0) return Rational(*a / *b);
    return std::nullopt;
  }
  if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "to_real") return numeric(e.list[1]);
  return std::nullopt;
}

}  // namespace

ModelValue model_value(const SExpr& e) {
  ModelValue v;
  v.raw = e.to_string();
  if (!e.is_list && (e.atom == "true" || e.atom == "false"))
    v.boolean = e.atom == "true";
  else
    v.number = numeric(e);
  return v;
}

std::string render(const ModelValue& v, Sort sort) {
  if (v.boolean) return *v.boolean ? "true" : "false";
  if (v.number) return format_rational(*v.number, sort == Sort::Real);
  return v.raw;
}

std::map<std::string, ModelValue> parse_model(const SExpr& model) {
  std::map<std::string, ModelValue> values;
  for (const auto& entry : model.list) {
    if (!entry.is_list || entry.list.size() != 5 || entry.list[0].atom != "define-fun") continue;
    // Only constants: empty parameter list.
    if (!entry.list[2].is_list || !entry.list[2].list.empty()) continue;
    values[entry.list[1].atom] = model_value(entry.list[4]);
  }
  return values;
}

}  // namespace streamverify::smt
