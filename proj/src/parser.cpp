#include "streamverify/frontend.hpp"

#include <array>
#include <cctype>
#include <set>

namespace streamverify {

namespace {

enum class Tok { Ident, Integer, Decimal, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

// Unicode spellings accepted as aliases of ASCII operators.
constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kUnicodeOps{{
    {"\xE2\x88\xA8", "or"},
    {"\xE2\x88\xA7", "and"},
    {"\xC2\xAC", "!"},
    {"\xE2\x89\xA4", "<="},
    {"\xE2\x89\xA5", ">="},
    {"\xE2\x89\xA0", "!="},
    {"\xE2\x86\x92", "->"},
}};

constexpr std::array<std::string_view, 9> kTwoCharPunct{":=", "..", "->", "<=", ">=", "==", "!=", "&&", "||"};
constexpr std::string_view kOneCharPunct = ":,()[].<>=!+-*/@";

const std::set<std::string, std::less<>> kKeywords{
    "input", "output", "trigger", "trigger_once", "assume", "assert", "import",
    "if",    "then",   "else",    "true",         "false",  "and",    "or", "not"};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.span.begin = pos();
      if (at_end()) {
        t.kind = Tok::End;
        t.span.end = pos();
        out.push_back(t);
        return out;
      }
      lex_one(t);
      t.span.end = pos();
      out.push_back(std::move(t));
    }
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return i_ + ahead < text_.size() ? text_[i_ + ahead] : '\0'; }
  SourcePos pos() const { return {line_, col_}; }

  void advance(std::size_t n = 1) {
    for (std::size_t k = 0; k < n && !at_end(); ++k) {
      unsigned char c = static_cast<unsigned char>(text_[i_]);
      ++i_;
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  void lex_one(Token& t) {
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) advance();
      t.kind = Tok::Ident;
      t.text = std::string(text_.substr(start, i_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      bool decimal = false;
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        decimal = true;
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
      if ((peek() == 'e' || peek() == 'E') &&
          (std::isdigit(static_cast<unsigned char>(peek(1))) ||
           ((peek(1) == '-' || peek(1) == '+') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
        decimal = true;
        advance(2);
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
      t.kind = decimal ? Tok::Decimal : Tok::Integer;
      t.text = std::string(text_.substr(start, i_ - start));
      return;
    }
    if (c == '"') {
      SourcePos begin = pos();
      advance();
      std::string s;
      while (!at_end() && peek() != '"' && peek() != '\n') {
        if (peek() == '\\' && (peek(1) == '"' || peek(1) == '\\')) advance();
        s.push_back(peek());
        advance();
      }
      if (peek() != '"') throw SpecError({begin, pos()}, "unterminated string literal", {"'\"'"});
      advance();
      t.kind = Tok::String;
      t.text = std::move(s);
      return;
    }
    for (const auto& [utf8, ascii] : kUnicodeOps) {
      if (text_.substr(i_, utf8.size()) == utf8) {
        advance(utf8.size());
        t.kind = ascii == "or" || ascii == "and" ? Tok::Ident : Tok::Punct;
        t.text = std::string(ascii);
        return;
      }
    }
    for (auto p : kTwoCharPunct) {
      if (text_.substr(i_, 2) == p) {
        advance(2);
        t.kind = Tok::Punct;
        t.text = std::string(p);
        return;
      }
    }
    if (kOneCharPunct.find(c) != std::string_view::npos) {
      advance();
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      return;
    }
    SourcePos begin = pos();
    std::size_t len = 1;
    unsigned char uc = static_cast<unsigned char>(c);
    if (uc >= 0xF0) len = 4;
    else if (uc >= 0xE0) len = 3;
    else if (uc >= 0xC0) len = 2;
    std::string bad(text_.substr(i_, len));
    advance(len);
    throw SpecError({begin, pos()}, "unexpected character '" + bad + "'");
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

SourceSpan join(const SourceSpan& a, const SourceSpan& b) { return {a.begin, b.end}; }

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  RawSpecification run() {
    RawSpecification spec;
    while (cur().kind != Tok::End) declaration(spec.items);
    check_unique_streams(spec);
    return spec;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  Token take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  bool is_punct(std::string_view p) const { return cur().kind == Tok::Punct && cur().text == p; }
  bool is_word(std::string_view w) const { return cur().kind == Tok::Ident && cur().text == w; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found = cur().kind == Tok::End ? "end of input" : "'" + cur().text + "'";
    throw SpecError(cur().span, "syntax error: unexpected " + found, std::move(expected));
  }

  Token expect_punct(std::string_view p) {
    if (!is_punct(p)) fail({"'" + std::string(p) + "'"});
    return take();
  }

  Token expect_word(std::string_view w) {
    if (!is_word(w)) fail({"'" + std::string(w) + "'"});
    return take();
  }

  Token expect_name() {
    if (cur().kind != Tok::Ident || kKeywords.count(cur().text)) fail({"identifier"});
    return take();
  }

  ValueType type_name_token() {
    if (cur().kind != Tok::Ident) fail({"type name"});
    Token t = take();
    auto type = parse_type_name(t.text);
    if (!type) throw SpecError(t.span, "unknown type name '" + t.text + "'",
                               {"Bool", "Int32", "Int64", "UInt64", "Float32", "Float64"});
    return *type;
  }

  void declaration(std::vector<Declaration>& items) {
    const Token& t = cur();
    if (t.kind == Tok::Ident) {
      if (t.text == "import") return items.push_back(import_decl());
      if (t.text == "input") return input_decl(items);
      if (t.text == "output") return items.push_back(output_decl());
      if (t.text == "trigger" || t.text == "trigger_once") return items.push_back(trigger_decl());
      if (t.text == "assume" || t.text == "assert") return items.push_back(annotation_decl());
    }
    fail({"'input'", "'output'", "'trigger'", "'trigger_once'", "'assume'", "'assert'", "'import'"});
  }

  Declaration import_decl() {
    Token kw = take();
    Token module = expect_name();
    if (module.text != "math") throw SpecError(module.span, "unknown module '" + module.text + "'", {"math"});
    return ImportDecl{module.text, join(kw.span, module.span)};
  }

  // `input a, b : T1, T2` declares one declaration per name.
  void input_decl(std::vector<Declaration>& items) {
    Token kw = take();
    std::vector<Token> names{expect_name()};
    while (is_punct(",")) {
      take();
      names.push_back(expect_name());
    }
    expect_punct(":");
    std::vector<ValueType> types{type_name_token()};
    SourceSpan end = toks_[i_ - 1].span;
    while (is_punct(",")) {
      take();
      types.push_back(type_name_token());
      end = toks_[i_ - 1].span;
    }
    if (types.size() != 1 && types.size() != names.size())
      throw SpecError(join(kw.span, end), "input declares " + std::to_string(names.size()) + " names but " +
                                               std::to_string(types.size()) + " types");
    for (std::size_t k = 0; k < names.size(); ++k)
      items.push_back(InputDecl{names[k].text, types.size() == 1 ? types[0] : types[k], join(names[k].span, end)});
  }

  Declaration output_decl() {
    Token kw = take();
    Token name = expect_name();
    std::optional<ValueType> declared;
    if (is_punct(":")) {
      take();
      declared = type_name_token();
    }
    if (is_punct("@")) {
      Token at = take();
      ExprPtr activation = expr();
      throw SpecError(join(at.span, activation->span),
                      "activation condition '@ ...' on output '" + name.text +
                          "' is real-time syntax and is not supported; declare the output without it");
    }
    expect_punct(":=");
    ExprPtr e = expr();
    return OutputDecl{name.text, declared, e, join(kw.span, e->span)};
  }

  Declaration trigger_decl() {
    Token kw = take();
    ExprPtr cond = expr();
    TriggerDecl d;
    d.condition = cond;
    d.once = kw.text == "trigger_once";
    d.span = join(kw.span, cond->span);
    if (cur().kind == Tok::String) {
      Token msg = take();
      d.message = msg.text;
      d.span = join(kw.span, msg.span);
    }
    return d;
  }

  Declaration annotation_decl() {
    Token kw = take();
    expect_punct("<");
    Token id = expect_name();
    expect_punct(">");
    ExprPtr f = expr();
    return AnnotationDecl{kw.text == "assume" ? AnnotationDecl::Kind::Assume : AnnotationDecl::Kind::Assert,
                          id.text, f, join(kw.span, f->span)};
  }

  // ---- expressions, lowest precedence first ----

  ExprPtr expr() { return implies(); }

  ExprPtr implies() {
    ExprPtr lhs = disjunction();
    if (is_punct("->")) {
      take();
      ExprPtr rhs = implies();
      return Expr::make_apply(Op::Implies, {lhs, rhs}, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  ExprPtr disjunction() {
    ExprPtr lhs = conjunction();
    while (is_word("or") || is_punct("||")) {
      take();
      ExprPtr rhs = conjunction();
      lhs = Expr::make_apply(Op::Or, {lhs, rhs}, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  ExprPtr conjunction() {
    ExprPtr lhs = comparison();
    while (is_word("and") || is_punct("&&")) {
      take();
      ExprPtr rhs = comparison();
      lhs = Expr::make_apply(Op::And, {lhs, rhs}, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  std::optional<Op> comparison_op() const {
    if (cur().kind != Tok::Punct) return std::nullopt;
    const std::string& p = cur().text;
    if (p == "=" || p == "==") return Op::Eq;
    if (p == "!=") return Op::Ne;
    if (p == "<") return Op::Lt;
    if (p == "<=") return Op::Le;
    if (p == ">") return Op::Gt;
    if (p == ">=") return Op::Ge;
    return std::nullopt;
  }

  // `a <= b <= c` reads as `a <= b and b <= c`.
  ExprPtr comparison() {
    ExprPtr lhs = additive();
    ExprPtr result;
    while (auto op = comparison_op()) {
      take();
      ExprPtr rhs = additive();
      ExprPtr cmp = Expr::make_apply(*op, {lhs, rhs}, join(lhs->span, rhs->span));
      result = result ? Expr::make_apply(Op::And, {result, cmp}, join(result->span, cmp->span)) : cmp;
      lhs = rhs;
    }
    return result ? result : lhs;
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    while (is_punct("+") || is_punct("-")) {
      Op op = take().text == "+" ? Op::Add : Op::Sub;
      ExprPtr rhs = multiplicative();
      lhs = Expr::make_apply(op, {lhs, rhs}, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = unary();
    while (is_punct("*") || is_punct("/")) {
      Op op = take().text == "*" ? Op::Mul : Op::Div;
      ExprPtr rhs = unary();
      lhs = Expr::make_apply(op, {lhs, rhs}, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  ExprPtr unary() {
    if (is_punct("-")) {
      Token minus = take();
      if (cur().kind == Tok::Integer || cur().kind == Tok::Decimal) {
        ExprPtr lit = literal();
        return Expr::make_number(-lit->constant.number, lit->literal, join(minus.span, lit->span));
      }
      ExprPtr operand = unary();
      return Expr::make_apply(Op::Neg, {operand}, join(minus.span, operand->span));
    }
    if (is_punct("!") || is_word("not")) {
      Token bang = take();
      ExprPtr operand = unary();
      return Expr::make_apply(Op::Not, {operand}, join(bang.span, operand->span));
    }
    return postfix();
  }

  std::int64_t signed_integer() {
    bool negative = false;
    if (is_punct("-") || is_punct("+")) negative = take().text == "-";
    if (cur().kind != Tok::Integer) fail({"integer offset"});
    Token t = take();
    auto v = parse_decimal(t.text);
    if (!v || *v > 1'000'000) throw SpecError(t.span, "offset out of range");
    auto k = static_cast<std::int64_t>(boost::multiprecision::numerator(*v));
    return negative ? -k : k;
  }

  ExprPtr offset_default() {
    ExprPtr d = expr();
    if (d->kind == Expr::Kind::StreamRef && (d->name == "f" || d->name == "t")) {
      auto copy = std::make_shared<Expr>(*d);
      copy->bool_shorthand = true;
      return copy;
    }
    return d;
  }

  Op fold_operator() {
    const Token& t = cur();
    std::optional<Op> op;
    if (t.kind == Tok::Ident) {
      if (t.text == "and") op = Op::And;
      else if (t.text == "or") op = Op::Or;
    } else if (t.kind == Tok::Punct) {
      if (auto c = comparison_op()) op = c;
      else if (t.text == "&&") op = Op::And;
      else if (t.text == "||") op = Op::Or;
      else if (t.text == "->") op = Op::Implies;
      else if (t.text == "+") op = Op::Add;
      else if (t.text == "-") op = Op::Sub;
      else if (t.text == "*") op = Op::Mul;
      else if (t.text == "/") op = Op::Div;
    }
    if (!op) fail({"binary operator"});
    take();
    return *op;
  }

  ExprPtr postfix() {
    ExprPtr base = primary();
    if (base->kind != Expr::Kind::StreamRef) return base;
    const std::string& name = base->name;
    if (is_punct("[")) {
      take();
      std::int64_t from = signed_integer();
      if (is_punct("..")) {
        take();
        std::int64_t to = signed_integer();
        expect_punct(",");
        ExprPtr d = offset_default();
        expect_punct(",");
        Op op = fold_operator();
        Token close = expect_punct("]");
        return Expr::make_fold(name, from, to, d, op, join(base->span, close.span));
      }
      expect_punct(",");
      ExprPtr d = offset_default();
      Token close = expect_punct("]");
      return Expr::make_offset(name, from, d, join(base->span, close.span));
    }
    if (is_punct(".")) {
      take();
      expect_word("offset");
      expect_punct("(");
      expect_word("by");
      expect_punct(":");
      std::int64_t k = signed_integer();
      expect_punct(")");
      expect_punct(".");
      expect_word("defaults");
      expect_punct("(");
      expect_word("to");
      expect_punct(":");
      ExprPtr d = offset_default();
      Token close = expect_punct(")");
      return Expr::make_offset(name, k, d, join(base->span, close.span));
    }
    return base;
  }

  ExprPtr literal() {
    Token t = take();
    auto v = parse_decimal(t.text);
    if (!v) throw SpecError(t.span, "malformed number '" + t.text + "'");
    return Expr::make_number(*v, t.kind == Tok::Integer ? Expr::Literal::Integer : Expr::Literal::Decimal,
                             t.span);
  }

  ExprPtr primary() {
    const Token& t = cur();
    if (t.kind == Tok::Integer || t.kind == Tok::Decimal) return literal();
    if (is_punct("(")) {
      Token open = take();
      ExprPtr inner = expr();
      Token close = expect_punct(")");
      auto copy = std::make_shared<Expr>(*inner);
      copy->span = join(open.span, close.span);
      return copy;
    }
    if (is_word("true") || is_word("false")) {
      Token b = take();
      return Expr::make_bool(b.text == "true", b.span);
    }
    if (is_word("if")) {
      Token kw = take();
      ExprPtr c = expr();
      expect_word("then");
      ExprPtr a = expr();
      expect_word("else");
      ExprPtr b = expr();
      return Expr::make_ite(c, a, b, join(kw.span, b->span));
    }
    if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
      Token name = take();
      if (is_punct("(")) {
        auto fn = function_by_name(name.text);
        if (!fn) throw SpecError(name.span, "unknown function '" + name.text + "'",
                                 {"cast", "abs", "min", "max", "sqrt", "sin", "cos", "arctan"});
        take();
        std::vector<ExprPtr> args{expr()};
        while (is_punct(",")) {
          take();
          args.push_back(expr());
        }
        Token close = expect_punct(")");
        if (static_cast<int>(args.size()) != op_arity(*fn))
          throw SpecError(join(name.span, close.span), "function '" + name.text + "' takes " +
                                                           std::to_string(op_arity(*fn)) + " argument(s)");
        return Expr::make_apply(*fn, std::move(args), join(name.span, close.span));
      }
      return Expr::make_ref(name.text, name.span);
    }
    fail({"expression"});
  }

  static void check_unique_streams(const RawSpecification& spec) {
    std::set<std::string> seen;
    for (const auto& item : spec.items) {
      const std::string* name = nullptr;
      SourceSpan span;
      if (const auto* in = std::get_if<InputDecl>(&item)) {
        name = &in->name;
        span = in->span;
      } else if (const auto* out = std::get_if<OutputDecl>(&item)) {
        name = &out->name;
        span = out->span;
      }
      if (name && !seen.insert(*name).second)
        throw SpecError(span, "duplicate stream name '" + *name + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

RawSpecification parse(std::string_view text) { return Parser(Lexer(text).run()).run(); }

}  // namespace streamverify
