#pragma once

#include "streamverify/types.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace streamverify::smt {

enum class Sort { Bool, Int, Real };

std::string_view sort_name(Sort s);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Solver term. Applications keep their SMT-LIB symbol verbatim.
struct Term {
  enum class Kind { Variable, BoolConst, Number, App };

  Kind kind = Kind::BoolConst;
  Sort sort = Sort::Bool;
  /// Variable name or function symbol.
  std::string symbol;
  bool boolean = false;
  Rational number;
  std::vector<TermPtr> args;
};

TermPtr variable(std::string name, Sort sort);
TermPtr boolean(bool v);
TermPtr number(Rational v, Sort sort);
TermPtr app(std::string symbol, Sort sort, std::vector<TermPtr> args);

/// n-ary conjunction; empty is `true`, singleton is the term itself.
TermPtr conjunction(std::vector<TermPtr> terms);
TermPtr implies(TermPtr a, TermPtr b);
TermPtr negation(TermPtr a);
TermPtr equals(TermPtr a, TermPtr b);

std::string to_string(const TermPtr& t);

/// Variables in first-occurrence order.
std::vector<TermPtr> free_variables(const TermPtr& t);
/// Every distinct application of a symbol starting with `prefix`.
std::vector<TermPtr> applications(const TermPtr& t, std::string_view prefix);

/// Parsed S-expression from solver output.
struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;

  std::string to_string() const;
};

/// Parses a sequence of S-expressions; throws std::runtime_error.
std::vector<SExpr> parse_sexprs(std::string_view text);

/// A value reported by the solver.
struct ModelValue {
  /// Solver text, e.g. "(- 4)" or "(root-obj ...)".
  std::string raw;
  std::optional<bool> boolean;
  std::optional<Rational> number;
};

ModelValue model_value(const SExpr& e);

/// Exact rendering: booleans, integers, reals with ".0" or exact decimal or n/d.
std::string render(const ModelValue& v, Sort sort);

/// Reads `(define-fun name () Sort value)` entries of a `(get-model)` reply.
std::map<std::string, ModelValue> parse_model(const SExpr& model);

}  // namespace streamverify::smt
