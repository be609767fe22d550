#pragma once

#include "streamverify/types.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace streamverify {

enum class Op {
  Add, Sub, Mul, Div, Neg,
  Not, And, Or, Implies,
  Eq, Ne, Lt, Le, Gt, Ge,
  Cast, Abs, Min, Max, Sqrt, Sin, Cos, Arctan,
};

std::string_view op_symbol(Op op);
int op_arity(Op op);
bool is_comparison(Op op);
/// Functions that need `import math`.
bool is_math_function(Op op);
/// Functions mapped to uninterpreted solver symbols.
bool is_transcendental(Op op);
std::optional<Op> function_by_name(std::string_view name);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Literal value. Numbers are exact; the type says how to read them.
struct Constant {
  bool boolean = false;
  Rational number;
};

/// Stream expression tree. The five core cases are Constant, StreamRef, Ite,
/// Apply and Offset; RangeFold only exists before desugaring.
struct Expr {
  enum class Kind { Constant, StreamRef, Ite, Apply, Offset, RangeFold };

  Kind kind = Kind::Constant;
  SourceSpan span;
  /// Set by type inference.
  std::optional<ValueType> type;

  Constant constant;
  /// Constant: how the literal was written (drives literal typing).
  enum class Literal { Bool, Integer, Decimal } literal = Literal::Bool;

  /// StreamRef, Offset and RangeFold target.
  std::string name;
  /// StreamRef written as `f`/`t` inside an offset default.
  bool bool_shorthand = false;

  /// Apply operator, RangeFold combining operator.
  Op op = Op::Add;

  /// Ite: cond, then, else. Apply: operands. Offset and RangeFold: default.
  std::vector<ExprPtr> args;

  /// Offset amount, RangeFold lower bound.
  std::int64_t offset = 0;
  /// RangeFold upper bound.
  std::int64_t offset_to = 0;

  static ExprPtr make_bool(bool v, SourceSpan span = {});
  static ExprPtr make_number(Rational v, Literal lit, SourceSpan span = {});
  static ExprPtr make_ref(std::string name, SourceSpan span = {});
  static ExprPtr make_ite(ExprPtr c, ExprPtr t, ExprPtr e, SourceSpan span = {});
  static ExprPtr make_apply(Op op, std::vector<ExprPtr> args, SourceSpan span = {});
  static ExprPtr make_offset(std::string name, std::int64_t k, ExprPtr dflt, SourceSpan span = {});
  static ExprPtr make_fold(std::string name, std::int64_t from, std::int64_t to, ExprPtr dflt, Op op,
                           SourceSpan span = {});

  const ExprPtr& cond() const { return args.at(0); }
  const ExprPtr& then_branch() const { return args.at(1); }
  const ExprPtr& else_branch() const { return args.at(2); }
  const ExprPtr& default_value() const { return args.at(0); }
};

/// Structural equality; spans are ignored, types are compared.
bool equal(const ExprPtr& a, const ExprPtr& b);

/// Calls `fn` on every node in pre-order.
template <typename Fn>
void visit(const ExprPtr& e, Fn&& fn) {
  fn(*e);
  for (const auto& a : e->args) visit(a, fn);
}

struct InputDecl {
  std::string name;
  ValueType type;
  SourceSpan span;
};

struct OutputDecl {
  std::string name;
  std::optional<ValueType> declared;
  ExprPtr expr;
  SourceSpan span;
};

struct TriggerDecl {
  ExprPtr condition;
  std::optional<std::string> message;
  bool once = false;
  SourceSpan span;
};

struct AnnotationDecl {
  enum class Kind { Assume, Assert };
  Kind kind;
  std::string id;
  ExprPtr formula;
  SourceSpan span;
};

struct ImportDecl {
  std::string module;
  SourceSpan span;
};

using Declaration = std::variant<InputDecl, OutputDecl, TriggerDecl, AnnotationDecl, ImportDecl>;

/// Parser output: declarations in source order.
struct RawSpecification {
  std::vector<Declaration> items;
};

struct Input {
  std::string name;
  ValueType type;
};

struct Output {
  std::string name;
  ValueType type;
  ExprPtr expr;
};

struct Trigger {
  ExprPtr condition;
  std::string message;
};

struct Annotation {
  std::string id;
  ExprPtr formula;
};

/// Typed specification shared by every later phase.
struct Specification {
  std::vector<Input> inputs;
  std::vector<Output> outputs;
  std::vector<Trigger> triggers;
  /// trigger_once declarations, removed by desugar.
  std::vector<Trigger> once_triggers;
  std::vector<Annotation> assumptions;
  std::vector<Annotation> assertions;
  bool math_imported = false;

  /// Identifier universe in order of first appearance.
  std::vector<std::string> identifiers() const;
  std::vector<ExprPtr> assume(const std::string& id) const;
  std::vector<ExprPtr> assert_(const std::string& id) const;

  const Input* find_input(const std::string& name) const;
  const Output* find_output(const std::string& name) const;
  std::optional<ValueType> stream_type(const std::string& name) const;
  bool has_stream(const std::string& name) const;
  std::size_t output_index(const std::string& name) const;
};

bool equal(const Specification& a, const Specification& b);

}  // namespace streamverify
