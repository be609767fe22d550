#pragma once

#include "streamverify/ast.hpp"
#include "streamverify/smt.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace streamverify {

smt::Sort sort_of(ValueType t);

/// Solver name of a stream value: `stream@position`.
std::string variable_name(const std::string& stream, std::int64_t position);
/// Inverse of variable_name.
std::optional<std::pair<std::string, std::int64_t>> parse_variable_name(const std::string& name);

/// Solver variables for every stream at positions 0..N.
class VariableUniverse {
 public:
  struct Variable {
    std::string stream;
    std::int64_t position;
    ValueType type;
    bool input;
    smt::TermPtr term;
  };

  VariableUniverse(const Specification& spec, std::int64_t n);

  std::int64_t n() const { return n_; }
  const Specification& spec() const { return *spec_; }
  const std::vector<Variable>& variables() const { return variables_; }
  /// Throws std::out_of_range outside 0..N or for unknown streams.
  const smt::TermPtr& at(const std::string& stream, std::int64_t position) const;
  /// `(>= v 0)` for every UInt64 variable.
  std::vector<smt::TermPtr> sort_constraints() const;

 private:
  const Specification* spec_;
  std::int64_t n_;
  std::vector<Variable> variables_;
  std::map<std::string, std::size_t> first_;
};

/// Uninterpreted stand-ins for transcendental functions and their range axioms.
struct FunctionTable {
  static constexpr std::string_view prefix = "sv_";
  /// Solver symbol for a transcendental operator.
  static std::string symbol(Op op);
  /// `(declare-fun ...)` lines for the symbols used in `terms`.
  static std::vector<std::string> declarations(const std::vector<smt::TermPtr>& terms);
  /// Range axioms for every application occurring in `terms`.
  static std::vector<smt::TermPtr> axioms(const std::vector<smt::TermPtr>& terms);
};

/// smt(e)(j) over the window 0..N of `u`.
smt::TermPtr encode(const ExprPtr& e, std::int64_t j, const VariableUniverse& u);

/// σ_k^j = smt(e_k)(j).
smt::TermPtr equation(std::size_t k, std::int64_t j, const VariableUniverse& u);

/// For each division in `e` evaluated at j: its divisor is nonzero whenever
/// the branch containing it is taken.
std::vector<smt::TermPtr> well_definedness_side_conditions(const ExprPtr& e, std::int64_t j,
                                                           const VariableUniverse& u);

}  // namespace streamverify
