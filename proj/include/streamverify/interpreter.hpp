#pragma once

#include "streamverify/ast.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace streamverify {

/// Concrete stream value. Integers of every width are held in 64 bits and
/// range-checked against their declared type; floats are evaluated as double.
using Value = std::variant<bool, std::int64_t, double>;

std::string format_value(const Value& v);
/// Same value as an exact rational (floats converted exactly).
Rational to_rational(const Value& v);

/// Input values, one column per input stream.
struct Trace {
  std::map<std::string, std::vector<Value>> columns;
  /// Length when there are no columns (specifications without inputs).
  std::size_t rows = 0;

  std::size_t length() const;
};

struct TriggerEvent {
  std::size_t position;
  std::string message;

  bool operator==(const TriggerEvent&) const = default;
};

struct EvaluationResult {
  std::size_t length = 0;
  /// Inputs and outputs.
  std::map<std::string, std::vector<Value>> streams;
  std::vector<TriggerEvent> triggers;
  /// Per identifier and position: conjunction of its assumptions/assertions.
  std::map<std::string, std::vector<bool>> assumption_holds;
  std::map<std::string, std::vector<bool>> assertion_holds;
};

struct AnnotationVerdict {
  std::string id;
  /// Positions where every assumption holds but some assertion fails.
  std::vector<std::size_t> violations;

  bool respected() const { return violations.empty(); }
};

/// Concrete evaluation failure (division by zero, overflow, cyclic demand).
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::string stream, std::size_t position, const std::string& what);

  const std::string& stream() const { return stream_; }
  std::size_t position() const { return position_; }

 private:
  std::string stream_;
  std::size_t position_;
};

/// Malformed trace file or trace not matching the specification's inputs.
class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Offline evaluation of a desugared specification over a whole trace.
EvaluationResult evaluate(const Specification& spec, const Trace& trace);

std::vector<AnnotationVerdict> check_annotations(const Specification& spec, const EvaluationResult& result);
std::vector<AnnotationVerdict> check_annotations(const Specification& spec, const Trace& trace);

/// Validates shape and types of a trace against the inputs of `spec`.
void validate_trace(const Specification& spec, const Trace& trace);

/// CSV: header of input names (any order), one row per position.
Trace read_trace_csv(std::string_view text, const Specification& spec);
std::string write_trace_csv(const Trace& trace, const Specification& spec);

}  // namespace streamverify
