#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace streamverify {

/// Exact rational used for literals and solver model values.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class ValueType { Bool, Int32, Int64, UInt64, Float32, Float64 };

std::string_view type_name(ValueType t);
std::optional<ValueType> parse_type_name(std::string_view name);

inline bool is_integer(ValueType t) {
  return t == ValueType::Int32 || t == ValueType::Int64 || t == ValueType::UInt64;
}
inline bool is_float(ValueType t) { return t == ValueType::Float32 || t == ValueType::Float64; }
inline bool is_numeric(ValueType t) { return t != ValueType::Bool; }

/// True if the integer value fits the (integer or float) type.
bool integer_fits(const BigInt& value, ValueType t);

/// Parses a decimal literal ("12", "-0.25", "1e-3", "2.5E+2") exactly.
std::optional<Rational> parse_decimal(std::string_view text);

/// Exact decimal rendering when the denominator is 2^a*5^b, otherwise "n/d".
/// `force_point` appends ".0" to integral values.
std::string format_rational(const Rational& r, bool force_point);

/// Position in a source file. Lines and columns are 1-based.
struct SourcePos {
  int line = 1;
  int column = 1;
};

struct SourceSpan {
  SourcePos begin;
  SourcePos end;
};

std::string to_string(const SourceSpan& span);

/// A user-facing error in a specification (syntax, typing, well-formedness).
class SpecError : public std::runtime_error {
 public:
  SpecError(SourceSpan span, std::string message, std::vector<std::string> expected = {});

  const SourceSpan& span() const { return span_; }
  const std::string& detail() const { return detail_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::string detail_;
  std::vector<std::string> expected_;
};

}  // namespace streamverify
