#include "streamverify/types.hpp"

#include <array>
#include <cctype>
#include <limits>
#include <sstream>

namespace streamverify {

namespace {

constexpr std::array<std::pair<ValueType, std::string_view>, 6> kTypeNames{{
    {ValueType::Bool, "Bool"},
    {ValueType::Int32, "Int32"},
    {ValueType::Int64, "Int64"},
    {ValueType::UInt64, "UInt64"},
    {ValueType::Float32, "Float32"},
    {ValueType::Float64, "Float64"},
}};

}  // namespace

std::string_view type_name(ValueType t) {
  for (const auto& [type, name] : kTypeNames)
    if (type == t) return name;
  return "?";
}

std::optional<ValueType> parse_type_name(std::string_view name) {
  for (const auto& [type, n] : kTypeNames)
    if (n == name) return type;
  return std::nullopt;
}

bool integer_fits(const BigInt& value, ValueType t) {
  switch (t) {
    case ValueType::Int32:
      return value >= std::numeric_limits<std::int32_t>::min() &&
             value <= std::numeric_limits<std::int32_t>::max();
    case ValueType::Int64:
      return value >= std::numeric_limits<std::int64_t>::min() &&
             value <= std::numeric_limits<std::int64_t>::max();
    case ValueType::UInt64:
      return value >= 0 && value <= std::numeric_limits<std::uint64_t>::max();
    case ValueType::Float32:
    case ValueType::Float64:
      return true;
    case ValueType::Bool:
      return false;
  }
  return false;
}

std::optional<Rational> parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  BigInt digits = 0;
  int scale = 0;
  bool any_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits = digits * 10 + (text[i] - '0');
    any_digit = true;
    ++i;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits = digits * 10 + (text[i] - '0');
      --scale;
      any_digit = true;
      ++i;
    }
  }
  if (!any_digit) return std::nullopt;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    int exponent = 0;
    bool exp_digit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 4000) return std::nullopt;
      exp_digit = true;
      ++i;
    }
    if (!exp_digit) return std::nullopt;
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != text.size()) return std::nullopt;
  BigInt pow10 = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
  Rational result = scale < 0 ? Rational(digits, pow10) : Rational(digits * pow10);
  return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& r, bool force_point) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) {
    std::string s = num.str();
    return force_point ? s + ".0" : s;
  }
  // Terminating decimal iff den = 2^a * 5^b.
  BigInt rest = den;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return num.str() + "/" + den.str();
  int places = std::max(twos, fives);
  BigInt scaled = num * boost::multiprecision::pow(BigInt(10), places) / den;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (static_cast<int>(digits.size()) <= places)
    digits.insert(0, static_cast<std::size_t>(places) - digits.size() + 1, '0');
  digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  return negative ? "-" + digits : digits;
}

std::string to_string(const SourceSpan& span) {
  std::ostringstream os;
  os << span.begin.line << ":" << span.begin.column;
  return os.str();
}

namespace {

std::string compose_message(const SourceSpan& span, const std::string& message,
                            const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << to_string(span) << ": " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
    os << ")";
  }
  return os.str();
}

}  // namespace

SpecError::SpecError(SourceSpan span, std::string message, std::vector<std::string> expected)
    : std::runtime_error(compose_message(span, message, expected)),
      span_(span),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

}  // namespace streamverify
