#include "wcasc/rational.hpp"

#include <cctype>

namespace wcasc {

std::string to_string(const Rational& r) {
  std::string num = numerator(r).str();
  if (denominator(r) == 1) {
    return num;
  }
  return num + "/" + denominator(r).str();
}

namespace {

bool parse_digits(std::string_view text, BigInt& out) {
  if (text.empty()) {
    return false;
  }
  out = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
    out = out * 10 + (c - '0');
  }
  return true;
}

}  // namespace

std::optional<Rational> try_parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  BigInt num;
  BigInt den = 1;
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!parse_digits(text, num)) {
      return std::nullopt;
    }
  } else {
    if (!parse_digits(text.substr(0, slash), num) ||
        !parse_digits(text.substr(slash + 1), den) || den == 0) {
      return std::nullopt;
    }
  }
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace wcasc
