#include "perdyn/rational.hpp"

#include <cctype>

#include "perdyn/error.hpp"

namespace perdyn {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw InvalidInput("malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw InvalidInput("malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Fixed-point digits of |r| * 10^places, with the requested rounding.
std::string format_scaled(const Rational& r, int places, bool round_up) {
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  const bool negative = num < 0;
  const BigInt scaled = (negative ? BigInt(-num) : num) * scale;
  BigInt q = scaled / den;
  const BigInt rem = scaled % den;
  if (round_up) {
    // toward +infinity: magnitude grows only when positive
    if (rem != 0 && !negative) q += 1;
  } else {
    const BigInt twice = rem * 2;
    if (twice > den || (twice == den && (q & 1) != 0)) q += 1;
  }
  std::string digits = q.str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
  }
  std::string out;
  if (negative && q != 0) out.push_back('-');
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - static_cast<std::size_t>(places));
  }
  return out;
}

} // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view t = trim(text);
  const auto slash = t.find('/');
  const auto dot = t.find('.');
  if (slash == std::string_view::npos && dot != std::string_view::npos) {
    // decimal "-0.125"
    const std::string_view frac = t.substr(dot + 1);
    if (frac.empty() || frac.front() == '+' || frac.front() == '-') {
      throw InvalidInput("malformed rational '" + std::string(text) + "'");
    }
    std::string head(t.substr(0, dot));
    const bool negative = !head.empty() && head.front() == '-';
    if (head.empty() || head == "-" || head == "+") head += "0";
    const BigInt whole = parse_integer(head, text);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const Rational part(parse_integer(frac, text), scale);
    return negative ? Rational(whole) - part : Rational(whole) + part;
  }
  if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
  const BigInt num = parse_integer(trim(t.substr(0, slash)), text);
  const BigInt den = parse_integer(trim(t.substr(slash + 1)), text);
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::size_t bit_length(const BigInt& n) {
  if (n == 0) return 0;
  return boost::multiprecision::msb(n < 0 ? BigInt(-n) : n) + 1;
}

std::string to_decimal(const Rational& r, int places) { return format_scaled(r, places, false); }

std::string to_decimal_up(const Rational& r, int places) { return format_scaled(r, places, true); }

} // namespace perdyn
