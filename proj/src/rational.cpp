#include "tarski/rational.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace tarski {

BigInt floor_of(const Rational& r) {
  BigInt n = num_of(r);
  BigInt d = den_of(r);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& r) {
  BigInt n = num_of(r);
  BigInt d = den_of(r);
  BigInt q = n / d;
  if (n % d != 0 && n > 0) q += 1;
  return q;
}

BigInt round_half_up(const Rational& r) { return floor_of(r + Rational(1, 2)); }

std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
  }
  return v.convert_to<std::int64_t>();
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("bad number: '" + std::string(whole) + "'");
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) throw std::invalid_argument("bad number: '" + std::string(whole) + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      throw std::invalid_argument("bad number: '" + std::string(whole) + "'");
    }
  }
  // Leading zeros would select octal in the BigInt string constructor.
  const bool negative = s[0] == '-';
  std::string digits(s.substr(i));
  const auto nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  BigInt v(digits);
  return negative ? BigInt(-v) : v;
}

BigInt pow10(long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string_view whole = text;
  if (text.empty()) throw std::invalid_argument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt p = parse_integer(text.substr(0, slash), whole);
    BigInt q = parse_integer(text.substr(slash + 1), whole);
    if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
    return Rational(p, q);
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    BigInt ev = parse_integer(text.substr(e + 1), whole);
    if (ev > 10000 || ev < -10000) throw std::invalid_argument("exponent out of range: '" + std::string(whole) + "'");
    exponent = ev.convert_to<long>();
    text = text.substr(0, e);
  }
  bool negative = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    frac_len = static_cast<long>(text.size() - dot - 1);
  } else {
    digits = std::string(text);
  }
  if (digits.empty()) throw std::invalid_argument("bad number: '" + std::string(whole) + "'");
  BigInt mantissa = parse_integer(digits, whole);
  if (negative) mantissa = -mantissa;
  long shift = exponent - frac_len;
  if (shift >= 0) return Rational(mantissa * pow10(shift));
  return Rational(mantissa, pow10(-shift));
}

std::string to_string(const Rational& r) {
  if (den_of(r) == 1) return num_of(r).str();
  return num_of(r).str() + "/" + den_of(r).str();
}

Rational linf_norm(const RationalVector& v) {
  Rational m = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Rational a = v[i] < 0 ? Rational(-v[i]) : v[i];
    if (a > m) m = a;
  }
  return m;
}

}  // namespace tarski
