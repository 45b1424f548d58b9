#include "star/fixed.hpp"

#include <cctype>
#include <numeric>

#include "star/errors.hpp"

namespace star {

std::int64_t pow10(int exp) {
  require(exp >= 0 && exp <= 18, "pow10 exponent out of range");
  std::int64_t v = 1;
  for (int i = 0; i < exp; ++i) v *= 10;
  return v;
}

Amount parse_decimal(std::string_view text, int precision) {
  if (precision < 0 || precision > kMaxPrecision)
    fail(ErrorCode::PrecisionExceeded, "precision must be in [0, 9]");
  if (text.empty()) fail(ErrorCode::MalformedLine, "empty number");

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-' || text[pos] == '+') {
    negative = text[pos] == '-';
    ++pos;
  }

  __int128 integer_part = 0;
  std::size_t int_digits = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    integer_part = integer_part * 10 + (text[pos] - '0');
    if (integer_part > static_cast<__int128>(1) << 80)
      fail(ErrorCode::MalformedLine, "number too large: " + std::string(text));
    ++pos;
    ++int_digits;
  }

  __int128 frac_part = 0;
  int frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      frac_part = frac_part * 10 + (text[pos] - '0');
      ++pos;
      ++frac_digits;
      if (frac_digits > 18) fail(ErrorCode::PrecisionExceeded, std::string(text));
    }
    if (frac_digits == 0) fail(ErrorCode::MalformedLine, "dangling decimal point: " + std::string(text));
  }

  if (pos != text.size() || int_digits == 0)
    fail(ErrorCode::MalformedLine, "bad number: " + std::string(text));

  // Trailing zeros do not count against the precision budget.
  while (frac_digits > precision && frac_part % 10 == 0) {
    frac_part /= 10;
    --frac_digits;
  }
  if (frac_digits > precision)
    fail(ErrorCode::PrecisionExceeded,
         std::string(text) + " has more than " + std::to_string(precision) + " fractional digits");

  __int128 raw = integer_part * pow10(precision) + frac_part * pow10(precision - frac_digits);
  if (negative) raw = -raw;
  if (raw > INT64_MAX || raw < INT64_MIN)
    fail(ErrorCode::MalformedLine, "number overflows: " + std::string(text));
  return static_cast<Amount>(raw);
}

Amount rescale_raw(Amount raw, int from, int to) {
  if (from == to) return raw;
  if (from < to) {
    __int128 scaled = static_cast<__int128>(raw) * pow10(to - from);
    require(scaled <= INT64_MAX && scaled >= INT64_MIN, "rescale overflow");
    return static_cast<Amount>(scaled);
  }
  std::int64_t divisor = pow10(from - to);
  if (raw % divisor != 0)
    fail(ErrorCode::PrecisionExceeded, "value has more than " + std::to_string(to) + " fractional digits");
  return raw / divisor;
}

Quantity::Quantity(std::int64_t n, std::int64_t d) : num(n), den(d) {
  require(den > 0, "Quantity denominator must be positive");
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

bool Quantity::operator==(const Quantity& other) const {
  return static_cast<__int128>(num) * other.den == static_cast<__int128>(other.num) * den;
}

bool Quantity::operator<(const Quantity& other) const {
  return static_cast<__int128>(num) * other.den < static_cast<__int128>(other.num) * den;
}

bool Quantity::operator<=(const Quantity& other) const {
  return static_cast<__int128>(num) * other.den <= static_cast<__int128>(other.num) * den;
}

std::string Quantity::str() const { return format_decimal(num, den); }

std::string format_decimal(std::int64_t num, std::int64_t den) {
  require(den > 0, "format_decimal: denominator must be positive");
  // den must be of the form 2^a * 5^b; the needed fractional width is max(a, b).
  std::int64_t d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  require(d == 1, "format_decimal: denominator does not divide a power of ten");
  int width = twos > fives ? twos : fives;

  __int128 scaled = static_cast<__int128>(num) * (pow10(width) / den);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;

  std::string digits;
  if (scaled == 0) digits = "0";
  while (scaled > 0) {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  }
  while (static_cast<int>(digits.size()) <= width) digits.insert(digits.begin(), '0');

  std::string out;
  if (negative) out += '-';
  out += digits.substr(0, digits.size() - width);
  if (width > 0) {
    std::string frac = digits.substr(digits.size() - width);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  }
  return out;
}

}  // namespace star
