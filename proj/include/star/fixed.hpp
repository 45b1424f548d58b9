#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace star {

// Raw fixed-point value. The number of fractional digits (the "precision")
// is carried by the owning graph or passed explicitly; a raw value v at
// precision p denotes the rational v / 10^p.
using Amount = std::int64_t;

// Maximum supported precision; keeps K^2 representable in 64 bits.
inline constexpr int kMaxPrecision = 9;

// 10^exp for exp in [0, 18].
std::int64_t pow10(int exp);

// Parses a signed decimal string ("3", "-0.25", "1.500") into a raw value at
// the given precision. Throws MalformedLine on syntax errors and
// PrecisionExceeded when the string has more fractional digits than allowed.
Amount parse_decimal(std::string_view text, int precision);

// Re-expresses a raw value at precision `from` as a raw value at precision
// `to`. Throws PrecisionExceeded when the value is not representable.
Amount rescale_raw(Amount raw, int from, int to);

// Exact rational value whose denominator divides a power of ten. Used for
// unscaled results (utilities, service totals, flow values).
struct Quantity {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Quantity() = default;
  Quantity(std::int64_t n, std::int64_t d);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  bool operator==(const Quantity& other) const;
  bool operator!=(const Quantity& other) const { return !(*this == other); }
  bool operator<(const Quantity& other) const;
  bool operator<=(const Quantity& other) const;
};

// Formats num/den exactly as a decimal string; den must divide a power of ten.
std::string format_decimal(std::int64_t num, std::int64_t den);

}  // namespace star
