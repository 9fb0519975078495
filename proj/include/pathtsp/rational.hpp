#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pathtsp {

// Exact rational. Never bind arithmetic results to `auto`: gmpxx returns
// expression templates.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// Accepts "a/b" or an integer literal, optionally signed. The result is reduced.
Rational parse_rational(std::string_view text);

/// Canonical "a/b" (or "a" when the denominator is 1).
std::string to_string(const Rational& r);

/// Decimal rendering, rounded half away from zero. Annotation only.
std::string to_decimal(const Rational& r, int places);

mpz_class floor(const Rational& r);
mpz_class ceil(const Rational& r);

inline const Rational& min_of(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Values scaled to a common denominator so hot loops can run on machine integers.
struct ScaledIntegers {
  mpz_class scale;              // common denominator (lcm)
  std::vector<std::int64_t> values;
  bool fits = false;            // false when some |value * scale| (or the sum) exceeds the headroom
};

/// Scales `values` by the lcm of their denominators. `headroom_terms` is the
/// number of values that may be summed in one accumulator.
ScaledIntegers scale_to_integers(std::span<const Rational> values, std::size_t headroom_terms);

}  // namespace pathtsp
