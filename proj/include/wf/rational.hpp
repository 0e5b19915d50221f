#pragma once

// Exact rational scalar type used throughout the library, backed by GMP.
// Everything that leaves this header is canonicalized (gcd(num, den) = 1,
// den > 0), so equality and ordering are plain mpq comparisons.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wf {

using Rational = mpq_class;

// num/den with canonicalization; den must be nonzero.
Rational make_rational(long num, long den);
Rational make_rational(const mpz_class& num, const mpz_class& den);

// 2^e as an exact rational; e may be negative.
Rational pow2(int e);

// "a/b" or "a"; also accepts plain decimal strings like "0.125" (exact).
Rational parse_rational(const std::string& text);

// Canonical "num/den" (or "num" when den == 1); bit-exact round trip.
std::string to_string(const Rational& q);

// Exact int64 extraction; empty when q is not an integer or out of range.
std::optional<std::int64_t> to_int64(const Rational& q);

// Common-denominator integer view: values[i] == nums[i] * scale with
// scale = 1/den.  Used by the int64 transform fast lane; the extraction
// refuses (returns empty) when the shared denominator or any numerator
// would need more than `limit_bits` bits, in which case callers fall back
// to the rational reference path.
struct Int64View {
    std::vector<std::int64_t> nums;
    mpz_class den;  // > 0
};
std::optional<Int64View> int64_view(std::span<const Rational> values, int limit_bits);

}  // namespace wf
