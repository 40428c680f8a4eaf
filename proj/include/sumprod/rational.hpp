#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace sumprod {

using Int = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational in canonical form: gcd(|num|, den) = 1,
/// den > 0. Value equality coincides with representation equality, so
/// rationals are usable as exact histogram keys.
using Rational = boost::multiprecision::cpp_rational;

/// Builds a canonical rational from an arbitrary numerator/denominator
/// pair. Throws DomainError when den == 0.
Rational make_rational(Int num, Int den);

/// Parses "p" or "p/q" (q a positive decimal integer). Throws InputError
/// on anything else.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& value);

/// Decimal rendering with the given number of significant digits
/// (round half away from zero). Falls back to scientific notation
/// outside [1e-4, 1e15).
std::string decimal_string(const Rational& value, int significant = 12);

/// floor(n^(1/k)) for n >= 0. Throws DomainError for n < 0 or k == 0.
Int iroot(const Int& n, unsigned k);

/// Smallest m with m^k >= n (n >= 0).
Int iroot_ceil(const Int& n, unsigned k);

Int ipow(const Int& base, unsigned exp);
Rational rpow(const Rational& base, unsigned exp);

/// floor(log2(n)) for n >= 1.
long floor_log2(const Int& n);

enum class RootCompare {
    LessOrEqual,     // lhs^(1/k) strictly below the sum
    Equal,           // exact equality certified
    Greater,         // lhs^(1/k) strictly above the sum
};

/// Compares lhs^(1/k) against sum_j terms[j]^(1/k) exactly, all inputs
/// nonnegative integers. Uses rational interval refinement; equality is
/// certified by integer perfect-power tests, so the verdict is exact.
RootCompare compare_root_sum(const Int& lhs, const std::vector<Int>& terms, unsigned k);

} // namespace sumprod
