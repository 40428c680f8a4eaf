#include "sumprod/rational.hpp"
#include "sumprod/errors.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace sumprod {

Rational make_rational(Int num, Int den) {
    if (den == 0)
        throw DomainError("rational: zero denominator");
    // Division canonicalizes sign and reduces to lowest terms.
    return Rational(std::move(num)) / Rational(std::move(den));
}

Rational parse_rational(std::string_view text) {
    size_t slash = text.find('/');
    auto parse_int = [&](std::string_view part, bool sign_allowed) -> Int {
        if (part.empty())
            throw InputError("rational parse: empty field: '" + std::string(text) + "'");
        bool negative = false;
        size_t i = 0;
        if (sign_allowed && (part[0] == '-' || part[0] == '+')) {
            negative = part[0] == '-';
            i = 1;
        }
        if (i == part.size())
            throw InputError("rational parse: missing digits: '" + std::string(text) + "'");
        for (size_t j = i; j < part.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(part[j])))
                throw InputError("rational parse: invalid character: '" + std::string(text) + "'");
        Int magnitude{std::string(part.substr(i))};
        return negative ? -magnitude : magnitude;
    };
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text, true));
    }
    Int num = parse_int(text.substr(0, slash), true);
    std::string_view den_part = text.substr(slash + 1);
    if (!den_part.empty() && (den_part[0] == '-' || den_part[0] == '+'))
        throw InputError("rational parse: denominator must be a positive integer: '" +
                         std::string(text) + "'");
    Int den = parse_int(den_part, false);
    if (den == 0)
        throw InputError("rational parse: zero denominator: '" + std::string(text) + "'");
    return make_rational(std::move(num), std::move(den));
}

std::string format_rational(const Rational& value) {
    std::string s = numerator(value).str();
    if (denominator(value) != 1) {
        s += '/';
        s += denominator(value).str();
    }
    return s;
}

Int ipow(const Int& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

Rational rpow(const Rational& base, unsigned exp) {
    return Rational(ipow(numerator(base), exp), ipow(denominator(base), exp));
}

long floor_log2(const Int& n) {
    if (n < 1)
        throw DomainError("floor_log2: argument must be >= 1");
    return static_cast<long>(boost::multiprecision::msb(n));
}

Int iroot(const Int& n, unsigned k) {
    if (k == 0)
        throw DomainError("iroot: zeroth root");
    if (n < 0)
        throw DomainError("iroot: negative radicand");
    if (n == 0 || n == 1 || k == 1)
        return n;
    // Newton iteration seeded one bit above the true root.
    unsigned bits = boost::multiprecision::msb(n) + 1;
    Int x = Int(1) << (bits / k + 1);
    while (true) {
        Int next = ((k - 1) * x + n / ipow(x, k - 1)) / k;
        if (next >= x)
            break;
        x = next;
    }
    while (ipow(x, k) > n)
        --x;
    while (ipow(x + 1, k) <= n)
        ++x;
    return x;
}

Int iroot_ceil(const Int& n, unsigned k) {
    Int r = iroot(n, k);
    return ipow(r, k) == n ? r : r + 1;
}

std::string decimal_string(const Rational& value, int significant) {
    if (significant < 1)
        significant = 1;
    if (value == 0)
        return "0";
    const bool negative = value < 0;
    const Int num = abs(numerator(value));
    const Int den = denominator(value);

    // Decimal exponent of the leading digit.
    long e = static_cast<long>(num.str().size()) - static_cast<long>(den.str().size());
    auto scaled_ge = [&](long exp10) {
        // num/den >= 10^exp10 ?
        if (exp10 >= 0)
            return num >= den * ipow(10, static_cast<unsigned>(exp10));
        return num * ipow(10, static_cast<unsigned>(-exp10)) >= den;
    };
    while (scaled_ge(e + 1))
        ++e;
    while (!scaled_ge(e))
        --e;

    // digits = round(value * 10^(significant-1-e)), giving exactly
    // `significant` digits with the decimal point after the first.
    long shift = significant - 1 - e;
    Int scaled_num = num, scaled_den = den;
    if (shift >= 0)
        scaled_num *= ipow(10, static_cast<unsigned>(shift));
    else
        scaled_den *= ipow(10, static_cast<unsigned>(-shift));
    Int digits = (2 * scaled_num + scaled_den) / (2 * scaled_den); // round half up
    std::string ds = digits.str();
    if (static_cast<int>(ds.size()) > significant) { // rounding carried over
        ds.pop_back();
        ++e;
    }

    std::string out;
    if (e >= -4 && e < 15) {
        if (e >= significant - 1) {
            out = ds + std::string(static_cast<size_t>(e - (significant - 1)), '0');
        } else if (e >= 0) {
            out = ds.substr(0, static_cast<size_t>(e) + 1) + "." + ds.substr(static_cast<size_t>(e) + 1);
        } else {
            out = "0." + std::string(static_cast<size_t>(-e - 1), '0') + ds;
        }
        // Trim trailing zeros after a decimal point.
        if (out.find('.') != std::string::npos) {
            while (out.back() == '0')
                out.pop_back();
            if (out.back() == '.')
                out.pop_back();
        }
    } else {
        out = ds.substr(0, 1);
        std::string frac = ds.substr(1);
        while (!frac.empty() && frac.back() == '0')
            frac.pop_back();
        if (!frac.empty())
            out += "." + frac;
        out += "e" + std::to_string(e);
    }
    return negative ? "-" + out : out;
}

namespace {

// Is u/v (lowest terms) a k-th power of a rational?  If so return the root.
bool rational_kth_root(const Int& u, const Int& v, unsigned k, Rational& out) {
    Int ru = iroot(u, k);
    if (ipow(ru, k) != u)
        return false;
    Int rv = iroot(v, k);
    if (ipow(rv, k) != v)
        return false;
    out = Rational(ru, rv);
    return true;
}

} // namespace

RootCompare compare_root_sum(const Int& lhs, const std::vector<Int>& terms, unsigned k) {
    if (k == 0)
        throw DomainError("compare_root_sum: zeroth root");
    if (lhs < 0)
        throw DomainError("compare_root_sum: negative lhs");
    std::vector<Int> positive;
    for (const Int& t : terms) {
        if (t < 0)
            throw DomainError("compare_root_sum: negative term");
        if (t > 0)
            positive.push_back(t);
    }
    if (positive.empty())
        return lhs == 0 ? RootCompare::Equal : RootCompare::Greater;
    if (lhs == 0)
        return RootCompare::LessOrEqual;

    // If every term is a rational-power multiple of the first, the sum
    // collapses to a single k-th root and the comparison is rational.
    {
        bool single_class = true;
        Rational scale_sum = 1; // sum of (a_j / a_0)^(1/k)
        for (size_t j = 1; j < positive.size(); ++j) {
            Rational ratio(positive[j], positive[0]);
            Rational root;
            if (!rational_kth_root(numerator(ratio), denominator(ratio), k, root)) {
                single_class = false;
                break;
            }
            scale_sum += root;
        }
        if (single_class) {
            // Compare lhs vs a_0 * scale_sum^k exactly.
            Rational rhs_pow = Rational(positive[0]) * rpow(scale_sum, k);
            if (Rational(lhs) < rhs_pow)
                return RootCompare::LessOrEqual;
            if (Rational(lhs) == rhs_pow)
                return RootCompare::Equal;
            return RootCompare::Greater;
        }
    }

    // Terms span at least two k-free classes, so the sum is irrational
    // and distinct from lhs^(1/k): interval refinement must terminate.
    for (unsigned bits = 16; bits <= (1u << 20); bits *= 2) {
        Int scale = Int(1) << bits;
        Int scale_k = ipow(Int(2), bits * k);
        Int lhs_lo = iroot(lhs * scale_k, k); // floor(2^bits * lhs^(1/k))
        Int sum_lo = 0;
        for (const Int& t : positive)
            sum_lo += iroot(t * scale_k, k);
        Int sum_hi = sum_lo + static_cast<long>(positive.size());
        if (lhs_lo + 1 <= sum_lo)
            return RootCompare::LessOrEqual;
        if (lhs_lo >= sum_hi)
            return RootCompare::Greater;
    }
    throw InternalError("compare_root_sum: interval refinement did not converge");
}

} // namespace sumprod
