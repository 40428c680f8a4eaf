#pragma once

// Brute-force oracles kept independent of the library's computation
// paths: plain nested loops and std::map counting, no shared kernels.

#include "sumprod/incidence.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

#include <array>
#include <map>
#include <random>
#include <vector>

namespace oracles {

using sumprod::Int;
using sumprod::Rational;
using sumprod::RSet;

// #{(a,b,c,d) in A^4 : a - b = c - d} by literal quadruple enumeration.
inline Int quadruple_diff_count(const RSet& a) {
    Int count = 0;
    for (const Rational& x : a)
        for (const Rational& y : a)
            for (const Rational& z : a)
                for (const Rational& w : a)
                    if (x - y == z - w)
                        ++count;
    return count;
}

inline std::map<Rational, long long> naive_histogram(const RSet& a, const RSet& b,
                                                     sumprod::SetOp op) {
    std::map<Rational, long long> h;
    for (const Rational& x : a) {
        for (const Rational& y : b) {
            switch (op) {
            case sumprod::SetOp::Sum: ++h[x + y]; break;
            case sumprod::SetOp::Diff: ++h[x - y]; break;
            case sumprod::SetOp::Prod: ++h[x * y]; break;
            case sumprod::SetOp::Quot: ++h[x / y]; break;
            }
        }
    }
    return h;
}

inline Int naive_moment(const RSet& a, const RSet& b, sumprod::SetOp op, unsigned moment) {
    Int total = 0;
    for (const auto& [key, count] : naive_histogram(a, b, op))
        total += sumprod::ipow(Int(count), moment);
    return total;
}

inline Int direct_sigma_count(const RSet& a, const RSet& b, const RSet& c, const Rational& s1,
                              const Rational& s2, const Rational& s3) {
    Int count = 0;
    for (const Rational& x : a)
        for (const Rational& y : b)
            for (const Rational& z : c)
                if (s1 * x + s2 * y + s3 * z == 0)
                    ++count;
    return count;
}

// Exhaustive-plane oracle for the trilinear supremum: every coefficient
// plane with two or more solutions is spanned by a pair of grid points;
// single-solution coefficients are constructed per point.
inline Int sigma_sup_oracle(const RSet& a, const RSet& b, const RSet& c) {
    std::vector<std::array<Rational, 3>> grid;
    for (const Rational& x : a)
        for (const Rational& y : b)
            for (const Rational& z : c)
                grid.push_back({x, y, z});

    Int best = 0;
    auto consider = [&](const Rational& s1, const Rational& s2, const Rational& s3) {
        if (s1 == 0 || s2 == 0 || s3 == 0)
            return;
        Int count = direct_sigma_count(a, b, c, s1, s2, s3);
        if (count > best)
            best = count;
    };
    for (size_t i = 0; i < grid.size(); ++i) {
        for (size_t j = i + 1; j < grid.size(); ++j) {
            const auto& p = grid[i];
            const auto& q = grid[j];
            consider(p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2],
                     p[0] * q[1] - p[1] * q[0]);
        }
    }
    // Single-point coefficients: s1 a + s2 b + s3 c = 0 solved for s3
    // (or s2) with small trial values for the free coefficient.
    for (const auto& p : grid) {
        for (int trial = 1; trial <= 3; ++trial) {
            if (p[2] != 0)
                consider(Rational(1), Rational(trial), -(p[0] + trial * p[1]) / p[2]);
            if (p[1] != 0)
                consider(Rational(1), -(p[0] + trial * p[2]) / p[1], Rational(trial));
            if (p[0] != 0 && p[1] != 0)
                consider(Rational(1), -p[0] / p[1], Rational(trial));
        }
    }
    return best;
}

inline long long naive_incidences(const sumprod::PointSet& pts, const sumprod::LineSet& lines) {
    long long count = 0;
    for (const sumprod::Line& line : lines.lines())
        for (const sumprod::Point& p : pts.points())
            if (line.contains(p))
                ++count;
    return count;
}

// Seeded random rational sets for property tests; independent of the
// library's family generators.
class TestRng {
public:
    explicit TestRng(uint64_t seed) : engine_(seed) {}

    long long integer(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(engine_);
    }

    RSet integer_set(size_t max_size, long long lo, long long hi) {
        size_t target = 1 + static_cast<size_t>(integer(0, static_cast<long long>(max_size) - 1));
        std::vector<Rational> v;
        for (size_t i = 0; i < target; ++i)
            v.push_back(Rational(integer(lo, hi)));
        return RSet(std::move(v));
    }

    RSet rational_set(size_t max_size, long long span, long long max_den) {
        size_t target = 1 + static_cast<size_t>(integer(0, static_cast<long long>(max_size) - 1));
        std::vector<Rational> v;
        for (size_t i = 0; i < target; ++i)
            v.push_back(sumprod::make_rational(Int(integer(-span, span)),
                                               Int(integer(1, max_den))));
        return RSet(std::move(v));
    }

    RSet positive_set(size_t max_size, long long hi) {
        size_t target = 1 + static_cast<size_t>(integer(0, static_cast<long long>(max_size) - 1));
        std::vector<Rational> v;
        for (size_t i = 0; i < target; ++i)
            v.push_back(Rational(integer(1, hi)));
        return RSet(std::move(v));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace oracles
