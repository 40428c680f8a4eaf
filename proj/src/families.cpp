#include "sumprod/families.hpp"
#include "sumprod/errors.hpp"

#include <unordered_map>

namespace sumprod {

uint64_t SplitMix64::next_below(uint64_t bound) {
    if (bound == 0)
        throw ConfigError("next_below: zero bound");
    uint64_t threshold = (~bound + 1) % bound; // 2^64 mod bound
    while (true) {
        uint64_t v = next();
        if (v >= threshold)
            return v % bound;
    }
}

FamilySpec FamilySpec::ap(long long n, Rational start, Rational step) {
    FamilySpec s;
    s.kind = Kind::Ap;
    s.n = n;
    s.start = std::move(start);
    s.step = std::move(step);
    return s;
}

FamilySpec FamilySpec::gp(long long n, Rational start, Rational ratio) {
    FamilySpec s;
    s.kind = Kind::Gp;
    s.n = n;
    s.start = std::move(start);
    s.ratio = std::move(ratio);
    return s;
}

FamilySpec FamilySpec::balog_wooley(long long odd_count, long long pow_count) {
    FamilySpec s;
    s.kind = Kind::BalogWooley;
    s.odd_count = odd_count;
    s.pow_count = pow_count;
    return s;
}

FamilySpec FamilySpec::random_subset(uint64_t universe, long long n, uint64_t seed) {
    FamilySpec s;
    s.kind = Kind::RandomSubset;
    s.universe = universe;
    s.n = n;
    s.seed = seed;
    return s;
}

FamilySpec FamilySpec::kind_with_size(const std::string& kind, long long n, uint64_t seed) {
    if (kind == "ap")
        return ap(n);
    if (kind == "gp")
        return gp(n);
    if (kind == "bw") {
        // Factor n as S * P with P the largest power of two <= n^(1/3),
        // keeping the family well-defined for every requested size.
        long long p = 1;
        while ((p * 2) * (p * 2) * (p * 2) <= n && n % (p * 2) == 0)
            p *= 2;
        return balog_wooley(n / p, p);
    }
    if (kind == "random")
        return random_subset(static_cast<uint64_t>(4 * n) * static_cast<uint64_t>(n) + 16, n, seed);
    throw ConfigError("unknown family kind: '" + kind + "'");
}

std::string FamilySpec::label() const {
    switch (kind) {
    case Kind::Ap:
        return "ap(n=" + std::to_string(n) + ",start=" + format_rational(start) +
               ",step=" + format_rational(step) + ")";
    case Kind::Gp:
        return "gp(n=" + std::to_string(n) + ",start=" + format_rational(start) +
               ",ratio=" + format_rational(ratio) + ")";
    case Kind::BalogWooley:
        return "bw(S=" + std::to_string(odd_count) + ",P=" + std::to_string(pow_count) + ")";
    case Kind::RandomSubset:
        return "random(N=" + std::to_string(universe) + ",n=" + std::to_string(n) +
               ",seed=" + std::to_string(seed) + ")";
    }
    throw InternalError("FamilySpec::label: bad kind");
}

long long FamilySpec::cardinality() const {
    return kind == Kind::BalogWooley ? odd_count * pow_count : n;
}

RSet generate(const FamilySpec& spec) {
    switch (spec.kind) {
    case FamilySpec::Kind::Ap: {
        if (spec.n < 1)
            throw ConfigError("ap: n must be >= 1");
        if (spec.step == 0)
            throw ConfigError("ap: step must be nonzero");
        std::vector<Rational> v;
        v.reserve(spec.n);
        Rational x = spec.start;
        for (long long i = 0; i < spec.n; ++i, x += spec.step)
            v.push_back(x);
        return RSet(std::move(v));
    }
    case FamilySpec::Kind::Gp: {
        if (spec.n < 1)
            throw ConfigError("gp: n must be >= 1");
        if (spec.start == 0)
            throw ConfigError("gp: start must be nonzero");
        if (spec.ratio == 0 || spec.ratio == 1 || spec.ratio == -1)
            throw ConfigError("gp: ratio must avoid {0, 1, -1}");
        std::vector<Rational> v;
        v.reserve(spec.n);
        Rational x = spec.start;
        for (long long i = 0; i < spec.n; ++i, x *= spec.ratio)
            v.push_back(x);
        return RSet(std::move(v));
    }
    case FamilySpec::Kind::BalogWooley: {
        if (spec.odd_count < 1 || spec.pow_count < 1)
            throw ConfigError("bw: S and P must be >= 1");
        std::vector<Rational> v;
        v.reserve(spec.odd_count * spec.pow_count);
        for (long long m = 1; m <= spec.odd_count; ++m) {
            Int odd = 2 * Int(m) - 1;
            Int pw = 2;
            for (long long j = 1; j <= spec.pow_count; ++j, pw *= 2)
                v.push_back(Rational(odd * pw));
        }
        RSet out{std::move(v)};
        // Distinct by unique factorization into odd part and power of two.
        if (out.size() != static_cast<size_t>(spec.odd_count * spec.pow_count))
            throw InternalError("bw: generated duplicates");
        return out;
    }
    case FamilySpec::Kind::RandomSubset: {
        if (spec.n < 1)
            throw ConfigError("random_subset: n must be >= 1");
        if (static_cast<uint64_t>(spec.n) > spec.universe)
            throw ConfigError("random_subset: n exceeds universe size");
        // Partial Fisher-Yates over {1..N} with a sparse swap table.
        SplitMix64 rng(spec.seed);
        std::unordered_map<uint64_t, uint64_t> swapped;
        std::vector<Rational> v;
        v.reserve(spec.n);
        for (uint64_t i = 0; i < static_cast<uint64_t>(spec.n); ++i) {
            uint64_t j = i + rng.next_below(spec.universe - i);
            uint64_t vi = swapped.count(i) ? swapped[i] : i + 1;
            uint64_t vj = swapped.count(j) ? swapped[j] : j + 1;
            swapped[j] = vi;
            v.push_back(Rational(vj));
        }
        RSet out{std::move(v)};
        if (out.size() != static_cast<size_t>(spec.n))
            throw InternalError("random_subset: generated duplicates");
        return out;
    }
    }
    throw InternalError("generate: bad family kind");
}

} // namespace sumprod
