#pragma once

#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

#include <cstdint>
#include <string>

namespace sumprod {

/// SplitMix64: fixed, platform-independent generator used for every
/// seeded experiment so runs reproduce bit-for-bit everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound), bound > 0; rejection sampling keeps
    /// the distribution exact and the stream deterministic.
    uint64_t next_below(uint64_t bound);

private:
    uint64_t state_;
};

struct FamilySpec {
    enum class Kind { Ap, Gp, BalogWooley, RandomSubset };

    Kind kind = Kind::Ap;
    long long n = 0;          // ap / gp / random_subset cardinality
    Rational start = 1;       // ap, gp
    Rational step = 1;        // ap
    Rational ratio = 2;       // gp
    long long odd_count = 0;  // balog_wooley S
    long long pow_count = 0;  // balog_wooley P
    uint64_t universe = 0;    // random_subset N
    uint64_t seed = 0;        // random_subset

    std::string label() const;
    long long cardinality() const;

    static FamilySpec ap(long long n, Rational start = 1, Rational step = 1);
    static FamilySpec gp(long long n, Rational start = 1, Rational ratio = 2);
    static FamilySpec balog_wooley(long long odd_count, long long pow_count);
    static FamilySpec random_subset(uint64_t universe, long long n, uint64_t seed);
    static FamilySpec kind_with_size(const std::string& kind, long long n, uint64_t seed);
};

/// Deterministic generation; throws ConfigError on bad parameters.
RSet generate(const FamilySpec& spec);

} // namespace sumprod
