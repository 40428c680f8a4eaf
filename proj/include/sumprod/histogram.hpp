#pragma once

#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

#include <utility>
#include <vector>

namespace sumprod {

/// Representation-count table of {a op b} over A x B, keys sorted.
/// Total mass is always |A| * |B|.
struct RepHistogram {
    SetOp op = SetOp::Diff;
    size_t size_a = 0;
    size_t size_b = 0;
    std::vector<std::pair<Rational, long long>> counts;
    long long max_count = 0;

    long long count_of(const Rational& key) const;
    Int total_mass() const;
    RSet support() const;
    /// Keys x with lo <= r(x) < hi.
    RSet level_keys(long long lo, long long hi) const;
    /// #keys with r(x) >= tau.
    long long tail_count(long long tau) const;
};

/// Counting-table construction, O(|A||B|) expected.
RepHistogram rep_histogram(const RSet& a, const RSet& b, SetOp op);

/// Sort-merge construction; must agree with rep_histogram exactly
/// (differential-testing hook).
RepHistogram rep_histogram_sort_merge(const RSet& a, const RSet& b, SetOp op);

/// Sum of count^moment over all keys, exact.
Int moment_sum(const RepHistogram& h, unsigned moment);

/// moment_sum of the (a, b, op) histogram; moment in 1..4.
Int energy(const RSet& a, const RSet& b, SetOp op, unsigned moment);

/// Level-window selection: the positive integer level L maximizing
/// |{i : L <= counts[i] < 2L}| * L^moment, smallest L on ties. The
/// search ranges over every integer level, which dominates the choice
/// among powers of two.
struct LevelChoice {
    long long level = 0;
    std::vector<size_t> member_indices; // indices with level <= count < 2*level
    Int stat;                           // |members| * level^moment
    Int window_mass;                    // sum of counts inside the window
};

LevelChoice best_level(const std::vector<long long>& counts, unsigned moment);

/// Number of possible dyadic buckets for this count range:
/// floor(log2(max_count)) + 1.
long dyadic_bucket_bound(long long max_count);

} // namespace sumprod
