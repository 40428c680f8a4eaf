#include "sumprod/errors.hpp"
#include "sumprod/histogram.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

using namespace sumprod;

namespace {
RSet mk(std::initializer_list<long long> values) {
    std::vector<Rational> v;
    for (long long t : values)
        v.push_back(Rational(t));
    return RSet(std::move(v));
}
} // namespace

TEST_CASE("difference histogram of {1,2,3}") {
    RSet a = mk({1, 2, 3});
    RepHistogram h = rep_histogram(a, a, SetOp::Diff);
    CHECK(h.counts.size() == 5);
    CHECK(h.count_of(Rational(0)) == 3);
    CHECK(h.count_of(Rational(1)) == 2);
    CHECK(h.count_of(Rational(-1)) == 2);
    CHECK(h.count_of(Rational(2)) == 1);
    CHECK(h.count_of(Rational(-2)) == 1);
    CHECK(h.count_of(Rational(5)) == 0);
    CHECK(h.total_mass() == 9);
    CHECK(h.max_count == 3);
}

TEST_CASE("quotient histogram of {1,2,4,8}") {
    RSet a = mk({1, 2, 4, 8});
    RepHistogram h = rep_histogram(a, a, SetOp::Quot);
    CHECK(h.count_of(Rational(1)) == 4);
    CHECK(h.count_of(Rational(2)) == 3);
    CHECK(h.count_of(Rational(1, 2)) == 3);
    CHECK(h.count_of(Rational(4)) == 2);
    CHECK(h.count_of(Rational(1, 4)) == 2);
    CHECK(h.count_of(Rational(8)) == 1);
    CHECK(h.count_of(Rational(1, 8)) == 1);
    CHECK(h.total_mass() == 16);
}

TEST_CASE("histogram preconditions") {
    RSet a = mk({1, 2});
    CHECK_THROWS_AS(rep_histogram(RSet(), a, SetOp::Diff), DomainError);
    CHECK_THROWS_AS(rep_histogram(a, mk({0, 1}), SetOp::Quot), DomainError);
}

TEST_CASE("energy moments: frozen hand values") {
    RSet a = mk({1, 2, 3});
    CHECK(energy(a, a, SetOp::Diff, 2) == 19);
    CHECK(energy(a, a, SetOp::Diff, 3) == 45);
    CHECK(energy(a, a, SetOp::Diff, 4) == 115);
    RSet g = mk({1, 2, 4, 8});
    CHECK(energy(g, g, SetOp::Quot, 2) == 44);
    CHECK(energy(g, g, SetOp::Quot, 3) == 136);
    // Geometric progressions mirror arithmetic ones under exponents.
    CHECK(energy(g, g, SetOp::Quot, 2) == energy(mk({1, 2, 3, 4}), mk({1, 2, 3, 4}), SetOp::Diff, 2));
    // moment 1 is the total mass
    CHECK(energy(a, a, SetOp::Diff, 1) == 9);
    CHECK_THROWS_AS(energy(a, a, SetOp::Diff, 5), DomainError);
}

TEST_CASE("mass identity and oracle moments on random pairs") {
    oracles::TestRng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        RSet a = rng.rational_set(16, 60, 4);
        RSet b = rng.rational_set(16, 60, 4);
        RepHistogram h = rep_histogram(a, b, SetOp::Diff);
        CHECK(h.total_mass() == Int(a.size()) * Int(b.size()));
        for (unsigned m : {2u, 3u, 4u})
            CHECK(moment_sum(h, m) == oracles::naive_moment(a, b, SetOp::Diff, m));
    }
}

TEST_CASE("second moment equals the quadruple count") {
    oracles::TestRng rng(102);
    for (int trial = 0; trial < 12; ++trial) {
        RSet a = rng.integer_set(14, -30, 30);
        CHECK(energy(a, a, SetOp::Diff, 2) == oracles::quadruple_diff_count(a));
    }
}

TEST_CASE("counting table agrees with the sort-merge fallback") {
    oracles::TestRng rng(103);
    for (int trial = 0; trial < 25; ++trial) {
        RSet a = rng.rational_set(20, 50, 7);
        RSet b = rng.rational_set(20, 50, 7);
        for (SetOp op : {SetOp::Sum, SetOp::Diff, SetOp::Prod}) {
            RepHistogram h = rep_histogram(a, b, op);
            RepHistogram m = rep_histogram_sort_merge(a, b, op);
            CHECK(h.counts == m.counts);
            CHECK(h.max_count == m.max_count);
        }
    }
}

TEST_CASE("level selection maximizes |P| L^m over integer levels") {
    // counts {3,2,2,1,1}: moment 3 windows: L=1 -> 5*1, L=2 -> 3*8=24,
    // L=3 -> 1*27=27 best.
    LevelChoice c = best_level({3, 2, 2, 1, 1}, 3);
    CHECK(c.level == 3);
    CHECK(c.stat == 27);
    CHECK(c.window_mass == 3);
    CHECK(c.member_indices == std::vector<size_t>{0});

    // First moment: L=1 window [1,2) has mass 2; L=2 window [2,4) mass 7.
    LevelChoice f = best_level({3, 2, 2, 1, 1}, 1);
    CHECK(f.level == 2);
    CHECK(f.window_mass == 7);

    // Ties resolve to the smallest level: {1,1,2} at moment 1 gives
    // 2*1 for L=1 and 1*2 for L=2.
    LevelChoice t = best_level({1, 1, 2}, 1);
    CHECK(t.level == 1);
    CHECK(t.stat == 2);
}

TEST_CASE("level selection beats every dyadic bucket") {
    oracles::TestRng rng(104);
    for (int trial = 0; trial < 40; ++trial) {
        size_t n = 1 + static_cast<size_t>(rng.integer(0, 30));
        std::vector<long long> counts;
        for (size_t i = 0; i < n; ++i)
            counts.push_back(rng.integer(1, 40));
        for (unsigned m : {1u, 2u, 3u, 4u}) {
            LevelChoice c = best_level(counts, m);
            long long maxc = *std::max_element(counts.begin(), counts.end());
            for (long long level = 1; level <= maxc; level *= 2) {
                long long members = 0;
                for (long long v : counts)
                    if (v >= level && v < 2 * level)
                        ++members;
                CHECK(c.stat >= Int(members) * ipow(Int(level), m));
            }
            // The window really is {i : L <= count < 2L}.
            for (size_t i : c.member_indices)
                CHECK((counts[i] >= c.level && counts[i] < 2 * c.level));
        }
    }
}
