#include "sumprod/energy.hpp"
#include "sumprod/errors.hpp"

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

TEST_CASE("trilinear supremum: frozen small cases") {
    SigmaWitness w2 = sigma_sup(mk({1, 2}), mk({1, 2}), mk({1, 2}));
    CHECK(w2.count == 2);
    SigmaWitness w3 = sigma_sup(mk({1, 2, 3}), mk({1, 2, 3}), mk({1, 2, 3}));
    CHECK(w3.count == 5);
    // Consistency: direct enumeration at the witness reproduces the count.
    CHECK(oracles::direct_sigma_count(mk({1, 2, 3}), mk({1, 2, 3}), mk({1, 2, 3}), w3.s1, w3.s2,
                                      w3.s3) == 5);
    CHECK(!w3.triples.empty());
}

TEST_CASE("trilinear supremum equals the exhaustive-plane oracle") {
    oracles::TestRng rng(201);
    for (int trial = 0; trial < 12; ++trial) {
        RSet a = rng.integer_set(4, -4, 4);
        RSet b = rng.integer_set(4, -4, 4);
        RSet c = rng.integer_set(4, -4, 4);
        SigmaWitness w = sigma_sup(a, b, c);
        CHECK(w.count == oracles::sigma_sup_oracle(a, b, c));
        CHECK(w.count <= Int(a.size()) * Int(b.size())); // trivial bound
    }
}

TEST_CASE("trilinear supremum handles zeros in the grid") {
    // (0,0,0) solves every coefficient triple.
    RSet z = mk({0});
    CHECK(sigma_sup(z, z, z).count == 1);
    // (a,0,0)-style points are unreachable: no valid coefficients vanish.
    CHECK(sigma_sup(mk({1}), mk({0}), mk({0})).count == 0);
    CHECK(sigma_sup(mk({0, 1}), mk({0, 1}), mk({0, 1})).count ==
          oracles::sigma_sup_oracle(mk({0, 1}), mk({0, 1}), mk({0, 1})));
}

TEST_CASE("trilinear supremum cap") {
    RSet big = mk({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13});
    CHECK_THROWS_AS(sigma_sup(big, big, big), ResourceLimitError);
}

TEST_CASE("popular spectrum of a geometric progression") {
    PopularSpectrum s = popular_spectrum(mk({1, 2, 4, 8}));
    CHECK(s.energy_times == 44);
    // |S_2| * 4 and |S_4| * 16 both score 16 >= 44/6; ties resolve to the
    // smaller level.
    CHECK(s.best_t == 2);
    CHECK(s.best_stat == 16);
    REQUIRE(s.levels.size() == 3);
    CHECK(s.levels[0].first == 1);
    CHECK(s.levels[0].second.size() == 2); // {8, 1/8}
    CHECK(s.levels[1].first == 2);
    CHECK(s.levels[1].second.size() == 4); // {2, 1/2, 4, 1/4}
    CHECK(s.levels[2].second == RSet({Rational(1)}));
}

TEST_CASE("popular spectrum: singleton and partition property") {
    PopularSpectrum s = popular_spectrum(mk({7}));
    REQUIRE(s.levels.size() == 1);
    CHECK(s.levels[0].first == 1);
    CHECK(s.levels[0].second == RSet({Rational(1)}));

    oracles::TestRng rng(202);
    for (int trial = 0; trial < 15; ++trial) {
        RSet a = rng.positive_set(24, 60);
        PopularSpectrum spec = popular_spectrum(a);
        RSet covered;
        for (const auto& [t, level] : spec.levels) {
            CHECK(covered.disjoint_with(level));
            covered = set_union(covered, level);
        }
        CHECK(covered == combine(a, a, SetOp::Quot));
    }
    CHECK_THROWS_AS(popular_spectrum(mk({0, 1})), DomainError);
}

TEST_CASE("Katz-Koester inclusion: worked example") {
    KatzKoesterCheck c = katz_koester_check(mk({1, 2, 4}), Rational(2));
    CHECK(c.holds);
    CHECK(c.slice == mk({2, 4}));
    CHECK(c.slice_products == mk({4, 8, 16}));
    CHECK(!c.violator.has_value());
    // lambda = 1: the slice is the whole set.
    KatzKoesterCheck u = katz_koester_check(mk({1, 2, 4}), Rational(1));
    CHECK(u.holds);
    CHECK(u.slice == mk({1, 2, 4}));
    CHECK_THROWS_AS(katz_koester_check(mk({1, 2, 4}), Rational(5)), DomainError);
    CHECK_THROWS_AS(katz_koester_check(mk({0, 1}), Rational(1)), DomainError);
}

TEST_CASE("Katz-Koester inclusion holds for every quotient (fuzz)") {
    oracles::TestRng rng(203);
    for (int trial = 0; trial < 10; ++trial) {
        RSet a = rng.positive_set(16, 50);
        for (const Rational& lambda : combine(a, a, SetOp::Quot))
            CHECK(katz_koester_check(a, lambda).holds);
    }
}
