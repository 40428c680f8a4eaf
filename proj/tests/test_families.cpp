#include "sumprod/errors.hpp"
#include "sumprod/families.hpp"
#include "sumprod/histogram.hpp"

#include <doctest.h>

using namespace sumprod;

TEST_CASE("arithmetic and geometric progressions") {
    RSet ap = generate(FamilySpec::ap(5));
    CHECK(ap == RSet({Rational(1), Rational(2), Rational(3), Rational(4), Rational(5)}));
    CHECK(combine(ap, ap, SetOp::Sum).size() == 9);

    RSet gp = generate(FamilySpec::gp(4));
    CHECK(gp == RSet({Rational(1), Rational(2), Rational(4), Rational(8)}));
    CHECK(combine(gp, gp, SetOp::Prod).size() == 7);

    // Rational parameters.
    RSet half = generate(FamilySpec::gp(3, Rational(1), Rational(1, 2)));
    CHECK(half == RSet({Rational(1, 4), Rational(1, 2), Rational(1)}));
    RSet stepped = generate(FamilySpec::ap(3, Rational(1, 2), Rational(3, 2)));
    CHECK(stepped == RSet({Rational(1, 2), Rational(2), Rational(7, 2)}));
}

TEST_CASE("progression size identities across sizes") {
    for (long long n : {1, 2, 5, 16, 40}) {
        RSet ap = generate(FamilySpec::ap(n));
        CHECK(ap.size() == static_cast<size_t>(n));
        CHECK(combine(ap, ap, SetOp::Sum).size() == static_cast<size_t>(2 * n - 1));
        RSet gp = generate(FamilySpec::gp(n));
        CHECK(combine(gp, gp, SetOp::Prod).size() == static_cast<size_t>(2 * n - 1));
    }
}

TEST_CASE("odd-times-power family") {
    RSet bw = generate(FamilySpec::balog_wooley(2, 2));
    CHECK(bw == RSet({Rational(2), Rational(4), Rational(6), Rational(12)}));
    for (auto [s, p] : {std::pair<long long, long long>{4, 2}, {9, 3}, {16, 4}}) {
        RSet x = generate(FamilySpec::balog_wooley(s, p));
        CHECK(x.size() == static_cast<size_t>(s * p));
        for (const Rational& v : x) {
            CHECK(v > 0);
            CHECK(denominator(v) == 1);
            CHECK(numerator(v) % 2 == 0);
        }
    }
}

TEST_CASE("random subsets are reproducible and in range") {
    RSet a = generate(FamilySpec::random_subset(1000, 32, 7));
    RSet b = generate(FamilySpec::random_subset(1000, 32, 7));
    CHECK(a == b);
    CHECK(a.size() == 32);
    for (const Rational& v : a) {
        CHECK(v >= 1);
        CHECK(v <= 1000);
        CHECK(denominator(v) == 1);
    }
    RSet c = generate(FamilySpec::random_subset(1000, 32, 8));
    CHECK(!(a == c)); // different seed, different set (overwhelmingly)

    // Full-universe draw is a permutation of 1..N.
    RSet full = generate(FamilySpec::random_subset(12, 12, 3));
    CHECK(full.size() == 12);
    CHECK(full[0] == 1);
    CHECK(full[11] == 12);
}

TEST_CASE("splitmix64 reference stream") {
    // First outputs for seed 0 of the published splitmix64 algorithm.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next() == 0x06c45d188009454fULL);
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS(generate(FamilySpec::ap(0)), ConfigError);
    CHECK_THROWS_AS(generate(FamilySpec::ap(3, Rational(1), Rational(0))), ConfigError);
    CHECK_THROWS_AS(generate(FamilySpec::gp(3, Rational(0), Rational(2))), ConfigError);
    CHECK_THROWS_AS(generate(FamilySpec::gp(3, Rational(1), Rational(1))), ConfigError);
    CHECK_THROWS_AS(generate(FamilySpec::gp(3, Rational(1), Rational(-1))), ConfigError);
    CHECK_THROWS_AS(generate(FamilySpec::balog_wooley(0, 2)), ConfigError);
    CHECK_THROWS_AS(generate(FamilySpec::random_subset(10, 11, 0)), ConfigError);
}

TEST_CASE("negative-ratio progressions stay distinct") {
    RSet g = generate(FamilySpec::gp(5, Rational(1), Rational(-2)));
    CHECK(g.size() == 5);
    CHECK(g.contains(Rational(-2)));
    CHECK(g.contains(Rational(4)));
}
