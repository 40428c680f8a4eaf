#include "sumprod/errors.hpp"
#include "sumprod/set.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

using namespace sumprod;

namespace {
RSet mk(std::initializer_list<const char*> values) {
    std::vector<Rational> v;
    for (const char* t : values)
        v.push_back(parse_rational(t));
    return RSet(std::move(v));
}
} // namespace

TEST_CASE("set construction sorts, dedups, canonicalizes") {
    CHECK(RSet({Rational(1), Rational(1), Rational(2)}).size() == 2);
    CHECK(mk({"1/2", "2/4"}).size() == 1);
    CHECK(RSet().size() == 0);
    RSet s = mk({"3", "-1", "2"});
    CHECK(s[0] == Rational(-1));
    CHECK(s[2] == Rational(3));
    CHECK(s.contains(Rational(2)));
    CHECK(!s.contains(Rational(5)));
}

TEST_CASE("combine: the four pair operations") {
    RSet a = mk({"1", "2", "3"});
    CHECK(combine(a, a, SetOp::Sum) == mk({"2", "3", "4", "5", "6"}));
    CHECK(combine(a, a, SetOp::Prod) == mk({"1", "2", "3", "4", "6", "9"}));
    CHECK(combine(a, a, SetOp::Quot) == mk({"1/3", "1/2", "2/3", "1", "3/2", "2", "3"}));
    CHECK(combine(a, mk({"0"}), SetOp::Sum) == a);
    CHECK_THROWS_AS(combine(a, mk({"0", "1"}), SetOp::Quot), DomainError);
    CHECK(combine(RSet(), a, SetOp::Sum).empty());
}

TEST_CASE("combine size bounds and symmetry properties") {
    oracles::TestRng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        RSet a = rng.rational_set(12, 40, 6);
        RSet b = rng.rational_set(12, 40, 6);
        for (SetOp op : {SetOp::Sum, SetOp::Diff, SetOp::Prod}) {
            CHECK(combine(a, b, op).size() <= a.size() * b.size());
            if (op != SetOp::Diff)
                CHECK(combine(a, b, op) == combine(b, a, op));
        }
        if (!a.empty() && !b.empty()) {
            CHECK(combine(a, b, SetOp::Sum).size() >= a.size() + b.size() - 1);
            CHECK(combine(a, b, SetOp::Diff).size() >= a.size() + b.size() - 1);
        }
        RSet diffs = combine(a, a, SetOp::Diff);
        CHECK(diffs.contains(Rational(0)));
        CHECK(negate_set(diffs) == diffs);
    }
}

TEST_CASE("inverse_set with the zero convention") {
    CHECK(inverse_set(mk({"1", "2", "4"})) == mk({"1/4", "1/2", "1"}));
    CHECK(inverse_set(mk({"0", "1"})) == mk({"0", "1"}));
    CHECK(inverse_set(RSet()).empty());
    oracles::TestRng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        RSet a = rng.rational_set(16, 30, 5);
        CHECK(inverse_set(inverse_set(a)) == a);
    }
}

TEST_CASE("dilate and popular_slice") {
    RSet a = mk({"1", "2", "4"});
    CHECK(dilate(a, Rational(2)) == mk({"2", "4", "8"}));
    CHECK(dilate(a, Rational(1)) == a);
    CHECK(dilate(mk({"1", "3"}), Rational(1, 3)) == mk({"1/3", "1"}));
    CHECK_THROWS_AS(dilate(a, Rational(0)), DomainError);
    CHECK(dilate(dilate(a, Rational(5, 3)), Rational(3, 5)) == a);

    CHECK(popular_slice(a, Rational(2)) == mk({"2", "4"}));
    CHECK(popular_slice(a, Rational(1)) == a);
    CHECK(popular_slice(a, Rational(7)).empty()); // 7 is not a quotient of a
    CHECK_THROWS_AS(popular_slice(a, Rational(0)), DomainError);
}

TEST_CASE("set algebra helpers") {
    RSet a = mk({"1", "2", "3"});
    RSet b = mk({"3", "4"});
    CHECK(set_union(a, b) == mk({"1", "2", "3", "4"}));
    CHECK(set_minus(a, b) == mk({"1", "2"}));
    CHECK(set_intersect(a, b) == mk({"3"}));
    CHECK(a.is_subset_of(set_union(a, b)));
    CHECK(!a.disjoint_with(b));
    CHECK(mk({"1"}).disjoint_with(mk({"2"})));
    CHECK(strip_zero(mk({"0", "1"})) == mk({"1"}));
}

TEST_CASE("set file format") {
    CHECK(parse_set_text("1\n2\n3\n") == mk({"1", "2", "3"}));
    CHECK(parse_set_text("1/2\n2/4\n") == mk({"1/2"}));
    CHECK(parse_set_text("# comment\n\n  5  \n-3/2\n") == mk({"-3/2", "5"}));
    CHECK(parse_set_text("").empty());
    CHECK_THROWS_WITH_AS(parse_set_text("abc"), doctest::Contains("line 1"), InputError);
    CHECK_THROWS_WITH_AS(parse_set_text("1\n2\nx/3\n"), doctest::Contains("line 3"), InputError);

    // Emit-then-parse is the identity on canonical sets.
    oracles::TestRng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        RSet a = rng.rational_set(24, 50, 9);
        CHECK(parse_set_text(format_set_text(a)) == a);
    }
}
