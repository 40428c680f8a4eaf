#include "sumprod/decompose.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/families.hpp"
#include "sumprod/report.hpp"

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

TEST_CASE("extraction hand trace: T = B = {1,2}") {
    ExtractionCertificate c = lemma1_extract(mk({1, 2}), mk({1, 2}), ExtractMode::ThirdMult);
    // Quotient counts {1:2, 2:1, 1/2:1}; the level 2 window {1} carries
    // stat 8 against 2 for level 1.
    CHECK(c.delta == 2);
    CHECK(c.level == mk({1}));
    CHECK(c.q == 1);
    CHECK(c.extracted == mk({1, 2}));
    CHECK(c.e_primary == 10);
    CHECK(c.level_mass == 2);
    REQUIRE(c.d_witness.has_value());
    CHECK(c.d_claimed == Rational(2));
    CHECK(c.d_validated == Rational(2));
    c.revalidate();
}

TEST_CASE("extraction: singletons") {
    ExtractionCertificate c = lemma1_extract(mk({5}), mk({5}), ExtractMode::ThirdMult);
    CHECK(c.level == mk({1}));
    CHECK(c.extracted == mk({5}));
    c.revalidate();

    ExtractionCertificate add = lemma11_extract(mk({7}), mk({3}));
    CHECK(add.delta == 1);
    CHECK(add.level == mk({4})); // the single difference 7 - 3
    CHECK(add.extracted == mk({7}));
    add.revalidate();
}

TEST_CASE("extraction invariants on random inputs") {
    oracles::TestRng rng(401);
    for (int trial = 0; trial < 12; ++trial) {
        RSet t = rng.positive_set(18, 60);
        RSet b = rng.positive_set(12, 60);
        for (ExtractMode mode : {ExtractMode::ThirdMult, ExtractMode::ThirdAdd}) {
            ExtractionCertificate c = lemma1_extract(t, b, mode);
            CHECK(!c.extracted.empty());
            CHECK(c.extracted.is_subset_of(t));
            CHECK(c.delta <= static_cast<long long>(b.size()));
            CHECK(c.q <= static_cast<long long>(std::min(b.size(), c.level.size())));
            c.revalidate();
        }
        // Fourth-moment mode needs |B| <= |A| for its q side condition.
        if (b.size() <= t.size()) {
            ExtractionCertificate c = lemma11_extract(t, b);
            CHECK(c.q <= static_cast<long long>(t.size()));
            c.revalidate();
        }
    }
}

TEST_CASE("extraction mode preconditions") {
    CHECK_THROWS_AS(lemma1_extract(mk({0, 1}), mk({1}), ExtractMode::ThirdMult), DomainError);
    CHECK_THROWS_AS(lemma1_extract(RSet(), mk({1}), ExtractMode::ThirdMult), DomainError);
    CHECK_THROWS_AS(lemma1_extract(mk({1}), mk({1}), ExtractMode::Fourth), DomainError);
    // Additive mode tolerates zero.
    ExtractionCertificate c = lemma1_extract(mk({0, 1}), mk({0, 2}), ExtractMode::ThirdAdd);
    c.revalidate();
}

TEST_CASE("quotient-equation counting on a small extraction") {
    // |P| = |B| = 3 stays within the default cap.
    ExtractionCertificate c = lemma11_extract(mk({1, 2, 3}), mk({1, 2, 3}));
    if (c.level.size() <= 6) {
        CHECK(!c.sols_skipped);
        REQUIRE(c.sols_count.has_value());
        CHECK(*c.sols_count >= 1);
        CHECK(c.sols_reference ==
              ipow(Int(c.level.size()), 3) * ipow(Int(3), 3));
    }
    // A tight cap skips counting but still certifies.
    ExtractionCertificate skip = lemma11_extract(mk({1, 2, 3}), mk({1, 2, 3}), true, 0);
    CHECK(skip.sols_skipped);
    CHECK(!skip.sols_count.has_value());
    skip.revalidate();
}

TEST_CASE("halving decomposition: singleton and frozen sets") {
    DecompositionCertificate one = theorem_main_decompose(mk({9}));
    CHECK(one.x == mk({9}));
    CHECK(one.y == mk({9}));
    CHECK(one.steps.size() == 1);

    RSet a = mk({1, 2, 3, 4, 6, 8, 12, 24});
    DecompositionCertificate c = theorem_main_decompose(a);
    CHECK(set_union(c.x, c.y) == a);
    CHECK(c.x.size() >= 4);
    CHECK(c.y.size() >= 4);
    CHECK(c.soft_product == c.d_lower_x * c.d_lower_y);
}

TEST_CASE("halving decomposition on progressions and random sets") {
    for (const FamilySpec& spec :
         {FamilySpec::ap(64), FamilySpec::gp(32), FamilySpec::balog_wooley(8, 2),
          FamilySpec::random_subset(1000, 32, 7)}) {
        RSet a = generate(spec);
        DecompositionCertificate c = theorem_main_decompose(a);
        CHECK(set_union(c.x, c.y) == a);
        CHECK(2 * c.x.size() >= a.size());
        CHECK(2 * c.y.size() >= a.size());
        CHECK(c.steps.size() <= (a.size() + 1) / 2);
    }
}

TEST_CASE("partition decomposition") {
    DecompositionCertificate tiny = theorem_decomp_partition(mk({5}));
    CHECK(tiny.x == mk({5}));
    CHECK(tiny.y.empty());
    CHECK(tiny.outer_iterations == 1);

    DecompositionCertificate two = theorem_decomp_partition(mk({3, 7}));
    CHECK(set_union(two.x, two.y) == mk({3, 7}));
    CHECK(two.x.disjoint_with(two.y));

    for (const FamilySpec& spec : {FamilySpec::balog_wooley(4, 2), FamilySpec::ap(100),
                                   FamilySpec::random_subset(2000, 48, 3)}) {
        RSet a = generate(spec);
        DecompositionCertificate c = theorem_decomp_partition(a);
        CHECK(c.x.disjoint_with(c.y));
        CHECK(set_union(c.x, c.y) == a);
        size_t budget = 1;
        while ((size_t(1) << budget) < a.size())
            ++budget;
        CHECK(c.outer_iterations <= budget + 1);
        // Cross energies agree with a direct computation when present.
        if (!c.x.empty())
            CHECK(c.cross_energy_x == energy(c.x, a, SetOp::Diff, 2));
        if (!c.y.empty())
            CHECK(c.cross_energy_y == energy(c.y, a, SetOp::Quot, 2));
    }
}

TEST_CASE("fourth-moment decomposition") {
    DecompositionCertificate one = prop_second_decompose(mk({4}));
    CHECK(one.x == mk({4}));
    CHECK(one.y == mk({4}));

    for (const FamilySpec& spec : {FamilySpec::gp(8), FamilySpec::random_subset(1000, 32, 11)}) {
        RSet a = generate(spec);
        DecompositionCertificate c = prop_second_decompose(a);
        CHECK(set_union(c.x, c.y) == a);
        CHECK(2 * c.x.size() >= a.size());
        CHECK(2 * c.y.size() >= a.size());
        CHECK(c.energy_y == energy(c.y, c.y, SetOp::Quot, 2));
    }
}

TEST_CASE("decomposition preconditions") {
    CHECK_THROWS_AS(theorem_main_decompose(RSet()), DomainError);
    CHECK_THROWS_AS(theorem_main_decompose(mk({0, 1})), DomainError);
    CHECK_THROWS_AS(theorem_decomp_partition(mk({0, 1})), DomainError);
    CHECK_THROWS_AS(prop_second_decompose(mk({0, 1})), DomainError);
}

TEST_CASE("union triangle inequalities: worked examples") {
    // E3({1,2},{1,2}) = 10 vs parts {1},{2}: terms 2 and 2; 10 <= 16.
    UnionCheckResult l3 =
        union_triangle_check({mk({1}), mk({2})}, mk({1, 2}), UnionMode::L3Diff);
    CHECK(l3.holds);
    CHECK(l3.lhs == 10);
    CHECK(l3.terms == std::vector<Int>{Int(2), Int(2)});

    // Ex({1,2,3}) = 15 vs (Ex({1,2})^(1/4) + Ex({3})^(1/4))^4 ~ 43.3.
    UnionCheckResult l4 =
        union_triangle_check({mk({1, 2}), mk({3})}, RSet(), UnionMode::L4MultEnergy);
    CHECK(l4.holds);
    CHECK(l4.lhs == 15);
    CHECK(l4.terms == std::vector<Int>{Int(6), Int(1)});

    // A single part is an exact equality.
    UnionCheckResult eq = union_triangle_check({mk({1, 2, 3})}, mk({1, 5}), UnionMode::L3Diff);
    CHECK(eq.holds);
    CHECK(eq.decision == RootCompare::Equal);

    CHECK_THROWS_AS(union_triangle_check({mk({1, 2}), mk({2, 3})}, mk({1}), UnionMode::L3Diff),
                    DomainError);
}

TEST_CASE("union triangle inequalities on random partitions") {
    oracles::TestRng rng(402);
    for (int trial = 0; trial < 25; ++trial) {
        RSet a = rng.positive_set(24, 80);
        size_t k = 2 + static_cast<size_t>(rng.integer(0, 2));
        std::vector<std::vector<Rational>> buckets(k);
        for (size_t i = 0; i < a.size(); ++i)
            buckets[static_cast<size_t>(rng.integer(0, static_cast<long long>(k) - 1))]
                .push_back(a[i]);
        std::vector<RSet> parts;
        for (auto& b : buckets)
            parts.emplace_back(std::move(b));
        RSet b = rng.positive_set(12, 80);
        CHECK(union_triangle_check(parts, b, UnionMode::L3Diff).holds);
        CHECK(union_triangle_check(parts, b, UnionMode::L3Quot).holds);
        CHECK(union_triangle_check(parts, RSet(), UnionMode::L4MultEnergy).holds);
    }
}

TEST_CASE("certificates survive a serialization round trip") {
    RSet a = generate(FamilySpec::balog_wooley(4, 2));
    DecompositionCertificate cert = theorem_main_decompose(a);
    Json j = decomposition_to_json(cert);
    DecompositionCertificate back = decomposition_from_json(j);
    back.revalidate();
    CHECK(back.x == cert.x);
    CHECK(back.y == cert.y);
    CHECK(back.steps.size() == cert.steps.size());

    // Tampering must be detected by revalidation.
    ExtractionCertificate tampered = cert.steps[0];
    tampered.q += 1;
    CHECK_THROWS_AS(tampered.revalidate(), CheckFailedError);
    ExtractionCertificate wrong_level = cert.steps[0];
    wrong_level.level = set_union(wrong_level.level, mk({999983}));
    CHECK_THROWS_AS(wrong_level.revalidate(), CheckFailedError);
}
