#pragma once

#include "sumprod/histogram.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

#include <array>
#include <optional>
#include <vector>

namespace sumprod {

struct SigmaWitness {
    Rational s1 = 1, s2 = 1, s3 = 1; // all nonzero
    Int count = 0;
    std::vector<std::array<Rational, 3>> triples; // solution listing, capped
};

/// Exact number of (a, b, c) in A x B x C with s1*a + s2*b + s3*c = 0.
/// Appends up to triple_cap solutions when triples is non-null.
Int sigma_count(const RSet& a, const RSet& b, const RSet& c,
                const Rational& s1, const Rational& s2, const Rational& s3,
                std::vector<std::array<Rational, 3>>* triples = nullptr,
                size_t triple_cap = 64);

/// Supremum of sigma_count over all nonzero coefficient triples,
/// exact. Works in the dual plane: each grid point constrains
/// (s2, s3) to a line once s1 is normalized to 1, so any coefficient
/// choice with two or more solutions is an intersection of two such
/// lines and the finite candidate set is exhaustive. Single-solution
/// suprema are covered by per-point constructed coefficients.
/// Throws ResourceLimitError when |A||B||C| > cap.
SigmaWitness sigma_sup(const RSet& a, const RSet& b, const RSet& c,
                       uint64_t cap = 1728);

struct PopularSpectrum {
    std::vector<std::pair<long long, RSet>> levels; // nonempty dyadic (t, S_t)
    long long best_t = 1;
    Int best_stat = 0;   // |S_t| * t^2 at best_t
    Int energy_times = 0;
};

/// Dyadic level sets of the quotient representation function of A.
/// Verifies the pigeonhole bound |S_t| t^2 >= Ex(A) / (2 (floor(log2 |A|) + 1))
/// at the maximizing t and throws CheckFailedError if it fails.
PopularSpectrum popular_spectrum(const RSet& a);

struct KatzKoesterCheck {
    bool holds = false;
    RSet slice;           // A ∩ λA
    RSet slice_products;  // (A ∩ λA)(A ∩ λA)
    std::optional<Rational> violator;
};

/// Verifies (A ∩ λA)(A ∩ λA) ⊆ AA ∩ λ(AA) exactly. λ must lie in A/A.
KatzKoesterCheck katz_koester_check(const RSet& a, const Rational& lambda);

/// Same check with the product set AA supplied by the caller, for loops
/// over many λ against one base set.
KatzKoesterCheck katz_koester_check(const RSet& a, const RSet& products,
                                    const Rational& lambda);

} // namespace sumprod
