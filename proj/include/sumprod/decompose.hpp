#pragma once

#include "sumprod/histogram.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"
#include "sumprod/structure.hpp"

#include <optional>
#include <vector>

namespace sumprod {

enum class ExtractMode { ThirdMult, ThirdAdd, Fourth };

/// One dyadic extraction step: a level set P of the primary histogram,
/// a secondary level q, and the extracted subset A' of the source, with
/// every pigeonhole bound and side condition stored for revalidation.
struct ExtractionCertificate {
    ExtractMode mode = ExtractMode::ThirdMult;
    RSet source;  // T
    RSet witness; // B

    long long delta = 1;
    RSet level; // P = {x : delta <= r(x) < 2 delta}
    long long q = 1;
    RSet extracted; // A' = {a in T : q <= s(a) < 2q}

    Int e_primary;           // third/fourth moment of (T, B)
    Int level_stat;          // |P| * delta^moment
    Int level_mass;          // sum of r over P
    Int extracted_stat;      // |A'| * q
    long long primary_max = 1;
    long long secondary_max = 1;

    // Covering witness implied by the extraction (third-moment modes).
    std::optional<DUpperWitness> d_witness;
    Rational d_claimed;   // |B|^2 |P|^2 / (q^3 |A'|)
    Rational d_validated; // witness value actually validated (t <= q)

    // Quotient-equation solution count (fourth-moment mode, capped).
    std::optional<Int> sols_count;
    Int sols_reference; // |P|^3 |B|^3
    bool sols_skipped = false;

    unsigned moment() const { return mode == ExtractMode::Fourth ? 4 : 3; }

    /// Recomputes everything from (source, witness, mode) and throws
    /// CheckFailedError on any mismatch.
    void revalidate() const;
};

/// Dyadic extraction behind the subset lemma: finds A' ⊆ T whose
/// covering witness certifies small additive (resp. multiplicative)
/// structure. ThirdMult requires 0 ∉ T and 0 ∉ B.
ExtractionCertificate lemma1_extract(const RSet& t, const RSet& b, ExtractMode mode);

/// Fourth-moment extraction; optionally brute-force counts solutions of
/// (p+b)/(q+c) = (p'+b')/(q'+c') when |P| and |B| are within sols_cap
/// (counting is skipped otherwise, certificate still produced).
ExtractionCertificate lemma11_extract(const RSet& a, const RSet& b,
                                      bool count_sols = true, size_t sols_cap = 6);

enum class DecompMode { TheoremMain, TheoremDecomp, PropSecond };

const char* decomp_mode_name(DecompMode mode);

struct PartitionStep {
    RSet chosen;
    bool additive_small = true; // joins B when true, C otherwise
    bool trivial = false;       // |remainder|^2 <= |A| stop rule
    Rational d_plus_estimate;   // pool bounds used for the branch choice
    Rational d_times_estimate;
};

struct DecompositionCertificate {
    DecompMode mode = DecompMode::TheoremMain;
    RSet input;
    std::vector<ExtractionCertificate> steps;

    RSet x; // TheoremMain: union of extractions. TheoremDecomp: B. PropSecond: remainder.
    RSet y; // TheoremMain: remainder. TheoremDecomp: C. PropSecond: union of extractions.
    size_t outer_iterations = 0;

    std::vector<PartitionStep> partition_steps; // TheoremDecomp only

    // Reported bound values (soft diagnostics; exact rationals).
    Rational d_lower_x; // d+(X), d+(B) or d4+(X) pool bound
    Rational d_lower_y; // dx(Y) or dx(C) pool bound (0 when the side is empty)
    Rational soft_product; // e.g. d+(X) * dx(Y)
    Int energy_x;  // TheoremDecomp: E+(B); PropSecond: unused
    Int energy_y;  // TheoremDecomp: Ex(C); PropSecond: Ex(Y)
    Int cross_energy_x; // TheoremDecomp: E+(B, A)
    Int cross_energy_y; // TheoremDecomp: Ex(C, A)

    void revalidate() const;
};

/// Halving decomposition: X ∪ Y = A, |X|, |Y| >= |A|/2, extraction
/// steps certify the multiplicative-to-additive tradeoff.
DecompositionCertificate theorem_main_decompose(const RSet& a);

/// Iterated halving partition A = B ⊔ C with at most ceil(log2 |A|) + 1
/// outer iterations; B collects additive-small parts, C the rest.
DecompositionCertificate theorem_decomp_partition(const RSet& a);

/// Fourth-moment halving decomposition: X ∪ Y = A, both halves at least
/// |A|/2, extracted side Y carries small multiplicative energy.
DecompositionCertificate prop_second_decompose(const RSet& a);

enum class UnionMode { L3Diff, L3Quot, L4MultEnergy };

struct UnionCheckResult {
    UnionMode mode = UnionMode::L3Diff;
    bool holds = false;
    Int lhs;                // moment of the union
    std::vector<Int> terms; // per-part moments
    RootCompare decision = RootCompare::LessOrEqual;
};

/// Exact union inequalities: cube-root triangle inequality for third
/// moments against a fixed B, and the fourth-root bound for
/// multiplicative energy. Parts must be pairwise disjoint.
UnionCheckResult union_triangle_check(const std::vector<RSet>& parts, const RSet& b,
                                      UnionMode mode);

} // namespace sumprod
