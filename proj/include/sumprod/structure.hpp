#pragma once

#include "sumprod/histogram.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

#include <string>
#include <vector>

namespace sumprod {

// d+(A), dx(A) and the fourth-moment analog are suprema over all finite
// witness sets B and are not exactly computable; this module certifies
// one-sided bounds. Lower bounds come from a fixed, versioned witness
// pool; upper bounds from validated (Q, R, t) covering witnesses.
// d+(A) also equals an operator norm of the convolution operator
// attached to A (|A| d+(A) is the cubed l^{3/2} -> l^3 norm); that
// formulation is documentation only and is not computed here.

enum class DKind { DPlus, DTimes, D4Plus };

const char* d_kind_name(DKind kind);

struct DLowerBound {
    DKind kind = DKind::DPlus;
    Rational value;
    RSet witness;
    Int e_moment;       // third (or fourth) moment of (A, witness)
    size_t a_size = 0;
    size_t b_size = 0;
};

/// Fixed witness pool, version 1: singleton {min A}, A, the reflected
/// or inverted copy, truncations of A-A (resp. A/A), small dyadic level
/// sets, and popular slices. Deterministic order and contents.
struct WitnessPool {
    int version = 1;
    std::vector<RSet> members;
};

WitnessPool default_witness_pool(const RSet& a, DKind kind);

DLowerBound d_lower(const RSet& a, DKind kind);
DLowerBound d_lower(const RSet& a, DKind kind, const WitnessPool& pool);

enum class DUpperKind { DPlus, DTimes };

struct DUpperWitness {
    DUpperKind kind = DUpperKind::DTimes;
    RSet q;
    RSet r;
    long long t = 1;
};

/// Checks |R| <= |Q|, t^2 |A| <= |Q| |R|^2 and elementwise coverage
/// A ⊆ {x : r_{Q∘R}(x) >= t}; returns |Q|^2 |R|^2 / (|A| t^3).
/// Throws InvalidWitnessError naming the violated constraint.
Rational validate_d_witness(const RSet& a, const DUpperWitness& w);

/// The covering witness Q = AB, R = B, t = |B|; valid for every finite
/// nonempty B with 0 not in B, giving the bound |AB|^2 / (|A||B|).
DUpperWitness product_witness(const RSet& a, const RSet& b);

struct KeyProbe {
    DLowerBound lower;         // additive-side pool bound
    DUpperWitness witness;     // best multiplicative covering witness found
    Rational upper;
    Rational ratio;            // lower / upper; diagnostic only
};

/// Two one-sided estimates around the additive-vs-multiplicative bridge
/// inequality. Reported, never asserted: both sides are one-sided.
KeyProbe key_inequality_probe(const RSet& a);

struct ChebyshevTail {
    long long tau = 1;
    long long tail_count = 0; // #{x : r(x) >= tau}
    Int e3;
    bool holds = false;       // tau^3 * tail_count <= e3
};

/// Third-moment tail bound; a theorem, so failure throws CheckFailedError.
ChebyshevTail chebyshev_tail(const RSet& a, const RSet& b, SetOp op, long long tau);

struct SigmaHolderCheck {
    Int count;         // solutions of a + s2 b + s3 c = 0
    Int fourth_moment; // sum over x of r_{A + s2 B}(x)^4
    size_t c_size = 0;
    bool holds = false; // count^4 <= |C|^3 * fourth_moment
};

/// Per-coefficient Hölder inequality behind the trilinear bound; exact,
/// no hidden constants. Throws CheckFailedError on violation (a bug).
SigmaHolderCheck sigma_bound_check(const RSet& a, const RSet& b, const RSet& c,
                                   const Rational& s2, const Rational& s3,
                                   uint64_t cap = 1u << 22);

} // namespace sumprod
