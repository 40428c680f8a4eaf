#include "sumprod/decompose.hpp"
#include "sumprod/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace sumprod {

namespace {

SetOp primary_op(ExtractMode mode) {
    return mode == ExtractMode::ThirdMult ? SetOp::Quot : SetOp::Diff;
}

// s(a) = #{b in B : the primary-op value of (a, b) lies in P}; summing
// s over the source equals the mass of P in the primary histogram.
long long secondary_count(const Rational& a, const RSet& b, const RSet& p, ExtractMode mode) {
    long long n = 0;
    for (const Rational& bv : b) {
        Rational key = mode == ExtractMode::ThirdMult ? Rational(a / bv) : Rational(a - bv);
        if (p.contains(key))
            ++n;
    }
    return n;
}

void check_extract_pre(const RSet& t, const RSet& b, ExtractMode mode) {
    if (t.empty() || b.empty())
        throw DomainError("extraction: empty operand");
    if (mode == ExtractMode::ThirdMult && (t.contains_zero() || b.contains_zero()))
        throw DomainError("extraction: multiplicative mode needs 0-free sets");
}

long pigeonhole_denominator(long long max_count) {
    return 2 * dyadic_bucket_bound(max_count);
}

ExtractionCertificate extract_core(const RSet& t, const RSet& b, ExtractMode mode) {
    check_extract_pre(t, b, mode);
    const unsigned moment = mode == ExtractMode::Fourth ? 4u : 3u;

    ExtractionCertificate cert;
    cert.mode = mode;
    cert.source = t;
    cert.witness = b;

    RepHistogram h = rep_histogram(t, b, primary_op(mode));
    cert.e_primary = moment_sum(h, moment);
    cert.primary_max = h.max_count;

    std::vector<long long> counts;
    counts.reserve(h.counts.size());
    for (const auto& [key, count] : h.counts)
        counts.push_back(count);
    LevelChoice lvl = best_level(counts, moment);
    cert.delta = lvl.level;
    cert.level_stat = lvl.stat;
    cert.level_mass = lvl.window_mass;
    {
        std::vector<Rational> keys;
        keys.reserve(lvl.member_indices.size());
        for (size_t i : lvl.member_indices)
            keys.push_back(h.counts[i].first);
        cert.level = RSet::from_sorted(std::move(keys));
    }

    // Secondary dyadic choice over the source elements hit by P.
    std::vector<long long> sec_counts;
    std::vector<size_t> sec_elems;
    long long sec_max = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        long long s = secondary_count(t[i], b, cert.level, mode);
        sec_max = std::max(sec_max, s);
        if (s > 0) {
            sec_counts.push_back(s);
            sec_elems.push_back(i);
        }
    }
    if (sec_counts.empty())
        throw InternalError("extraction: level set hit no source element");
    cert.secondary_max = sec_max;
    LevelChoice sec = best_level(sec_counts, 1);
    cert.q = sec.level;
    cert.extracted_stat = sec.stat;
    {
        std::vector<Rational> elems;
        elems.reserve(sec.member_indices.size());
        for (size_t i : sec.member_indices)
            elems.push_back(t[sec_elems[i]]);
        cert.extracted = RSet::from_sorted(std::move(elems));
    }

    // Pigeonhole guarantees with explicit constants.
    if (cert.level_stat * pigeonhole_denominator(cert.primary_max) < cert.e_primary)
        throw CheckFailedError("extraction: primary pigeonhole bound violated");
    if (cert.extracted_stat * pigeonhole_denominator(cert.secondary_max) < cert.level_mass)
        throw CheckFailedError("extraction: secondary pigeonhole bound violated");

    // Side conditions from the extraction arguments.
    if (cert.delta > static_cast<long long>(b.size()))
        throw CheckFailedError("extraction: delta exceeds |B|");
    long long min_bp = std::min(b.size(), cert.level.size());
    if (cert.q > min_bp)
        throw CheckFailedError("extraction: q exceeds min(|B|, |P|)");
    if (mode == ExtractMode::Fourth && cert.q > static_cast<long long>(t.size()))
        throw CheckFailedError("extraction: q exceeds |A| in fourth-moment mode");

    return cert;
}

// Covering witness implied by a third-moment extraction: every a' in A'
// has at least q representations as a product (resp. sum) with one
// factor from B and the other from P, oriented so |R| <= |Q| holds.
void attach_d_witness(ExtractionCertificate& cert) {
    DUpperWitness w;
    if (cert.mode == ExtractMode::ThirdMult) {
        w.kind = DUpperKind::DTimes;
        if (cert.level.size() <= cert.witness.size()) {
            w.q = cert.witness;
            w.r = inverse_set(cert.level);
        } else {
            w.q = cert.level;
            w.r = inverse_set(cert.witness);
        }
    } else {
        w.kind = DUpperKind::DPlus;
        if (cert.level.size() <= cert.witness.size()) {
            w.q = cert.witness;
            w.r = negate_set(cert.level);
        } else {
            w.q = cert.level;
            w.r = negate_set(cert.witness);
        }
    }

    cert.d_claimed = Rational(ipow(Int(cert.witness.size()), 2) * ipow(Int(cert.level.size()), 2),
                              ipow(Int(cert.q), 3) * Int(cert.extracted.size()));

    // t = q satisfies coverage; shrink t if the squared size constraint
    // fails exactly (any smaller t still covers).
    Int budget = Int(w.q.size()) * Int(w.r.size()) * Int(w.r.size());
    long long t = cert.q;
    if (Int(t) * t * Int(cert.extracted.size()) > budget) {
        Int tmax = sqrt(budget / Int(cert.extracted.size()));
        while (tmax * tmax * Int(cert.extracted.size()) > budget)
            --tmax;
        t = static_cast<long long>(tmax);
    }
    if (t < 1)
        throw InternalError("extraction: no valid witness threshold");
    w.t = t;
    cert.d_validated = validate_d_witness(cert.extracted, w);
    cert.d_witness = std::move(w);
}

Int count_quotient_solutions(const RSet& p, const RSet& b) {
    // Histogram the values (p+b)/(q+c); ordered pairs of equal-valued
    // tuples solve the quotient equation. Zero denominators excluded.
    std::unordered_map<Rational, long long> values;
    for (const Rational& pv : p) {
        for (const Rational& bv : b) {
            Rational num = pv + bv;
            for (const Rational& qv : p) {
                for (const Rational& cv : b) {
                    Rational den = qv + cv;
                    if (den == 0)
                        continue;
                    ++values[num / den];
                }
            }
        }
    }
    Int total = 0;
    for (const auto& [value, count] : values)
        total += Int(count) * count;
    return total;
}

} // namespace

ExtractionCertificate lemma1_extract(const RSet& t, const RSet& b, ExtractMode mode) {
    if (mode == ExtractMode::Fourth)
        throw DomainError("lemma1_extract: fourth-moment mode belongs to lemma11_extract");
    ExtractionCertificate cert = extract_core(t, b, mode);
    attach_d_witness(cert);
    return cert;
}

ExtractionCertificate lemma11_extract(const RSet& a, const RSet& b,
                                      bool count_sols, size_t sols_cap) {
    ExtractionCertificate cert = extract_core(a, b, ExtractMode::Fourth);
    cert.sols_reference = ipow(Int(cert.level.size()), 3) * ipow(Int(b.size()), 3);
    if (count_sols && cert.level.size() <= sols_cap && b.size() <= sols_cap) {
        cert.sols_count = count_quotient_solutions(cert.level, b);
    } else {
        cert.sols_skipped = true;
    }
    return cert;
}

void ExtractionCertificate::revalidate() const {
    ExtractionCertificate fresh = extract_core(source, witness, mode);
    if (fresh.delta != delta || !(fresh.level == level) || fresh.q != q ||
        !(fresh.extracted == extracted) || fresh.e_primary != e_primary ||
        fresh.level_stat != level_stat || fresh.level_mass != level_mass ||
        fresh.extracted_stat != extracted_stat || fresh.primary_max != primary_max ||
        fresh.secondary_max != secondary_max)
        throw CheckFailedError("extraction certificate: recomputation mismatch");
    if (extracted.empty() || !extracted.is_subset_of(source))
        throw CheckFailedError("extraction certificate: extracted set invalid");
    // Mass identity: the level mass equals the total of secondary counts.
    Int sec_total = 0;
    for (const Rational& x : source)
        sec_total += secondary_count(x, witness, level, mode);
    if (sec_total != level_mass)
        throw CheckFailedError("extraction certificate: double-count identity failed");
    if (d_witness) {
        Rational v = validate_d_witness(extracted, *d_witness);
        if (v != d_validated)
            throw CheckFailedError("extraction certificate: witness value mismatch");
    }
}

const char* decomp_mode_name(DecompMode mode) {
    switch (mode) {
    case DecompMode::TheoremMain: return "main";
    case DecompMode::TheoremDecomp: return "partition";
    case DecompMode::PropSecond: return "fourth";
    }
    throw InternalError("decomp_mode_name: bad mode");
}

namespace {

void check_decompose_pre(const RSet& a) {
    if (a.empty())
        throw DomainError("decompose: empty set");
    if (a.contains_zero())
        throw DomainError("decompose: set contains 0");
}

// Shared halving loop: extract disjoint nonempty pieces from the
// remainder until they cover at least half of A.
std::vector<ExtractionCertificate> halving_steps(const RSet& a, DKind witness_kind,
                                                 ExtractMode mode) {
    std::vector<ExtractionCertificate> steps;
    RSet remaining = a;
    size_t covered = 0;
    while (2 * covered < a.size()) {
        DLowerBound bound = d_lower(remaining, witness_kind);
        ExtractionCertificate cert = mode == ExtractMode::Fourth
                                         ? lemma11_extract(remaining, bound.witness)
                                         : lemma1_extract(remaining, bound.witness, mode);
        remaining = set_minus(remaining, cert.extracted);
        covered += cert.extracted.size();
        steps.push_back(std::move(cert));
    }
    return steps;
}

RSet union_of_steps(const std::vector<ExtractionCertificate>& steps, size_t count) {
    RSet u;
    for (size_t i = 0; i < count; ++i)
        u = set_union(u, steps[i].extracted);
    return u;
}

} // namespace

DecompositionCertificate theorem_main_decompose(const RSet& a) {
    check_decompose_pre(a);
    DecompositionCertificate cert;
    cert.mode = DecompMode::TheoremMain;
    cert.input = a;
    cert.steps = halving_steps(a, DKind::DTimes, ExtractMode::ThirdMult);
    cert.outer_iterations = cert.steps.size();
    cert.x = union_of_steps(cert.steps, cert.steps.size());
    cert.y = set_minus(a, union_of_steps(cert.steps, cert.steps.size() - 1));
    cert.d_lower_x = d_lower(cert.x, DKind::DPlus).value;
    cert.d_lower_y = d_lower(cert.y, DKind::DTimes).value;
    cert.soft_product = cert.d_lower_x * cert.d_lower_y;
    cert.revalidate();
    return cert;
}

DecompositionCertificate prop_second_decompose(const RSet& a) {
    check_decompose_pre(a);
    DecompositionCertificate cert;
    cert.mode = DecompMode::PropSecond;
    cert.input = a;
    cert.steps = halving_steps(a, DKind::D4Plus, ExtractMode::Fourth);
    cert.outer_iterations = cert.steps.size();
    cert.y = union_of_steps(cert.steps, cert.steps.size());
    cert.x = set_minus(a, union_of_steps(cert.steps, cert.steps.size() - 1));
    cert.d_lower_x = d_lower(cert.x, DKind::D4Plus).value;
    cert.energy_y = energy(cert.y, cert.y, SetOp::Quot, 2);
    cert.soft_product = cert.d_lower_x * Rational(cert.energy_y);
    cert.revalidate();
    return cert;
}

DecompositionCertificate theorem_decomp_partition(const RSet& a) {
    check_decompose_pre(a);
    DecompositionCertificate cert;
    cert.mode = DecompMode::TheoremDecomp;
    cert.input = a;

    RSet remaining = a;
    RSet part_b, part_c;
    while (!remaining.empty()) {
        ++cert.outer_iterations;
        PartitionStep step;
        if (Int(remaining.size()) * Int(remaining.size()) <= Int(a.size())) {
            // d+(S) <= |S| makes the additive tag free at this size.
            step.chosen = remaining;
            step.additive_small = true;
            step.trivial = true;
            step.d_plus_estimate = Rational(remaining.size());
            part_b = set_union(part_b, remaining);
            cert.partition_steps.push_back(std::move(step));
            break;
        }
        DecompositionCertificate inner = theorem_main_decompose(remaining);
        step.d_plus_estimate = inner.d_lower_x;
        step.d_times_estimate = inner.d_lower_y;
        step.trivial = false;
        if (inner.d_lower_x <= inner.d_lower_y) {
            step.chosen = inner.x;
            step.additive_small = true;
            part_b = set_union(part_b, inner.x);
        } else {
            step.chosen = inner.y;
            step.additive_small = false;
            part_c = set_union(part_c, inner.y);
        }
        for (auto& s : inner.steps)
            cert.steps.push_back(std::move(s));
        remaining = set_minus(remaining, step.chosen);
        cert.partition_steps.push_back(std::move(step));
    }

    cert.x = part_b;
    cert.y = part_c;
    if (!part_b.empty()) {
        cert.d_lower_x = d_lower(part_b, DKind::DPlus).value;
        cert.energy_x = energy(part_b, part_b, SetOp::Diff, 2);
        cert.cross_energy_x = energy(part_b, a, SetOp::Diff, 2);
    }
    if (!part_c.empty()) {
        cert.d_lower_y = d_lower(part_c, DKind::DTimes).value;
        cert.energy_y = energy(part_c, part_c, SetOp::Quot, 2);
        cert.cross_energy_y = energy(part_c, a, SetOp::Quot, 2);
    }
    cert.revalidate();
    return cert;
}

void DecompositionCertificate::revalidate() const {
    if (mode == DecompMode::TheoremMain || mode == DecompMode::PropSecond) {
        const RSet& extracted_union = mode == DecompMode::TheoremMain ? x : y;
        const RSet& remainder = mode == DecompMode::TheoremMain ? y : x;

        RSet expect_remaining = input;
        RSet built;
        for (size_t i = 0; i < steps.size(); ++i) {
            const ExtractionCertificate& s = steps[i];
            if (s.extracted.empty())
                throw CheckFailedError("decomposition: empty extraction step");
            if (!(s.source == expect_remaining))
                throw CheckFailedError("decomposition: step source mismatch");
            if (!s.extracted.disjoint_with(built))
                throw CheckFailedError("decomposition: extractions not disjoint");
            if (2 * built.size() >= input.size())
                throw CheckFailedError("decomposition: extra step after the halving stop");
            s.revalidate();
            built = set_union(built, s.extracted);
            expect_remaining = set_minus(expect_remaining, s.extracted);
        }
        if (!(built == extracted_union))
            throw CheckFailedError("decomposition: extracted union mismatch");
        RSet all_but_last = input;
        for (size_t i = 0; i + 1 < steps.size(); ++i)
            all_but_last = set_minus(all_but_last, steps[i].extracted);
        if (!(remainder == all_but_last))
            throw CheckFailedError("decomposition: remainder side mismatch");
        if (!(set_union(x, y) == input))
            throw CheckFailedError("decomposition: X ∪ Y != A");
        if (2 * x.size() < input.size() || 2 * y.size() < input.size())
            throw CheckFailedError("decomposition: halving sizes violated");
        if (steps.size() > (input.size() + 1) / 2)
            throw CheckFailedError("decomposition: too many extraction steps");
        if (outer_iterations != steps.size())
            throw CheckFailedError("decomposition: step count mismatch");
        return;
    }

    // TheoremDecomp: chosen parts partition the input.
    RSet seen;
    size_t budget = static_cast<size_t>(floor_log2(Int(input.size()))) + 2;
    if (outer_iterations != partition_steps.size() || partition_steps.size() > budget)
        throw CheckFailedError("partition: outer iteration budget exceeded");
    for (const PartitionStep& step : partition_steps) {
        if (step.chosen.empty())
            throw CheckFailedError("partition: empty step");
        if (!step.chosen.disjoint_with(seen))
            throw CheckFailedError("partition: overlapping steps");
        seen = set_union(seen, step.chosen);
    }
    if (!(seen == input))
        throw CheckFailedError("partition: steps do not cover the input");
    if (!x.disjoint_with(y))
        throw CheckFailedError("partition: sides overlap");
    if (!(set_union(x, y) == input))
        throw CheckFailedError("partition: B ∪ C != A");
    for (const ExtractionCertificate& s : steps)
        s.revalidate();
}

UnionCheckResult union_triangle_check(const std::vector<RSet>& parts, const RSet& b,
                                      UnionMode mode) {
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t j = i + 1; j < parts.size(); ++j)
            if (!parts[i].disjoint_with(parts[j]))
                throw DomainError("union_triangle_check: parts are not disjoint");

    UnionCheckResult out;
    out.mode = mode;
    RSet whole;
    for (const RSet& p : parts)
        whole = set_union(whole, p);
    if (whole.empty())
        throw DomainError("union_triangle_check: empty union");

    unsigned root = 3;
    switch (mode) {
    case UnionMode::L3Diff:
        out.lhs = energy(whole, b, SetOp::Diff, 3);
        for (const RSet& p : parts)
            if (!p.empty())
                out.terms.push_back(energy(p, b, SetOp::Diff, 3));
        break;
    case UnionMode::L3Quot:
        out.lhs = energy(whole, b, SetOp::Quot, 3);
        for (const RSet& p : parts)
            if (!p.empty())
                out.terms.push_back(energy(p, b, SetOp::Quot, 3));
        break;
    case UnionMode::L4MultEnergy:
        root = 4;
        out.lhs = energy(whole, whole, SetOp::Quot, 2);
        for (const RSet& p : parts)
            if (!p.empty())
                out.terms.push_back(energy(p, p, SetOp::Quot, 2));
        break;
    }

    out.decision = compare_root_sum(out.lhs, out.terms, root);
    out.holds = out.decision != RootCompare::Greater;
    if (!out.holds)
        throw CheckFailedError("union_triangle_check: union inequality violated");
    return out;
}

} // namespace sumprod
