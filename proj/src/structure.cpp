#include "sumprod/structure.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/errors.hpp"

#include <algorithm>

namespace sumprod {

const char* d_kind_name(DKind kind) {
    switch (kind) {
    case DKind::DPlus: return "d_plus";
    case DKind::DTimes: return "d_times";
    case DKind::D4Plus: return "d4_plus";
    }
    throw InternalError("d_kind_name: bad kind");
}

namespace {

bool additive(DKind kind) {
    return kind != DKind::DTimes;
}

// Elements of `values` closest to the additive (resp. multiplicative)
// identity, deterministic: sort by distance key then by value.
RSet truncate_near_identity(const RSet& values, size_t limit, bool multiplicative) {
    std::vector<Rational> sorted(values.begin(), values.end());
    auto key = [&](const Rational& v) -> Rational {
        if (!multiplicative)
            return abs(v);
        Rational m = abs(v);
        return m >= 1 ? m : Rational(1) / m;
    };
    std::stable_sort(sorted.begin(), sorted.end(), [&](const Rational& l, const Rational& r) {
        Rational kl = key(l), kr = key(r);
        if (kl != kr)
            return kl < kr;
        return l < r;
    });
    if (sorted.size() > limit)
        sorted.resize(limit);
    return RSet(std::move(sorted));
}

void push_unique(std::vector<RSet>& members, RSet candidate) {
    if (candidate.empty())
        return;
    for (const RSet& m : members)
        if (m == candidate)
            return;
    members.push_back(std::move(candidate));
}

} // namespace

WitnessPool default_witness_pool(const RSet& a, DKind kind) {
    if (a.empty())
        throw ConfigError("witness pool: empty base set");
    if (!additive(kind) && a.contains_zero())
        throw DomainError("witness pool: multiplicative kind needs 0-free set");

    // Size caps keep pool evaluation near-linear in |A| per member. The
    // fourth-moment pool is capped at |A| so extraction side conditions
    // (q <= |A|) stay provable.
    const size_t big_cap = kind == DKind::D4Plus ? a.size() : 4 * a.size();
    const size_t trunc_cap = kind == DKind::D4Plus ? a.size() : 2 * a.size();

    WitnessPool pool;
    push_unique(pool.members, RSet({a[0]})); // singleton: pins the bound >= 1
    push_unique(pool.members, a);

    if (additive(kind)) {
        push_unique(pool.members, negate_set(a));
        RSet diffs = combine(a, a, SetOp::Diff);
        push_unique(pool.members, truncate_near_identity(diffs, a.size(), false));
        push_unique(pool.members, truncate_near_identity(diffs, trunc_cap, false));
        RepHistogram h = rep_histogram(a, a, SetOp::Diff);
        for (long long t = 1; t <= h.max_count; t *= 2) {
            RSet level = h.level_keys(t, 2 * t);
            if (!level.empty() && level.size() <= big_cap)
                push_unique(pool.members, std::move(level));
        }
    } else {
        push_unique(pool.members, inverse_set(a));
        RSet quots = combine(a, a, SetOp::Quot);
        push_unique(pool.members, truncate_near_identity(quots, a.size(), true));
        push_unique(pool.members, truncate_near_identity(quots, trunc_cap, true));
        RepHistogram h = rep_histogram(a, a, SetOp::Quot);
        for (long long t = 1; t <= h.max_count; t *= 2) {
            RSet level = h.level_keys(t, 2 * t);
            if (!level.empty() && level.size() <= big_cap)
                push_unique(pool.members, std::move(level));
        }
    }

    // Popular slices A ∩ λA for the four most popular quotients λ != 1.
    if (!a.contains_zero() && a.size() > 1) {
        RepHistogram q = rep_histogram(a, a, SetOp::Quot);
        std::vector<std::pair<long long, Rational>> pop;
        for (const auto& [key, count] : q.counts)
            if (key != 1)
                pop.emplace_back(count, key);
        std::sort(pop.begin(), pop.end(), [](const auto& l, const auto& r) {
            if (l.first != r.first)
                return l.first > r.first;
            return l.second < r.second;
        });
        for (size_t i = 0; i < pop.size() && i < 4; ++i)
            push_unique(pool.members, popular_slice(a, pop[i].second));
    }
    return pool;
}

DLowerBound d_lower(const RSet& a, DKind kind) {
    return d_lower(a, kind, default_witness_pool(a, kind));
}

DLowerBound d_lower(const RSet& a, DKind kind, const WitnessPool& pool) {
    if (a.empty())
        throw DomainError("d_lower: empty set");
    if (!additive(kind) && a.contains_zero())
        throw DomainError("d_lower: multiplicative kind needs 0-free set");
    if (pool.members.empty())
        throw ConfigError("d_lower: empty witness pool");

    const SetOp op = additive(kind) ? SetOp::Diff : SetOp::Quot;
    const unsigned moment = kind == DKind::D4Plus ? 4 : 3;

    bool have = false;
    DLowerBound best;
    for (const RSet& b : pool.members) {
        if (b.empty())
            continue;
        if (op == SetOp::Quot && b.contains_zero())
            continue; // pool member unusable as a quotient witness
        Int e = energy(a, b, op, moment);
        Rational value(e, Int(a.size()) * ipow(Int(b.size()), moment - 1));
        bool better = false;
        if (!have) {
            better = true;
        } else if (value != best.value) {
            better = value > best.value;
        } else if (b.size() != best.witness.size()) {
            better = b.size() < best.witness.size();
        } else {
            better = b.elements() < best.witness.elements();
        }
        if (better) {
            have = true;
            best = DLowerBound{kind, value, b, e, a.size(), b.size()};
        }
    }
    if (!have)
        throw ConfigError("d_lower: no usable witness in pool");
    if (best.value < 1 || best.value > Int(a.size()))
        throw CheckFailedError("d_lower: bound escaped [1, |A|]");
    return best;
}

Rational validate_d_witness(const RSet& a, const DUpperWitness& w) {
    if (a.empty())
        throw DomainError("validate_d_witness: empty base set");
    if (w.q.empty() || w.r.empty())
        throw InvalidWitnessError("witness constraint failed: Q and R must be nonempty");
    if (w.kind == DUpperKind::DTimes && w.r.contains_zero())
        throw InvalidWitnessError("witness constraint failed: 0 in R for a quotient witness");
    if (w.r.size() > w.q.size())
        throw InvalidWitnessError("witness constraint failed: |R| <= |Q|");
    if (w.t < 1)
        throw InvalidWitnessError("witness constraint failed: t >= 1");
    if (Int(w.t) * w.t * Int(a.size()) > Int(w.q.size()) * Int(w.r.size()) * Int(w.r.size()))
        throw InvalidWitnessError("witness constraint failed: t^2 <= |Q| |R|^2 / |A|");
    for (const Rational& x : a) {
        long long reps = 0;
        for (const Rational& r : w.r) {
            Rational needed =
                w.kind == DUpperKind::DTimes ? Rational(x * r) : Rational(x + r);
            if (w.q.contains(needed))
                ++reps;
        }
        if (reps < w.t)
            throw InvalidWitnessError("witness constraint failed: coverage r(x) >= t at x = " +
                                      format_rational(x));
    }
    return Rational(ipow(Int(w.q.size()), 2) * ipow(Int(w.r.size()), 2),
                    Int(a.size()) * ipow(Int(w.t), 3));
}

DUpperWitness product_witness(const RSet& a, const RSet& b) {
    if (a.empty() || b.empty())
        throw DomainError("product_witness: empty operand");
    if (b.contains_zero())
        throw DomainError("product_witness: 0 in B");
    DUpperWitness w;
    w.kind = DUpperKind::DTimes;
    w.q = combine(a, b, SetOp::Prod);
    w.r = b;
    w.t = static_cast<long long>(b.size());
    return w;
}

KeyProbe key_inequality_probe(const RSet& a) {
    if (a.empty())
        throw DomainError("key_inequality_probe: empty set");
    if (a.contains_zero())
        throw DomainError("key_inequality_probe: set contains 0");

    KeyProbe probe;
    probe.lower = d_lower(a, DKind::DPlus);

    // Candidate B pool for the covering witness: singleton, the set
    // itself, its inverse, and popular slices.
    std::vector<RSet> candidates;
    candidates.push_back(RSet({a[0]}));
    candidates.push_back(a);
    candidates.push_back(inverse_set(a));
    if (a.size() > 1) {
        RepHistogram q = rep_histogram(a, a, SetOp::Quot);
        std::vector<std::pair<long long, Rational>> pop;
        for (const auto& [key, count] : q.counts)
            if (key != 1)
                pop.emplace_back(count, key);
        std::sort(pop.begin(), pop.end(), [](const auto& l, const auto& r) {
            if (l.first != r.first)
                return l.first > r.first;
            return l.second < r.second;
        });
        for (size_t i = 0; i < pop.size() && i < 4; ++i)
            candidates.push_back(popular_slice(a, pop[i].second));
    }

    bool have = false;
    for (const RSet& b : candidates) {
        if (b.empty() || b.contains_zero())
            continue;
        DUpperWitness w = product_witness(a, b);
        Rational value = validate_d_witness(a, w);
        if (!have || value < probe.upper ||
            (value == probe.upper && w.r.size() < probe.witness.r.size())) {
            have = true;
            probe.witness = std::move(w);
            probe.upper = value;
        }
    }
    if (!have)
        throw InternalError("key_inequality_probe: no witness candidate");
    probe.ratio = probe.lower.value / probe.upper;
    return probe;
}

ChebyshevTail chebyshev_tail(const RSet& a, const RSet& b, SetOp op, long long tau) {
    if (tau < 1)
        throw DomainError("chebyshev_tail: tau must be >= 1");
    RepHistogram h = rep_histogram(a, b, op);
    ChebyshevTail out;
    out.tau = tau;
    out.tail_count = h.tail_count(tau);
    out.e3 = moment_sum(h, 3);
    out.holds = ipow(Int(tau), 3) * out.tail_count <= out.e3;
    if (!out.holds)
        throw CheckFailedError("chebyshev_tail: third-moment tail bound violated");
    return out;
}

SigmaHolderCheck sigma_bound_check(const RSet& a, const RSet& b, const RSet& c,
                                   const Rational& s2, const Rational& s3, uint64_t cap) {
    if (a.empty() || b.empty() || c.empty())
        throw DomainError("sigma_bound_check: empty operand");
    if (s2 == 0 || s3 == 0)
        throw DomainError("sigma_bound_check: zero coefficient");
    uint64_t work = static_cast<uint64_t>(a.size()) * b.size() * std::max<uint64_t>(c.size(), 1);
    if (work > cap)
        throw ResourceLimitError("sigma_bound_check: work exceeds cap");

    SigmaHolderCheck out;
    out.c_size = c.size();
    out.count = sigma_count(a, b, c, Rational(1), s2, s3);
    // r(x) = #{(a, b) : a + s2 b = x}, realized as a difference histogram
    // against the dilated copy -s2 * B.
    RepHistogram h = rep_histogram(a, dilate(b, -s2), SetOp::Diff);
    out.fourth_moment = moment_sum(h, 4);
    out.holds = ipow(out.count, 4) <= ipow(Int(c.size()), 3) * out.fourth_moment;
    if (!out.holds)
        throw CheckFailedError("sigma_bound_check: per-coefficient Hölder bound violated");
    return out;
}

} // namespace sumprod
