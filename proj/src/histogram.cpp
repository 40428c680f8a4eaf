#include "sumprod/histogram.hpp"
#include "sumprod/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace sumprod {

long long RepHistogram::count_of(const Rational& key) const {
    auto it = std::lower_bound(counts.begin(), counts.end(), key,
                               [](const auto& entry, const Rational& k) { return entry.first < k; });
    if (it == counts.end() || it->first != key)
        return 0;
    return it->second;
}

Int RepHistogram::total_mass() const {
    Int mass = 0;
    for (const auto& [key, count] : counts)
        mass += count;
    return mass;
}

RSet RepHistogram::support() const {
    std::vector<Rational> keys;
    keys.reserve(counts.size());
    for (const auto& [key, count] : counts)
        keys.push_back(key);
    return RSet::from_sorted(std::move(keys));
}

RSet RepHistogram::level_keys(long long lo, long long hi) const {
    std::vector<Rational> keys;
    for (const auto& [key, count] : counts)
        if (count >= lo && count < hi)
            keys.push_back(key);
    return RSet::from_sorted(std::move(keys));
}

long long RepHistogram::tail_count(long long tau) const {
    long long n = 0;
    for (const auto& [key, count] : counts)
        if (count >= tau)
            ++n;
    return n;
}

namespace {

Rational apply_op(const Rational& x, const Rational& y, SetOp op) {
    switch (op) {
    case SetOp::Sum: return x + y;
    case SetOp::Diff: return x - y;
    case SetOp::Prod: return x * y;
    case SetOp::Quot: return x / y;
    }
    throw InternalError("apply_op: bad op");
}

void check_histogram_pre(const RSet& a, const RSet& b, SetOp op) {
    if (a.empty() || b.empty())
        throw DomainError("rep_histogram: empty operand");
    if (op == SetOp::Quot && b.contains_zero())
        throw DomainError("rep_histogram: quotient by a set containing 0");
}

RepHistogram finalize(std::vector<std::pair<Rational, long long>> counts,
                      const RSet& a, const RSet& b, SetOp op) {
    RepHistogram h;
    h.op = op;
    h.size_a = a.size();
    h.size_b = b.size();
    h.counts = std::move(counts);
    for (const auto& [key, count] : h.counts)
        h.max_count = std::max(h.max_count, count);
    return h;
}

} // namespace

RepHistogram rep_histogram(const RSet& a, const RSet& b, SetOp op) {
    check_histogram_pre(a, b, op);
    std::unordered_map<Rational, long long> table;
    table.reserve(a.size() * b.size());
    for (const Rational& x : a)
        for (const Rational& y : b)
            ++table[apply_op(x, y, op)];
    std::vector<std::pair<Rational, long long>> counts(table.begin(), table.end());
    std::sort(counts.begin(), counts.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    return finalize(std::move(counts), a, b, op);
}

RepHistogram rep_histogram_sort_merge(const RSet& a, const RSet& b, SetOp op) {
    check_histogram_pre(a, b, op);
    std::vector<Rational> values;
    values.reserve(a.size() * b.size());
    for (const Rational& x : a)
        for (const Rational& y : b)
            values.push_back(apply_op(x, y, op));
    std::sort(values.begin(), values.end());
    std::vector<std::pair<Rational, long long>> counts;
    for (size_t i = 0; i < values.size();) {
        size_t j = i;
        while (j < values.size() && values[j] == values[i])
            ++j;
        counts.emplace_back(values[i], static_cast<long long>(j - i));
        i = j;
    }
    return finalize(std::move(counts), a, b, op);
}

Int moment_sum(const RepHistogram& h, unsigned moment) {
    if (moment < 1 || moment > 4)
        throw DomainError("moment_sum: moment must be in 1..4");
    Int total = 0;
    for (const auto& [key, count] : h.counts)
        total += ipow(Int(count), moment);
    return total;
}

Int energy(const RSet& a, const RSet& b, SetOp op, unsigned moment) {
    return moment_sum(rep_histogram(a, b, op), moment);
}

LevelChoice best_level(const std::vector<long long>& counts, unsigned moment) {
    if (counts.empty())
        throw DomainError("best_level: empty count vector");
    long long maxc = 0;
    for (long long c : counts) {
        if (c < 1)
            throw DomainError("best_level: nonpositive count");
        maxc = std::max(maxc, c);
    }
    // freq[c] = how many entries have count exactly c.
    std::vector<long long> freq(static_cast<size_t>(maxc) + 2, 0);
    for (long long c : counts)
        ++freq[static_cast<size_t>(c)];
    // prefix[c] = #entries with count <= c.
    std::vector<long long> prefix(freq.size(), 0);
    for (size_t c = 1; c < freq.size(); ++c)
        prefix[c] = prefix[c - 1] + freq[c];

    long long best = 0;
    Int best_stat = -1;
    for (long long level = 1; level <= maxc; ++level) {
        long long hi = std::min(2 * level - 1, maxc);
        long long members = prefix[static_cast<size_t>(hi)] - prefix[static_cast<size_t>(level - 1)];
        if (members == 0)
            continue;
        Int stat = Int(members) * ipow(Int(level), moment);
        if (stat > best_stat) {
            best_stat = stat;
            best = level;
        }
    }
    if (best == 0)
        throw InternalError("best_level: no nonempty window");

    LevelChoice choice;
    choice.level = best;
    choice.stat = best_stat;
    choice.window_mass = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] >= best && counts[i] < 2 * best) {
            choice.member_indices.push_back(i);
            choice.window_mass += counts[i];
        }
    }
    return choice;
}

long dyadic_bucket_bound(long long max_count) {
    if (max_count < 1)
        throw DomainError("dyadic_bucket_bound: empty histogram");
    return floor_log2(Int(max_count)) + 1;
}

} // namespace sumprod
