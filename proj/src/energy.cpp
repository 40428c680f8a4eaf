#include "sumprod/energy.hpp"
#include "sumprod/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace sumprod {

Int sigma_count(const RSet& a, const RSet& b, const RSet& c,
                const Rational& s1, const Rational& s2, const Rational& s3,
                std::vector<std::array<Rational, 3>>* triples, size_t triple_cap) {
    if (s1 == 0 || s2 == 0 || s3 == 0)
        throw DomainError("sigma_count: coefficients must be nonzero");
    Int count = 0;
    for (const Rational& x : a) {
        for (const Rational& y : b) {
            Rational z = -(s1 * x + s2 * y) / s3;
            if (c.contains(z)) {
                ++count;
                if (triples && triples->size() < triple_cap)
                    triples->push_back({x, y, z});
            }
        }
    }
    return count;
}

namespace {

struct IntTripleHash {
    size_t operator()(const std::array<Int, 3>& t) const {
        size_t h = 0;
        for (const Int& v : t)
            h = h * 1000003 + std::hash<Int>{}(v);
        return h;
    }
};

// Primitive integer representative of the projective class of a grid
// point: denominators cleared, gcd removed, leading sign positive.
std::array<Int, 3> primitive_class(const Rational& x, const Rational& y, const Rational& z) {
    Int scale = lcm(lcm(denominator(x), denominator(y)), denominator(z));
    std::array<Int, 3> t{numerator(x) * (scale / denominator(x)),
                         numerator(y) * (scale / denominator(y)),
                         numerator(z) * (scale / denominator(z))};
    Int g = gcd(gcd(abs(t[0]), abs(t[1])), abs(t[2]));
    bool flip = false;
    for (const Int& v : t) {
        if (v != 0) {
            flip = v < 0;
            break;
        }
    }
    for (Int& v : t) {
        v /= g;
        if (flip)
            v = -v;
    }
    return t;
}

// Valid coefficients (1, s2, s3), s2 s3 != 0, vanishing on the given
// projective class representative.
std::optional<std::pair<Rational, Rational>> coefficients_through(const std::array<Int, 3>& p) {
    Rational p0(p[0]), p1(p[1]), p2(p[2]);
    if (p0 != 0 && p1 != 0 && p2 != 0) {
        for (int cand = 1; cand <= 2; ++cand) {
            Rational s2(cand);
            Rational top = p0 + s2 * p1;
            if (top != 0)
                return std::make_pair(s2, Rational(-top / p2));
        }
        return std::nullopt; // unreachable: at most one candidate vanishes
    }
    if (p0 != 0 && p1 != 0) // p2 == 0
        return std::make_pair(Rational(-p0 / p1), Rational(1));
    if (p0 != 0 && p2 != 0) // p1 == 0
        return std::make_pair(Rational(1), Rational(-p0 / p2));
    if (p1 != 0 && p2 != 0) // p0 == 0: need s2*p1 + s3*p2 = 0
        return std::make_pair(Rational(-p2 / p1), Rational(1));
    return std::nullopt; // two zero coordinates: no valid coefficients
}

} // namespace

SigmaWitness sigma_sup(const RSet& a, const RSet& b, const RSet& c, uint64_t cap) {
    if (a.empty() || b.empty() || c.empty())
        throw DomainError("sigma_sup: empty operand");
    uint64_t grid = static_cast<uint64_t>(a.size()) * b.size() * c.size();
    if (grid > cap)
        throw ResourceLimitError("sigma_sup: grid size " + std::to_string(grid) +
                                 " exceeds cap " + std::to_string(cap));

    // Group grid points into projective classes; proportional points lie
    // on exactly the same coefficient planes. Classes are primitive
    // integer triples so the pair loop below stays in integer arithmetic.
    Int origin_weight = 0;
    std::unordered_map<std::array<Int, 3>, long long, IntTripleHash> classes;
    for (const Rational& x : a) {
        for (const Rational& y : b) {
            for (const Rational& z : c) {
                int zeros = (x == 0) + (y == 0) + (z == 0);
                if (zeros == 3) {
                    ++origin_weight;
                    continue;
                }
                if (zeros == 2)
                    continue; // no valid coefficient triple vanishes here
                classes[primitive_class(x, y, z)] += 1;
            }
        }
    }

    std::vector<std::pair<std::array<Int, 3>, long long>> class_list(classes.begin(),
                                                                     classes.end());
    std::sort(class_list.begin(), class_list.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });

    Int best_count = -1;
    Rational best_s2 = 1, best_s3 = 1;
    auto consider = [&](const Int& count, const Rational& s2, const Rational& s3) {
        if (count > best_count) {
            best_count = count;
            best_s2 = s2;
            best_s3 = s3;
        }
    };

    // Points where two or more dual lines meet: exact multiplicity and
    // weight recovered from pair statistics (k lines give C(k,2) pairs).
    // The meeting point (s2, s3) = (u2/w, u3/w) is stored as a primitive
    // integer triple with w > 0.
    struct Accum {
        long long pair_count = 0;
        Int weight_sum = 0;
    };
    std::unordered_map<std::array<Int, 3>, Accum, IntTripleHash> meets;
    for (size_t i = 0; i < class_list.size(); ++i) {
        const auto& [p, wp] = class_list[i];
        for (size_t j = i + 1; j < class_list.size(); ++j) {
            const auto& [q, wq] = class_list[j];
            Int det = p[1] * q[2] - p[2] * q[1];
            if (det == 0)
                continue; // parallel dual lines
            Int u2 = p[2] * q[0] - p[0] * q[2];
            Int u3 = p[0] * q[1] - p[1] * q[0];
            if (u2 == 0 || u3 == 0)
                continue; // coefficient triple would have a zero entry
            if (det < 0) {
                det = -det;
                u2 = -u2;
                u3 = -u3;
            }
            Int g = gcd(gcd(abs(u2), abs(u3)), det);
            if (g > 1) {
                u2 /= g;
                u3 /= g;
                det /= g;
            }
            Accum& acc = meets[{u2, u3, det}];
            acc.pair_count += 1;
            acc.weight_sum += wp + wq;
        }
    }
    {
        std::vector<std::pair<std::array<Int, 3>, Accum>> ordered(meets.begin(), meets.end());
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        for (const auto& [key, acc] : ordered) {
            Int k = (1 + sqrt(Int(1) + 8 * acc.pair_count)) / 2;
            if (k * (k - 1) / 2 != acc.pair_count || acc.weight_sum % (k - 1) != 0)
                throw InternalError("sigma_sup: inconsistent pair statistics");
            consider(acc.weight_sum / (k - 1) + origin_weight, Rational(key[0], key[2]),
                     Rational(key[1], key[2]));
        }
    }

    // Single-class candidates (coefficient triples with exactly one
    // projective class of solutions), plus the all-zero fallback.
    for (const auto& [p, w] : class_list)
        if (auto s = coefficients_through(p))
            consider(w + origin_weight, s->first, s->second);
    if (best_count < 0)
        consider(origin_weight, Rational(1), Rational(1));

    SigmaWitness out;
    out.s1 = 1;
    out.s2 = best_s2;
    out.s3 = best_s3;
    out.count = sigma_count(a, b, c, out.s1, out.s2, out.s3, &out.triples);
    if (out.count != best_count)
        throw InternalError("sigma_sup: witness recount mismatch");
    return out;
}

PopularSpectrum popular_spectrum(const RSet& a) {
    if (a.empty())
        throw DomainError("popular_spectrum: empty set");
    if (a.contains_zero())
        throw DomainError("popular_spectrum: set contains 0");
    RepHistogram h = rep_histogram(a, a, SetOp::Quot);

    PopularSpectrum spec;
    spec.energy_times = moment_sum(h, 2);
    Int best = -1;
    for (long long t = 1; t <= h.max_count; t *= 2) {
        RSet level = h.level_keys(t, 2 * t);
        if (level.empty())
            continue;
        Int stat = Int(level.size()) * Int(t) * Int(t);
        if (stat > best) {
            best = stat;
            spec.best_t = t;
            spec.best_stat = stat;
        }
        spec.levels.emplace_back(t, std::move(level));
    }

    long log_bound = floor_log2(Int(a.size())) + 1;
    if (spec.best_stat * 2 * log_bound < spec.energy_times)
        throw CheckFailedError("popular_spectrum: pigeonhole bound violated");
    return spec;
}

KatzKoesterCheck katz_koester_check(const RSet& a, const Rational& lambda) {
    if (a.empty())
        throw DomainError("katz_koester_check: empty set");
    return katz_koester_check(a, combine(a, a, SetOp::Prod), lambda);
}

KatzKoesterCheck katz_koester_check(const RSet& a, const RSet& products,
                                    const Rational& lambda) {
    if (a.empty())
        throw DomainError("katz_koester_check: empty set");
    if (a.contains_zero())
        throw DomainError("katz_koester_check: set contains 0");
    if (lambda == 0)
        throw DomainError("katz_koester_check: zero lambda");
    KatzKoesterCheck out;
    out.slice = popular_slice(a, lambda);
    if (out.slice.empty())
        throw DomainError("katz_koester_check: lambda is not a quotient of the set");
    out.slice_products = combine(out.slice, out.slice, SetOp::Prod);
    RSet target = set_intersect(products, dilate(products, lambda));
    out.holds = true;
    for (const Rational& v : out.slice_products) {
        if (!target.contains(v)) {
            out.holds = false;
            out.violator = v;
            break;
        }
    }
    return out;
}

} // namespace sumprod
