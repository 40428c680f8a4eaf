#include "sumprod/incidence.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/families.hpp"
#include "sumprod/histogram.hpp"

#include <algorithm>
#include <unordered_map>

namespace sumprod {

PointSet::PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

LineSet::LineSet(std::vector<Line> lines) : lines_(std::move(lines)) {
    std::sort(lines_.begin(), lines_.end());
    lines_.erase(std::unique(lines_.begin(), lines_.end()), lines_.end());
}

long long count_incidences(const PointSet& p, const LineSet& l, uint64_t cap) {
    uint64_t work = static_cast<uint64_t>(p.size()) * l.size();
    if (work > cap)
        throw ResourceLimitError("count_incidences: |P|*|L| = " + std::to_string(work) +
                                 " exceeds cap " + std::to_string(cap));
    // Group ordinates by abscissa so each line costs one probe per column.
    std::unordered_map<Rational, std::vector<Rational>> columns;
    for (const Point& pt : p.points())
        columns[pt.x].push_back(pt.y);
    for (auto& [x, ys] : columns)
        std::sort(ys.begin(), ys.end());

    long long count = 0;
    for (const Line& line : l.lines()) {
        if (line.vertical) {
            auto it = columns.find(line.intercept);
            if (it != columns.end())
                count += static_cast<long long>(it->second.size());
            continue;
        }
        for (const auto& [x, ys] : columns) {
            Rational y = line.slope * x + line.intercept;
            if (std::binary_search(ys.begin(), ys.end(), y))
                ++count;
        }
    }
    return count;
}

Rational st_bound(uint64_t p, uint64_t l) {
    Int cross = ipow(Int(p), 2) * ipow(Int(l), 2);
    return Rational(4 * iroot_ceil(cross, 3) + 4 * Int(p) + Int(l));
}

bool st_check(const Int& count, uint64_t p, uint64_t l) {
    Int linear = 4 * Int(p) + Int(l);
    if (count <= linear)
        return true;
    return ipow(count - linear, 3) <= 64 * ipow(Int(p), 2) * ipow(Int(l), 2);
}

ElekesConfig elekes_config(const RSet& a, uint64_t cap) {
    if (a.empty())
        throw DomainError("elekes_config: empty set");
    if (a.contains_zero())
        throw DomainError("elekes_config: set contains 0");

    ElekesConfig cfg;
    RSet sums = combine(a, a, SetOp::Sum);
    RSet products = combine(a, a, SetOp::Prod);
    {
        uint64_t grid = static_cast<uint64_t>(sums.size()) * products.size();
        uint64_t work = grid * a.size() * a.size();
        if (work > cap)
            throw ResourceLimitError("elekes_config: |P|*|L| = " + std::to_string(work) +
                                     " exceeds cap " + std::to_string(cap));
    }
    std::vector<Point> pts;
    pts.reserve(sums.size() * products.size());
    for (const Rational& s : sums)
        for (const Rational& m : products)
            pts.push_back({s, m});
    cfg.points = PointSet(std::move(pts));

    std::vector<Line> lines;
    lines.reserve(a.size() * a.size());
    for (const Rational& slope : a)
        for (const Rational& c : a)
            lines.push_back({false, slope, -slope * c});
    cfg.lines = LineSet(std::move(lines));

    cfg.incidences = count_incidences(cfg.points, cfg.lines, cap);
    cfg.floor_value = Int(a.size()) * Int(cfg.lines.size());
    cfg.floor_holds = Int(cfg.incidences) >= cfg.floor_value;
    cfg.st_holds = st_check(Int(cfg.incidences), cfg.points.size(), cfg.lines.size());
    if (!cfg.floor_holds)
        throw CheckFailedError("elekes_config: incidence floor violated");
    if (!cfg.st_holds)
        throw CheckFailedError("elekes_config: incidence upper bound violated");
    return cfg;
}

DstarConfig dstar_config(const DUpperWitness& w, const RSet& b, const RSet& a,
                         long long tau, uint64_t cap) {
    if (a.empty() || b.empty() || w.q.empty() || w.r.empty())
        throw DomainError("dstar_config: empty operand");
    if (w.r.contains_zero())
        throw DomainError("dstar_config: 0 in R");
    if (tau < 1)
        throw DomainError("dstar_config: tau must be >= 1");
    // Witness coverage precondition: every a has t popular quotients.
    for (const Rational& x : a) {
        long long reps = 0;
        for (const Rational& r : w.r)
            if (w.q.contains(x * r))
                ++reps;
        if (reps < w.t)
            throw DomainError("dstar_config: witness does not cover the set at t");
    }

    DstarConfig cfg;
    RepHistogram diffs = rep_histogram(a, b, SetOp::Diff);
    RSet popular = diffs.level_keys(tau, diffs.max_count + 1);
    cfg.popular_diff_count = static_cast<long long>(popular.size());
    {
        uint64_t work = static_cast<uint64_t>(w.q.size()) * popular.size() * w.r.size() * b.size();
        if (work > cap)
            throw ResourceLimitError("dstar_config: |P|*|L| = " + std::to_string(work) +
                                     " exceeds cap " + std::to_string(cap));
    }

    std::vector<Point> pts;
    pts.reserve(w.q.size() * popular.size());
    for (const Rational& qv : w.q)
        for (const Rational& x : popular)
            pts.push_back({qv, x});
    cfg.points = PointSet(std::move(pts));

    std::vector<Line> lines;
    lines.reserve(w.r.size() * b.size());
    for (const Rational& r : w.r)
        for (const Rational& bv : b)
            lines.push_back({false, Rational(1) / r, -bv});
    cfg.lines = LineSet(std::move(lines));

    cfg.incidences = count_incidences(cfg.points, cfg.lines, cap);
    cfg.floor_value = Int(w.t) * Int(tau) * Int(cfg.popular_diff_count);
    cfg.floor_holds = Int(cfg.incidences) >= cfg.floor_value;
    cfg.st_holds = st_check(Int(cfg.incidences), cfg.points.size(), cfg.lines.size());
    if (!cfg.floor_holds)
        throw CheckFailedError("dstar_config: incidence floor violated");
    if (!cfg.st_holds)
        throw CheckFailedError("dstar_config: incidence upper bound violated");
    return cfg;
}

std::pair<PointSet, LineSet> random_incidence_config(uint64_t seed, size_t max_points,
                                                     size_t max_lines) {
    if (max_points == 0 || max_lines == 0)
        throw ConfigError("random_incidence_config: zero sizes");
    SplitMix64 rng(seed);
    auto coord = [&]() { return Rational(static_cast<long long>(rng.next_below(61)) - 30); };

    size_t n_points = 1 + rng.next_below(max_points);
    std::vector<Point> pts;
    pts.reserve(n_points);
    for (size_t i = 0; i < n_points; ++i)
        pts.push_back({coord(), coord()});
    PointSet points(std::move(pts));

    size_t n_lines = 1 + rng.next_below(max_lines);
    std::vector<Line> lines;
    lines.reserve(n_lines);
    for (size_t i = 0; i < n_lines; ++i) {
        if (points.size() >= 2 && rng.next_below(2) == 0) {
            // Line through two random distinct points.
            const Point& p1 = points.points()[rng.next_below(points.size())];
            const Point& p2 = points.points()[rng.next_below(points.size())];
            if (p1 == p2) {
                lines.push_back({true, Rational(0), p1.x});
            } else if (p1.x == p2.x) {
                lines.push_back({true, Rational(0), p1.x});
            } else {
                Rational slope = (p2.y - p1.y) / (p2.x - p1.x);
                lines.push_back({false, slope, p1.y - slope * p1.x});
            }
        } else {
            lines.push_back({false, coord(), coord()});
        }
    }
    return {std::move(points), LineSet(std::move(lines))};
}

} // namespace sumprod
