#pragma once

#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"
#include "sumprod/structure.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace sumprod {

struct Point {
    Rational x;
    Rational y;
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator<(const Point& o) const { return x < o.x || (x == o.x && y < o.y); }
};

/// Deduplicated point collection.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Point> pts);
    size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const std::vector<Point>& points() const { return pts_; }

private:
    std::vector<Point> pts_;
};

/// y = slope x + intercept, or the vertical line x = intercept.
struct Line {
    bool vertical = false;
    Rational slope;
    Rational intercept;
    bool contains(const Point& p) const {
        return vertical ? p.x == intercept : p.y == slope * p.x + intercept;
    }
    bool operator==(const Line& o) const {
        return vertical == o.vertical && slope == o.slope && intercept == o.intercept;
    }
    bool operator<(const Line& o) const {
        if (vertical != o.vertical)
            return !vertical;
        if (slope != o.slope)
            return slope < o.slope;
        return intercept < o.intercept;
    }
};

class LineSet {
public:
    LineSet() = default;
    explicit LineSet(std::vector<Line> lines);
    size_t size() const { return lines_.size(); }
    bool empty() const { return lines_.empty(); }
    const std::vector<Line>& lines() const { return lines_; }

private:
    std::vector<Line> lines_;
};

/// Exact incidence count by membership testing, grouped by abscissa.
/// Throws ResourceLimitError when |P| * |L| exceeds cap.
long long count_incidences(const PointSet& p, const LineSet& l, uint64_t cap = 10000000);

/// 4 |P|^(2/3) |L|^(2/3) + 4 |P| + |L|, rounded up to a rational
/// (exact whenever p^2 l^2 is a perfect cube). Use st_check for exact
/// comparisons against counts.
Rational st_bound(uint64_t p, uint64_t l);

/// count <= 4 (p l)^(2/3) + 4 p + l, decided exactly via cubes.
bool st_check(const Int& count, uint64_t p, uint64_t l);

struct ElekesConfig {
    PointSet points; // (A+A) x (AA)
    LineSet lines;   // y = a (x - c), a, c in A
    long long incidences = 0;
    Int floor_value;         // |A| * |L|
    bool floor_holds = false; // incidences >= |A| * |L|
    bool st_holds = false;    // incidences <= st bound
};

/// The sum-product incidence configuration; asserts both the incidence
/// floor and the incidence upper bound exactly.
ElekesConfig elekes_config(const RSet& a, uint64_t cap = 10000000);

struct DstarConfig {
    PointSet points; // Q x {x : r_{A-B}(x) >= tau}
    LineSet lines;   // y = x / r - b, r in R, b in B
    long long incidences = 0;
    long long popular_diff_count = 0; // #{x : r_{A-B}(x) >= tau}
    Int floor_value;                  // t * tau * popular_diff_count
    bool floor_holds = false;
    bool st_holds = false;
};

/// Incidence configuration from a covering witness (Q, R, t) for A and
/// a translate set B: checks the t*tau incidence floor and the upper
/// bound. The witness coverage A ⊆ {x : r_{Q/R}(x) >= t} is verified.
DstarConfig dstar_config(const DUpperWitness& w, const RSet& b, const RSet& a,
                         long long tau, uint64_t cap = 10000000);

/// Seeded random configuration on a small integer grid; lines are drawn
/// through random point pairs plus random slope/intercept picks, so
/// incidences actually occur.
std::pair<PointSet, LineSet> random_incidence_config(uint64_t seed, size_t max_points,
                                                     size_t max_lines);

} // namespace sumprod
