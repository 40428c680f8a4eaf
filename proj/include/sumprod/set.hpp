#pragma once

#include "sumprod/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sumprod {

enum class SetOp { Sum, Diff, Prod, Quot };

const char* set_op_name(SetOp op);
SetOp set_op_from_name(std::string_view name);

/// Finite set of exact rationals, stored strictly increasing. Immutable
/// after construction; safe to share across threads.
class RSet {
public:
    RSet() = default;

    /// Sorts and deduplicates.
    explicit RSet(std::vector<Rational> values);

    /// Trusted constructor for values already strictly increasing.
    static RSet from_sorted(std::vector<Rational> values);

    size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    bool contains(const Rational& v) const;
    bool contains_zero() const { return contains(Rational(0)); }

    const Rational& operator[](size_t i) const { return elems_[i]; }
    const std::vector<Rational>& elements() const { return elems_; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    bool operator==(const RSet& other) const { return elems_ == other.elems_; }

    bool is_subset_of(const RSet& other) const;
    bool disjoint_with(const RSet& other) const;

private:
    std::vector<Rational> elems_;
};

/// {a op b : a in A, b in B}. Quot requires 0 not in B.
RSet combine(const RSet& a, const RSet& b, SetOp op);

/// {a^-1 : a in A} with the convention 0^-1 = 0. An involution.
RSet inverse_set(const RSet& a);

/// {lambda * a : a in A}, lambda != 0.
RSet dilate(const RSet& a, const Rational& lambda);

/// A intersect lambda*A; its size equals the quotient representation
/// count of lambda.
RSet popular_slice(const RSet& a, const Rational& lambda);

RSet negate_set(const RSet& a);
RSet set_union(const RSet& a, const RSet& b);
RSet set_minus(const RSet& a, const RSet& b);
RSet set_intersect(const RSet& a, const RSet& b);

/// Set with any zeros removed.
RSet strip_zero(const RSet& a);

// --- set file format ---
// One value per line ("p" or "p/q", q > 0); '#' comments and blank lines
// ignored; output sorted canonical.

RSet parse_set_text(std::string_view text);
RSet parse_set_file(const std::string& path);
std::string format_set_text(const RSet& a);
void write_set_file(const RSet& a, const std::string& path);

} // namespace sumprod
