#include "sumprod/set.hpp"
#include "sumprod/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sumprod {

const char* set_op_name(SetOp op) {
    switch (op) {
    case SetOp::Sum: return "sum";
    case SetOp::Diff: return "diff";
    case SetOp::Prod: return "prod";
    case SetOp::Quot: return "quot";
    }
    throw InternalError("set_op_name: bad op");
}

SetOp set_op_from_name(std::string_view name) {
    if (name == "sum") return SetOp::Sum;
    if (name == "diff") return SetOp::Diff;
    if (name == "prod") return SetOp::Prod;
    if (name == "quot") return SetOp::Quot;
    throw InputError("unknown set operation: '" + std::string(name) + "'");
}

RSet::RSet(std::vector<Rational> values) : elems_(std::move(values)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

RSet RSet::from_sorted(std::vector<Rational> values) {
    RSet s;
    s.elems_ = std::move(values);
    return s;
}

bool RSet::contains(const Rational& v) const {
    return std::binary_search(elems_.begin(), elems_.end(), v);
}

bool RSet::is_subset_of(const RSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(),
                         elems_.begin(), elems_.end());
}

bool RSet::disjoint_with(const RSet& other) const {
    auto i = elems_.begin();
    auto j = other.elems_.begin();
    while (i != elems_.end() && j != other.elems_.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else
            return false;
    }
    return true;
}

RSet combine(const RSet& a, const RSet& b, SetOp op) {
    if (op == SetOp::Quot && b.contains_zero())
        throw DomainError("combine: quotient by a set containing 0");
    std::vector<Rational> out;
    out.reserve(a.size() * b.size());
    for (const Rational& x : a) {
        for (const Rational& y : b) {
            switch (op) {
            case SetOp::Sum: out.push_back(x + y); break;
            case SetOp::Diff: out.push_back(x - y); break;
            case SetOp::Prod: out.push_back(x * y); break;
            case SetOp::Quot: out.push_back(x / y); break;
            }
        }
    }
    return RSet(std::move(out));
}

RSet inverse_set(const RSet& a) {
    std::vector<Rational> out;
    out.reserve(a.size());
    for (const Rational& x : a)
        out.push_back(x == 0 ? Rational(0) : Rational(1) / x);
    return RSet(std::move(out));
}

RSet dilate(const RSet& a, const Rational& lambda) {
    if (lambda == 0)
        throw DomainError("dilate: zero dilation factor");
    std::vector<Rational> out;
    out.reserve(a.size());
    for (const Rational& x : a)
        out.push_back(lambda * x);
    return RSet(std::move(out));
}

RSet popular_slice(const RSet& a, const Rational& lambda) {
    return set_intersect(a, dilate(a, lambda));
}

RSet negate_set(const RSet& a) {
    return dilate(a, Rational(-1));
}

RSet set_union(const RSet& a, const RSet& b) {
    std::vector<Rational> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return RSet::from_sorted(std::move(out));
}

RSet set_minus(const RSet& a, const RSet& b) {
    std::vector<Rational> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return RSet::from_sorted(std::move(out));
}

RSet set_intersect(const RSet& a, const RSet& b) {
    std::vector<Rational> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return RSet::from_sorted(std::move(out));
}

RSet strip_zero(const RSet& a) {
    std::vector<Rational> out;
    out.reserve(a.size());
    for (const Rational& x : a)
        if (x != 0)
            out.push_back(x);
    return RSet::from_sorted(std::move(out));
}

RSet parse_set_text(std::string_view text) {
    std::vector<Rational> values;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                              : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        // Trim whitespace.
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
            line.remove_prefix(1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#')
            continue;
        try {
            values.push_back(parse_rational(line));
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return RSet(std::move(values));
}

RSet parse_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open set file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_set_text(ss.str());
}

std::string format_set_text(const RSet& a) {
    std::string out;
    for (const Rational& x : a) {
        out += format_rational(x);
        out += '\n';
    }
    return out;
}

void write_set_file(const RSet& a, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot open output file: " + path);
    out << format_set_text(a);
}

} // namespace sumprod
