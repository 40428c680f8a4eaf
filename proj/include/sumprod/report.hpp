#pragma once

#include "sumprod/decompose.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace sumprod {

using Json = nlohmann::ordered_json;

struct ExactCheck {
    std::string name;
    bool pass = false;
    std::string lhs; // exact quantities, decimal strings
    std::string rhs;
};

struct SoftCheck {
    std::string name;
    std::string ratio;     // decimal, 12 significant digits
    std::string exponent;  // exact rational exponent of n
    std::string reference; // which headline bound the exponent anchors
};

/// Experiment output. Exact checks are pass/fail; soft checks carry
/// ratios only and never affect exit status.
struct Report {
    Json input = Json::object();
    Json quantities = Json::object();
    Json certificates = Json::array();
    std::vector<ExactCheck> exact_checks;
    std::vector<SoftCheck> soft_checks;
    Json meta = Json::object();

    bool all_passed() const;
    void add_exact(std::string name, bool pass, std::string lhs, std::string rhs);
    void add_soft(std::string name, std::string ratio, std::string exponent,
                  std::string reference);

    Json to_json() const;
    std::string render(const std::string& format) const; // "json" | "csv"
};

/// Named reference exponents, stored exact.
struct ExponentRef {
    std::string name;
    Rational exponent;
    std::string reference;
};

const std::vector<ExponentRef>& exponent_table();
const ExponentRef& exponent_ref(const std::string& name);

/// Decimal rendering of base^(1/root) to `significant` digits; base >= 0.
std::string decimal_root_string(const Rational& base, unsigned root, int significant = 12);

/// ratio = quantity / n^(p/q) rendered as a decimal; exact inputs.
std::string soft_ratio(const Rational& quantity, uint64_t n, const Rational& exponent);

// Certificate serialization: every exact integer in full, sets as
// element arrays, so a certificate can be re-ingested and revalidated
// independently of the run that produced it.
Json set_to_json(const RSet& s);
RSet set_from_json(const Json& j);
Json extraction_to_json(const ExtractionCertificate& c);
ExtractionCertificate extraction_from_json(const Json& j);
Json decomposition_to_json(const DecompositionCertificate& c);
DecompositionCertificate decomposition_from_json(const Json& j);

} // namespace sumprod
