#include "sumprod/report.hpp"
#include "sumprod/errors.hpp"

#include <algorithm>
#include <sstream>

namespace sumprod {

bool Report::all_passed() const {
    return std::all_of(exact_checks.begin(), exact_checks.end(),
                       [](const ExactCheck& c) { return c.pass; });
}

void Report::add_exact(std::string name, bool pass, std::string lhs, std::string rhs) {
    exact_checks.push_back({std::move(name), pass, std::move(lhs), std::move(rhs)});
}

void Report::add_soft(std::string name, std::string ratio, std::string exponent,
                      std::string reference) {
    soft_checks.push_back({std::move(name), std::move(ratio), std::move(exponent),
                           std::move(reference)});
}

Json Report::to_json() const {
    Json j;
    j["input"] = input;
    j["quantities"] = quantities;
    j["certificates"] = certificates;
    Json checks = Json::array();
    for (const ExactCheck& c : exact_checks) {
        Json e;
        e["name"] = c.name;
        e["verdict"] = c.pass ? "pass" : "FAIL";
        e["lhs"] = c.lhs;
        e["rhs"] = c.rhs;
        checks.push_back(std::move(e));
    }
    j["exact_checks"] = std::move(checks);
    Json softs = Json::array();
    for (const SoftCheck& c : soft_checks) {
        Json s;
        s["name"] = c.name;
        s["ratio"] = c.ratio;
        s["exponent"] = c.exponent;
        s["reference"] = c.reference;
        softs.push_back(std::move(s));
    }
    j["soft_checks"] = std::move(softs);
    j["meta"] = meta;
    return j;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void flatten_csv(const std::string& section, const std::string& prefix, const Json& node,
                 std::ostringstream& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items())
            flatten_csv(section, prefix.empty() ? key : prefix + "." + key, value, out);
    } else if (node.is_array()) {
        size_t i = 0;
        for (const auto& value : node)
            flatten_csv(section, prefix + "[" + std::to_string(i++) + "]", value, out);
    } else {
        std::string value = node.is_string() ? node.get<std::string>() : node.dump();
        out << section << "," << csv_escape(prefix) << "," << csv_escape(value) << ",,\n";
    }
}

} // namespace

std::string Report::render(const std::string& format) const {
    if (format == "json")
        return to_json().dump(2) + "\n";
    if (format == "csv") {
        std::ostringstream out;
        out << "section,name,value,exponent,reference\n";
        flatten_csv("quantity", "", quantities, out);
        for (const SoftCheck& c : soft_checks)
            out << "soft_check," << csv_escape(c.name) << "," << csv_escape(c.ratio) << ","
                << csv_escape(c.exponent) << "," << csv_escape(c.reference) << "\n";
        for (const ExactCheck& c : exact_checks)
            out << "exact_check," << csv_escape(c.name) << "," << (c.pass ? "pass" : "FAIL")
                << ",,\n";
        return out.str();
    }
    throw InputError("unknown report format: '" + format + "'");
}

const std::vector<ExponentRef>& exponent_table() {
    static const std::vector<ExponentRef> table = [] {
        auto r = [](long long num, long long den) { return Rational(num, den); };
        std::vector<ExponentRef> t;
        t.push_back({"sumset_product", r(4, 3) + r(5, 5277), "|A+A| + |AA| lower bound"});
        t.push_back({"four_set", r(4, 3) + r(1, 753),
                     "|A+A| + |A-A| + |AA| + |AA^-1| lower bound"});
        t.push_back({"diff_quot", r(13, 10), "|A-A| + |AA^-1| lower bound"});
        t.push_back({"diff_prod", r(31, 24), "|A-A| + |AA| lower bound"});
        t.push_back({"dq_product", r(13, 5), "|A-A| |AA^-1| lower bound"});
        t.push_back({"dq_weighted", r(93, 1), "|A-A|^35 |AA|^37 lower bound"});
        t.push_back({"expander_diff", r(3, 2) + r(7, 226), "|A(A-A)| lower bound"});
        t.push_back({"expander_sum", r(3, 2) + r(1, 46), "|A(A+A)| lower bound"});
        t.push_back({"expander_shift", r(3, 2) + r(1, 182), "max_a |A(A±a)| lower bound"});
        t.push_back({"decomp_d", r(1, 2), "partition d-statistic bound, delta = 1/4"});
        t.push_back({"decomp_energy", r(3, 1) - r(7, 26),
                     "partition own-energy bound, delta = 1/4"});
        t.push_back({"decomp_cross", r(11, 4), "partition cross-energy bound, delta = 1/4"});
        t.push_back({"sumset_vs_d", r(58, 37), "|A+A| vs d+(A)^(21/37)"});
        t.push_back({"diffset_vs_d", r(8, 5), "|A-A| vs d+(A)^(3/5)"});
        t.push_back({"energy_vs_d", r(32, 13), "E+(A) vs d+(A)^(7/13)"});
        t.push_back({"elekes", r(5, 2), "|AA| |A+A| lower bound"});
        t.push_back({"halving_main", r(1, 1), "d+(X) dx(Y) vs |A|"});
        t.push_back({"halving_fourth", r(3, 1), "d4+(X) Ex(Y) vs |A|^3"});
        t.push_back({"expander_single", r(6, 1), "|A|^6 vs |A(A+b)|^2 Ex(A)"});
        return t;
    }();
    return table;
}

const ExponentRef& exponent_ref(const std::string& name) {
    for (const ExponentRef& e : exponent_table())
        if (e.name == name)
            return e;
    throw InternalError("exponent_ref: unknown name '" + name + "'");
}

std::string decimal_root_string(const Rational& base, unsigned root, int significant) {
    if (base < 0)
        throw DomainError("decimal_root_string: negative base");
    if (root == 0)
        throw DomainError("decimal_root_string: zeroth root");
    if (base == 0)
        return "0";
    if (root == 1)
        return decimal_string(base, significant);
    // Guard digits absorb the floor in the scaled integer root.
    const unsigned scale_digits = static_cast<unsigned>(significant) + 6;
    Int scale_pow = ipow(10, scale_digits * root);
    Int scaled = numerator(base) * scale_pow / denominator(base);
    Int digits = iroot(scaled, root);
    return decimal_string(Rational(digits, ipow(10, scale_digits)), significant);
}

std::string soft_ratio(const Rational& quantity, uint64_t n, const Rational& exponent) {
    if (n == 0)
        throw DomainError("soft_ratio: empty base set");
    // quantity / n^(p/q) = (quantity^q / n^p)^(1/q), all exact.
    unsigned q = static_cast<unsigned>(denominator(exponent));
    unsigned p = static_cast<unsigned>(numerator(exponent));
    Rational power = rpow(quantity, q) / Rational(ipow(Int(n), p));
    return decimal_root_string(power, q);
}

Json set_to_json(const RSet& s) {
    Json arr = Json::array();
    for (const Rational& v : s)
        arr.push_back(format_rational(v));
    return arr;
}

RSet set_from_json(const Json& j) {
    std::vector<Rational> values;
    for (const auto& item : j)
        values.push_back(parse_rational(item.get<std::string>()));
    return RSet(std::move(values));
}

namespace {

const char* extract_mode_name(ExtractMode mode) {
    switch (mode) {
    case ExtractMode::ThirdMult: return "third_mult";
    case ExtractMode::ThirdAdd: return "third_add";
    case ExtractMode::Fourth: return "fourth";
    }
    throw InternalError("extract_mode_name: bad mode");
}

ExtractMode extract_mode_from(const std::string& name) {
    if (name == "third_mult") return ExtractMode::ThirdMult;
    if (name == "third_add") return ExtractMode::ThirdAdd;
    if (name == "fourth") return ExtractMode::Fourth;
    throw InputError("unknown extraction mode: '" + name + "'");
}

} // namespace

Json extraction_to_json(const ExtractionCertificate& c) {
    Json j;
    j["mode"] = extract_mode_name(c.mode);
    j["source"] = set_to_json(c.source);
    j["witness"] = set_to_json(c.witness);
    j["delta"] = c.delta;
    j["level"] = set_to_json(c.level);
    j["q"] = c.q;
    j["extracted"] = set_to_json(c.extracted);
    j["e_primary"] = c.e_primary.str();
    j["level_stat"] = c.level_stat.str();
    j["level_mass"] = c.level_mass.str();
    j["extracted_stat"] = c.extracted_stat.str();
    j["primary_max"] = c.primary_max;
    j["secondary_max"] = c.secondary_max;
    if (c.d_witness) {
        Json w;
        w["kind"] = c.d_witness->kind == DUpperKind::DTimes ? "d_times" : "d_plus";
        w["q_set"] = set_to_json(c.d_witness->q);
        w["r_set"] = set_to_json(c.d_witness->r);
        w["t"] = c.d_witness->t;
        j["d_witness"] = std::move(w);
        j["d_claimed"] = format_rational(c.d_claimed);
        j["d_validated"] = format_rational(c.d_validated);
    }
    if (c.mode == ExtractMode::Fourth) {
        j["sols_reference"] = c.sols_reference.str();
        j["sols_skipped"] = c.sols_skipped;
        if (c.sols_count)
            j["sols_count"] = c.sols_count->str();
    }
    return j;
}

ExtractionCertificate extraction_from_json(const Json& j) {
    ExtractionCertificate c;
    c.mode = extract_mode_from(j.at("mode").get<std::string>());
    c.source = set_from_json(j.at("source"));
    c.witness = set_from_json(j.at("witness"));
    c.delta = j.at("delta").get<long long>();
    c.level = set_from_json(j.at("level"));
    c.q = j.at("q").get<long long>();
    c.extracted = set_from_json(j.at("extracted"));
    c.e_primary = Int(j.at("e_primary").get<std::string>());
    c.level_stat = Int(j.at("level_stat").get<std::string>());
    c.level_mass = Int(j.at("level_mass").get<std::string>());
    c.extracted_stat = Int(j.at("extracted_stat").get<std::string>());
    c.primary_max = j.at("primary_max").get<long long>();
    c.secondary_max = j.at("secondary_max").get<long long>();
    if (j.contains("d_witness")) {
        DUpperWitness w;
        w.kind = j["d_witness"].at("kind").get<std::string>() == "d_times" ? DUpperKind::DTimes
                                                                           : DUpperKind::DPlus;
        w.q = set_from_json(j["d_witness"].at("q_set"));
        w.r = set_from_json(j["d_witness"].at("r_set"));
        w.t = j["d_witness"].at("t").get<long long>();
        c.d_witness = std::move(w);
        c.d_claimed = parse_rational(j.at("d_claimed").get<std::string>());
        c.d_validated = parse_rational(j.at("d_validated").get<std::string>());
    }
    if (c.mode == ExtractMode::Fourth) {
        c.sols_reference = Int(j.at("sols_reference").get<std::string>());
        c.sols_skipped = j.at("sols_skipped").get<bool>();
        if (j.contains("sols_count"))
            c.sols_count = Int(j.at("sols_count").get<std::string>());
    }
    return c;
}

Json decomposition_to_json(const DecompositionCertificate& c) {
    Json j;
    j["mode"] = decomp_mode_name(c.mode);
    j["input"] = set_to_json(c.input);
    j["x"] = set_to_json(c.x);
    j["y"] = set_to_json(c.y);
    j["outer_iterations"] = c.outer_iterations;
    Json steps = Json::array();
    for (const ExtractionCertificate& s : c.steps)
        steps.push_back(extraction_to_json(s));
    j["steps"] = std::move(steps);
    if (c.mode == DecompMode::TheoremDecomp) {
        Json parts = Json::array();
        for (const PartitionStep& p : c.partition_steps) {
            Json e;
            e["chosen"] = set_to_json(p.chosen);
            e["additive_small"] = p.additive_small;
            e["trivial"] = p.trivial;
            e["d_plus_estimate"] = format_rational(p.d_plus_estimate);
            e["d_times_estimate"] = format_rational(p.d_times_estimate);
            parts.push_back(std::move(e));
        }
        j["partition_steps"] = std::move(parts);
    }
    j["d_lower_x"] = format_rational(c.d_lower_x);
    j["d_lower_y"] = format_rational(c.d_lower_y);
    j["soft_product"] = format_rational(c.soft_product);
    j["energy_x"] = c.energy_x.str();
    j["energy_y"] = c.energy_y.str();
    j["cross_energy_x"] = c.cross_energy_x.str();
    j["cross_energy_y"] = c.cross_energy_y.str();
    return j;
}

DecompositionCertificate decomposition_from_json(const Json& j) {
    DecompositionCertificate c;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "main")
        c.mode = DecompMode::TheoremMain;
    else if (mode == "partition")
        c.mode = DecompMode::TheoremDecomp;
    else if (mode == "fourth")
        c.mode = DecompMode::PropSecond;
    else
        throw InputError("unknown decomposition mode: '" + mode + "'");
    c.input = set_from_json(j.at("input"));
    c.x = set_from_json(j.at("x"));
    c.y = set_from_json(j.at("y"));
    c.outer_iterations = j.at("outer_iterations").get<size_t>();
    for (const auto& s : j.at("steps"))
        c.steps.push_back(extraction_from_json(s));
    if (c.mode == DecompMode::TheoremDecomp) {
        for (const auto& p : j.at("partition_steps")) {
            PartitionStep step;
            step.chosen = set_from_json(p.at("chosen"));
            step.additive_small = p.at("additive_small").get<bool>();
            step.trivial = p.at("trivial").get<bool>();
            step.d_plus_estimate = parse_rational(p.at("d_plus_estimate").get<std::string>());
            step.d_times_estimate = parse_rational(p.at("d_times_estimate").get<std::string>());
            c.partition_steps.push_back(std::move(step));
        }
    }
    c.d_lower_x = parse_rational(j.at("d_lower_x").get<std::string>());
    c.d_lower_y = parse_rational(j.at("d_lower_y").get<std::string>());
    c.soft_product = parse_rational(j.at("soft_product").get<std::string>());
    c.energy_x = Int(j.at("energy_x").get<std::string>());
    c.energy_y = Int(j.at("energy_y").get<std::string>());
    c.cross_energy_x = Int(j.at("cross_energy_x").get<std::string>());
    c.cross_energy_y = Int(j.at("cross_energy_y").get<std::string>());
    return c;
}

} // namespace sumprod
