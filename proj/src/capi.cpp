#include "sumprod/sumprod.h"

#include "sumprod/errors.hpp"
#include "sumprod/harness.hpp"
#include "sumprod/report.hpp"
#include "sumprod/version.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

using namespace sumprod;

struct sp_set {
    RSet value;
};

struct sp_report {
    Report value;
};

namespace {

thread_local std::string g_last_error;

sp_status fail(sp_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
sp_status guarded(Fn&& fn) {
    try {
        fn();
        return SP_OK;
    } catch (const CheckFailedError& e) {
        return fail(SP_ERR_CHECK_FAILED, e.what());
    } catch (const ResourceLimitError& e) {
        return fail(SP_ERR_RESOURCE, e.what());
    } catch (const InputError& e) {
        return fail(SP_ERR_INPUT, e.what());
    } catch (const ConfigError& e) {
        return fail(SP_ERR_INPUT, e.what());
    } catch (const DomainError& e) {
        return fail(SP_ERR_DOMAIN, e.what());
    } catch (const InvalidWitnessError& e) {
        return fail(SP_ERR_DOMAIN, e.what());
    } catch (const Error& e) {
        return fail(SP_ERR_INTERNAL, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(SP_ERR_INPUT, e.what());
    } catch (const std::exception& e) {
        return fail(SP_ERR_INTERNAL, e.what());
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

sp_status require(bool condition, const char* message) {
    return condition ? SP_OK : fail(SP_ERR_INVALID_ARGUMENT, message);
}

RunOptions parse_options(const char* options_json) {
    RunOptions o;
    if (!options_json || !*options_json)
        return o;
    Json j = Json::parse(options_json);
    if (j.contains("seed"))
        o.seed = j["seed"].get<uint64_t>();
    if (j.contains("workers"))
        o.workers = j["workers"].get<int>();
    if (j.contains("max_decompose"))
        o.max_decompose = j["max_decompose"].get<long long>();
    if (j.contains("caps")) {
        const Json& c = j["caps"];
        if (c.contains("sigma"))
            o.caps.sigma = c["sigma"].get<uint64_t>();
        if (c.contains("sols"))
            o.caps.sols = c["sols"].get<size_t>();
        if (c.contains("incidence"))
            o.caps.incidence = c["incidence"].get<uint64_t>();
    }
    return o;
}

FamilySpec parse_family(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    auto rational_field = [&](const char* name, const Rational& fallback) {
        if (!j.contains(name))
            return fallback;
        if (j[name].is_number_integer())
            return Rational(j[name].get<long long>());
        return parse_rational(j[name].get<std::string>());
    };
    if (kind == "ap")
        return FamilySpec::ap(j.at("n").get<long long>(), rational_field("start", Rational(1)),
                              rational_field("step", Rational(1)));
    if (kind == "gp")
        return FamilySpec::gp(j.at("n").get<long long>(), rational_field("start", Rational(1)),
                              rational_field("ratio", Rational(2)));
    if (kind == "bw")
        return FamilySpec::balog_wooley(j.at("S").get<long long>(), j.at("P").get<long long>());
    if (kind == "random")
        return FamilySpec::random_subset(j.at("N").get<uint64_t>(), j.at("n").get<long long>(),
                                         j.contains("seed") ? j["seed"].get<uint64_t>() : 0);
    throw ConfigError("unknown family kind: '" + kind + "'");
}

} // namespace

extern "C" {

const char* sp_version(void) { return kVersion; }

const char* sp_last_error(void) { return g_last_error.c_str(); }

sp_status sp_set_parse_file(const char* path, sp_set** out) {
    if (sp_status s = require(path && out, "sp_set_parse_file: null argument"); s != SP_OK)
        return s;
    return guarded([&] { *out = new sp_set{parse_set_file(path)}; });
}

sp_status sp_set_parse_text(const char* text, sp_set** out) {
    if (sp_status s = require(text && out, "sp_set_parse_text: null argument"); s != SP_OK)
        return s;
    return guarded([&] { *out = new sp_set{parse_set_text(text)}; });
}

sp_status sp_set_write_file(const sp_set* set, const char* path) {
    if (sp_status s = require(set && path, "sp_set_write_file: null argument"); s != SP_OK)
        return s;
    return guarded([&] { write_set_file(set->value, path); });
}

sp_status sp_set_format(const sp_set* set, char** out_text) {
    if (sp_status s = require(set && out_text, "sp_set_format: null argument"); s != SP_OK)
        return s;
    return guarded([&] { *out_text = copy_string(format_set_text(set->value)); });
}

size_t sp_set_size(const sp_set* set) { return set ? set->value.size() : 0; }

sp_status sp_set_element(const sp_set* set, size_t index, char** out_text) {
    if (sp_status s = require(set && out_text, "sp_set_element: null argument"); s != SP_OK)
        return s;
    if (index >= set->value.size())
        return fail(SP_ERR_INVALID_ARGUMENT, "sp_set_element: index out of range");
    return guarded([&] { *out_text = copy_string(format_rational(set->value[index])); });
}

sp_status sp_set_combine(const sp_set* a, const sp_set* b, const char* op, sp_set** out) {
    if (sp_status s = require(a && b && op && out, "sp_set_combine: null argument"); s != SP_OK)
        return s;
    return guarded([&] { *out = new sp_set{combine(a->value, b->value, set_op_from_name(op))}; });
}

sp_status sp_set_inverse(const sp_set* a, sp_set** out) {
    if (sp_status s = require(a && out, "sp_set_inverse: null argument"); s != SP_OK)
        return s;
    return guarded([&] { *out = new sp_set{inverse_set(a->value)}; });
}

sp_status sp_set_dilate(const sp_set* a, const char* lambda, sp_set** out) {
    if (sp_status s = require(a && lambda && out, "sp_set_dilate: null argument"); s != SP_OK)
        return s;
    return guarded([&] { *out = new sp_set{dilate(a->value, parse_rational(lambda))}; });
}

sp_status sp_set_popular_slice(const sp_set* a, const char* lambda, sp_set** out) {
    if (sp_status s = require(a && lambda && out, "sp_set_popular_slice: null argument");
        s != SP_OK)
        return s;
    return guarded([&] { *out = new sp_set{popular_slice(a->value, parse_rational(lambda))}; });
}

sp_status sp_set_generate(const char* family_json, sp_set** out) {
    if (sp_status s = require(family_json && out, "sp_set_generate: null argument"); s != SP_OK)
        return s;
    return guarded([&] { *out = new sp_set{generate(parse_family(Json::parse(family_json)))}; });
}

void sp_set_free(sp_set* set) { delete set; }

sp_status sp_energy(const sp_set* a, const sp_set* b, const char* op, int moment,
                    char** out_value) {
    if (sp_status s = require(a && op && out_value, "sp_energy: null argument"); s != SP_OK)
        return s;
    if (moment < 1 || moment > 4)
        return fail(SP_ERR_INVALID_ARGUMENT, "sp_energy: moment must be in 1..4");
    return guarded([&] {
        const RSet& bs = b ? b->value : a->value;
        Int e = energy(a->value, bs, set_op_from_name(op), static_cast<unsigned>(moment));
        *out_value = copy_string(e.str());
    });
}

sp_status sp_run_stats(const sp_set* a, const char* options_json, sp_report** out) {
    if (sp_status s = require(a && out, "sp_run_stats: null argument"); s != SP_OK)
        return s;
    return guarded(
        [&] { *out = new sp_report{compute_quantities_report(a->value, parse_options(options_json))}; });
}

sp_status sp_run_verify(const sp_set* a, const char* options_json, sp_report** out) {
    if (sp_status s = require(a && out, "sp_run_verify: null argument"); s != SP_OK)
        return s;
    return guarded([&] { *out = new sp_report{verify_suite(a->value, parse_options(options_json))}; });
}

sp_status sp_run_decompose(const sp_set* a, const char* mode, const char* options_json,
                           sp_report** out) {
    if (sp_status s = require(a && mode && out, "sp_run_decompose: null argument"); s != SP_OK)
        return s;
    return guarded(
        [&] { *out = new sp_report{decompose_report(a->value, mode, parse_options(options_json))}; });
}

sp_status sp_run_incidence(const char* config, const sp_set* a, const char* options_json,
                           sp_report** out) {
    if (sp_status s = require(config && out, "sp_run_incidence: null argument"); s != SP_OK)
        return s;
    return guarded([&] {
        long long tau = 1;
        int trials = 200;
        if (options_json && *options_json) {
            Json j = Json::parse(options_json);
            if (j.contains("tau"))
                tau = j["tau"].get<long long>();
            if (j.contains("trials"))
                trials = j["trials"].get<int>();
        }
        *out = new sp_report{incidence_report(config, a ? &a->value : nullptr,
                                              parse_options(options_json), tau, trials)};
    });
}

sp_status sp_run_sweep(const char* sweep_json, sp_report** out) {
    if (sp_status s = require(sweep_json && out, "sp_run_sweep: null argument"); s != SP_OK)
        return s;
    return guarded([&] {
        Json j = Json::parse(sweep_json);
        SweepSpec spec;
        spec.family = j.at("family").get<std::string>();
        for (const auto& n : j.at("sizes"))
            spec.sizes.push_back(n.get<long long>());
        spec.options = parse_options(sweep_json);
        *out = new sp_report{sweep(spec)};
    });
}

int sp_report_passed(const sp_report* report) {
    return report && report->value.all_passed() ? 1 : 0;
}

sp_status sp_report_render(const sp_report* report, const char* format, char** out_text) {
    if (sp_status s = require(report && format && out_text, "sp_report_render: null argument");
        s != SP_OK)
        return s;
    return guarded([&] { *out_text = copy_string(report->value.render(format)); });
}

void sp_report_free(sp_report* report) { delete report; }

void sp_string_free(char* text) { std::free(text); }

} // extern "C"
