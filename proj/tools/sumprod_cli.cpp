// Command-line front end. Everything goes through the C API in
// sumprod/sumprod.h; this binary owns only argument parsing and I/O.

#include "sumprod/sumprod.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

int exit_code_for(sp_status status) {
    switch (status) {
    case SP_OK: return 0;
    case SP_ERR_CHECK_FAILED: return 1;
    case SP_ERR_INTERNAL: return 1;
    case SP_ERR_INPUT: return 2;
    case SP_ERR_DOMAIN: return 2;
    case SP_ERR_INVALID_ARGUMENT: return 2;
    case SP_ERR_RESOURCE: return 3;
    }
    return 2;
}

[[noreturn]] void die(sp_status status) {
    std::cerr << "error: " << sp_last_error() << "\n";
    std::exit(exit_code_for(status));
}

struct SetHandle {
    sp_set* ptr = nullptr;
    ~SetHandle() { sp_set_free(ptr); }
};

struct ReportHandle {
    sp_report* ptr = nullptr;
    ~ReportHandle() { sp_report_free(ptr); }
};

struct StringHandle {
    char* ptr = nullptr;
    ~StringHandle() { sp_string_free(ptr); }
};

void load_set(const std::string& path, SetHandle& set) {
    if (sp_status s = sp_set_parse_file(path.c_str(), &set.ptr); s != SP_OK)
        die(s);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        std::exit(2);
    }
    out << text;
}

struct CommonOptions {
    uint64_t seed = 0;
    int workers = 1;
    long long max_decompose = 256;
    uint64_t cap_sigma = 1728;
    uint64_t cap_sols = 6;
    uint64_t cap_incidence = 10000000;
    std::string out_path;
    std::string format = "json";

    void attach(CLI::App* cmd, bool with_format = true) {
        cmd->add_option("--seed", seed, "Seed for any randomized step");
        cmd->add_option("--workers", workers, "Worker threads for sweep points");
        cmd->add_option("--max-decompose", max_decompose,
                        "Largest set size fed to the decomposition algorithms");
        cmd->add_option("--cap-sigma", cap_sigma, "Grid cap for the trilinear supremum");
        cmd->add_option("--cap-sols", cap_sols, "Level/witness size cap for solution counting");
        cmd->add_option("--cap-incidence", cap_incidence, "|P|*|L| cap for incidence counts");
        cmd->add_option("--out", out_path, "Write the result here instead of stdout");
        if (with_format)
            cmd->add_option("--format", format, "Report format: json or csv")
                ->check(CLI::IsMember({"json", "csv"}));
    }

    std::string options_json(long long tau = 1, int trials = 200) const {
        Json j;
        j["seed"] = seed;
        j["workers"] = workers;
        j["max_decompose"] = max_decompose;
        j["caps"] = Json{{"sigma", cap_sigma}, {"sols", cap_sols}, {"incidence", cap_incidence}};
        j["tau"] = tau;
        j["trials"] = trials;
        return j.dump();
    }
};

int emit_report(sp_report* report, const CommonOptions& common, bool gate_on_checks) {
    StringHandle text;
    if (sp_status s = sp_report_render(report, common.format.c_str(), &text.ptr); s != SP_OK)
        die(s);
    write_output(text.ptr, common.out_path);
    if (gate_on_checks && !sp_report_passed(report))
        return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact toolkit for sum-product set statistics, energies, "
                 "decompositions and incidence checks"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "Generate a family set and write it as a set file");
    std::string gen_family = "ap";
    long long gen_n = 8, gen_s = 2, gen_p = 2;
    uint64_t gen_universe = 1000, gen_seed = 0;
    std::string gen_start = "1", gen_step = "1", gen_ratio = "2", gen_out;
    gen->add_option("--family", gen_family, "ap | gp | bw | random")->required();
    gen->add_option("--n", gen_n, "Cardinality (ap/gp/random)");
    gen->add_option("--start", gen_start, "First element (ap/gp), rational");
    gen->add_option("--step", gen_step, "Step (ap), rational");
    gen->add_option("--ratio", gen_ratio, "Ratio (gp), rational");
    gen->add_option("--S", gen_s, "Odd-part count (bw)");
    gen->add_option("--P", gen_p, "Power-of-two count (bw)");
    gen->add_option("--N", gen_universe, "Universe size (random)");
    gen->add_option("--seed", gen_seed, "Seed (random)");
    gen->add_option("--out", gen_out, "Output set file (stdout when omitted)");
    gen->callback([&] {
        Json j;
        j["kind"] = gen_family;
        if (gen_family == "bw") {
            j["S"] = gen_s;
            j["P"] = gen_p;
        } else if (gen_family == "random") {
            j["N"] = gen_universe;
            j["n"] = gen_n;
            j["seed"] = gen_seed;
        } else {
            j["n"] = gen_n;
            j["start"] = gen_start;
            if (gen_family == "ap")
                j["step"] = gen_step;
            else
                j["ratio"] = gen_ratio;
        }
        SetHandle set;
        if (sp_status s = sp_set_generate(j.dump().c_str(), &set.ptr); s != SP_OK)
            die(s);
        if (gen_out.empty()) {
            StringHandle text;
            if (sp_status s = sp_set_format(set.ptr, &text.ptr); s != SP_OK)
                die(s);
            std::cout << text.ptr;
        } else if (sp_status s = sp_set_write_file(set.ptr, gen_out.c_str()); s != SP_OK) {
            die(s);
        }
    });

    // --- stats ---
    auto* stats = app.add_subcommand("stats", "Exact set quantities and soft ratios");
    std::string stats_set;
    CommonOptions stats_common;
    stats->add_option("--set", stats_set, "Input set file")->required();
    stats_common.attach(stats);
    stats->callback([&] {
        SetHandle set;
        load_set(stats_set, set);
        ReportHandle report;
        if (sp_status s = sp_run_stats(set.ptr, stats_common.options_json().c_str(), &report.ptr);
            s != SP_OK)
            die(s);
        std::exit(emit_report(report.ptr, stats_common, false));
    });

    // --- energy ---
    auto* energy = app.add_subcommand("energy", "Exact energy moment of a pair of sets");
    std::string energy_set, energy_set_b, energy_op = "diff";
    int energy_moment = 2;
    energy->add_option("--set", energy_set, "Input set file")->required();
    energy->add_option("--set-b", energy_set_b, "Second set file (defaults to the first)");
    energy->add_option("--op", energy_op, "sum | diff | prod | quot")
        ->check(CLI::IsMember({"sum", "diff", "prod", "quot"}));
    energy->add_option("--moment", energy_moment, "Moment, 1..4")->check(CLI::Range(1, 4));
    energy->callback([&] {
        SetHandle a, b;
        load_set(energy_set, a);
        if (!energy_set_b.empty())
            load_set(energy_set_b, b);
        StringHandle value;
        if (sp_status s = sp_energy(a.ptr, b.ptr, energy_op.c_str(), energy_moment, &value.ptr);
            s != SP_OK)
            die(s);
        std::cout << value.ptr << "\n";
    });

    // --- decompose ---
    auto* decompose = app.add_subcommand("decompose", "Run a decomposition and emit certificates");
    std::string dec_set, dec_mode = "main";
    CommonOptions dec_common;
    decompose->add_option("--set", dec_set, "Input set file")->required();
    decompose->add_option("--mode", dec_mode, "main | partition | fourth")
        ->check(CLI::IsMember({"main", "partition", "fourth"}));
    dec_common.attach(decompose);
    decompose->callback([&] {
        SetHandle set;
        load_set(dec_set, set);
        ReportHandle report;
        if (sp_status s = sp_run_decompose(set.ptr, dec_mode.c_str(),
                                           dec_common.options_json().c_str(), &report.ptr);
            s != SP_OK)
            die(s);
        std::exit(emit_report(report.ptr, dec_common, true));
    });

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "Run every exact check against a set");
    std::string verify_set;
    CommonOptions verify_common;
    verify->add_option("--set", verify_set, "Input set file")->required();
    verify_common.attach(verify);
    verify->callback([&] {
        SetHandle set;
        load_set(verify_set, set);
        ReportHandle report;
        if (sp_status s = sp_run_verify(set.ptr, verify_common.options_json().c_str(), &report.ptr);
            s != SP_OK)
            die(s);
        std::exit(emit_report(report.ptr, verify_common, true));
    });

    // --- incidence ---
    auto* incidence = app.add_subcommand("incidence", "Point-line incidence experiments");
    std::string inc_config = "random", inc_set;
    long long inc_tau = 1;
    int inc_trials = 200;
    CommonOptions inc_common;
    incidence->add_option("--config", inc_config, "elekes | dstar | random")
        ->check(CLI::IsMember({"elekes", "dstar", "random"}));
    incidence->add_option("--set", inc_set, "Input set file (elekes/dstar)");
    incidence->add_option("--tau", inc_tau, "Popularity threshold (dstar)");
    incidence->add_option("--trials", inc_trials, "Configuration count (random)");
    inc_common.attach(incidence);
    incidence->callback([&] {
        SetHandle set;
        if (!inc_set.empty())
            load_set(inc_set, set);
        ReportHandle report;
        if (sp_status s = sp_run_incidence(inc_config.c_str(), set.ptr,
                                           inc_common.options_json(inc_tau, inc_trials).c_str(),
                                           &report.ptr);
            s != SP_OK)
            die(s);
        std::exit(emit_report(report.ptr, inc_common, true));
    });

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "Quantities and decompositions across sizes");
    std::string sweep_family = "ap";
    std::vector<long long> sweep_sizes;
    CommonOptions sweep_common;
    sweep->add_option("--family", sweep_family, "ap | gp | bw | random")->required();
    sweep->add_option("--sizes", sweep_sizes, "Sizes, e.g. --sizes 8 16 32")
        ->required()
        ->delimiter(',');
    sweep_common.attach(sweep);
    sweep->callback([&] {
        Json j;
        j["family"] = sweep_family;
        j["sizes"] = sweep_sizes;
        j["seed"] = sweep_common.seed;
        j["workers"] = sweep_common.workers;
        j["max_decompose"] = sweep_common.max_decompose;
        j["caps"] = Json{{"sigma", sweep_common.cap_sigma},
                         {"sols", sweep_common.cap_sols},
                         {"incidence", sweep_common.cap_incidence}};
        ReportHandle report;
        if (sp_status s = sp_run_sweep(j.dump().c_str(), &report.ptr); s != SP_OK)
            die(s);
        std::exit(emit_report(report.ptr, sweep_common, true));
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
