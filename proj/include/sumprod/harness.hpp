#pragma once

#include "sumprod/decompose.hpp"
#include "sumprod/families.hpp"
#include "sumprod/report.hpp"
#include "sumprod/set.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sumprod {

struct Caps {
    uint64_t sigma = 1728;        // grid cap for the trilinear supremum
    size_t sols = 6;              // |P|, |B| cap for quotient-equation counting
    uint64_t incidence = 10000000; // |P| * |L| cap
};

struct RunOptions {
    uint64_t seed = 0;
    int workers = 1;
    Caps caps;
    long long max_decompose = 256; // skip decompositions above this size
};

/// Exact set statistics, structure-statistic pool bounds, and every
/// headline soft ratio. Multiplicative quantities require 0 not in A.
Report compute_quantities_report(const RSet& a, const RunOptions& options = {});

/// Runs every registered exact check against A. The report's exact
/// checks must all pass; failures are recorded, never thrown.
Report verify_suite(const RSet& a, const RunOptions& options = {});

/// Decomposition run with serialized certificates and postcondition
/// checks. mode: "main" | "partition" | "fourth".
Report decompose_report(const RSet& a, const std::string& mode,
                        const RunOptions& options = {});

/// Incidence experiment. config: "elekes" | "dstar" | "random".
/// elekes/dstar need a set; random uses seed and trials.
Report incidence_report(const std::string& config, const RSet* a,
                        const RunOptions& options = {}, long long tau = 1,
                        int trials = 200);

struct SweepSpec {
    std::string family = "ap"; // ap | gp | bw | random
    std::vector<long long> sizes;
    RunOptions options;
};

/// Per-size quantities, decomposition postconditions and soft-ratio
/// trend rows; deterministic given (spec, seed); points may run on a
/// worker pool.
Report sweep(const SweepSpec& spec);

/// The fixed evaluation corpus: ap/gp/bw/random families at dyadic
/// sizes up to max_n.
std::vector<FamilySpec> default_corpus(long long max_n = 256);

} // namespace sumprod
