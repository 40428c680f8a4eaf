#include "sumprod/harness.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/incidence.hpp"
#include "sumprod/structure.hpp"
#include "sumprod/version.hpp"

#include <chrono>
#include <future>

namespace sumprod {

namespace {

using Clock = std::chrono::steady_clock;

Json input_fragment(const RSet& a, const std::string& source) {
    Json j;
    j["source"] = source;
    j["size"] = a.size();
    if (a.size() <= 512)
        j["elements"] = set_to_json(a);
    return j;
}

void fill_meta(Report& r, const RunOptions& options, Clock::time_point start) {
    Json caps;
    caps["sigma"] = options.caps.sigma;
    caps["sols"] = options.caps.sols;
    caps["incidence"] = options.caps.incidence;
    r.meta["version"] = kVersion;
    r.meta["witness_pool_version"] = kWitnessPoolVersion;
    r.meta["seed"] = options.seed;
    r.meta["workers"] = options.workers;
    r.meta["caps"] = std::move(caps);
    Json timings;
    timings["total_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    r.meta["timings"] = std::move(timings);
}

std::string int_str(const Int& v) { return v.str(); }

// Shift-product size |A (A + shift)| and the argmax scan.
std::pair<Int, Rational> max_shift_product(const RSet& a, bool plus) {
    Int best = -1;
    Rational arg;
    for (const Rational& shift : a) {
        RSet shifted = combine(a, RSet({plus ? shift : -shift}), SetOp::Sum);
        Int size = Int(combine(a, shifted, SetOp::Prod).size());
        if (size > best) {
            best = size;
            arg = shift;
        }
    }
    return {best, arg};
}

} // namespace

Report compute_quantities_report(const RSet& a, const RunOptions& options) {
    auto start = Clock::now();
    if (a.empty())
        throw DomainError("compute_quantities: empty set");
    if (a.contains_zero())
        throw DomainError("compute_quantities: set contains 0; multiplicative quantities undefined");

    Report r;
    r.input = input_fragment(a, "set");
    const uint64_t n = a.size();

    Int sumset = Int(combine(a, a, SetOp::Sum).size());
    Int diffset = Int(combine(a, a, SetOp::Diff).size());
    Int prodset = Int(combine(a, a, SetOp::Prod).size());
    Int quotset = Int(combine(a, a, SetOp::Quot).size());
    Int prod_inverse = Int(combine(a, inverse_set(a), SetOp::Prod).size()); // |A A^-1|
    if (prod_inverse != quotset)
        throw InternalError("quantities: |AA^-1| disagrees with |A/A|");

    Int e_plus = energy(a, a, SetOp::Diff, 2);
    Int e_times = energy(a, a, SetOp::Quot, 2);
    Int e3_plus = energy(a, a, SetOp::Diff, 3);
    Int e3_times = energy(a, a, SetOp::Quot, 3);
    Int e4_plus = energy(a, a, SetOp::Diff, 4);
    Int e4_times = energy(a, a, SetOp::Quot, 4);

    RSet sums = combine(a, a, SetOp::Sum);
    RSet diffs = combine(a, a, SetOp::Diff);
    Int expander_sum = Int(combine(a, sums, SetOp::Prod).size());  // |A(A+A)|
    Int expander_diff = Int(combine(a, diffs, SetOp::Prod).size()); // |A(A-A)|
    auto [max_plus, arg_plus] = max_shift_product(a, true);
    auto [max_minus, arg_minus] = max_shift_product(a, false);

    DLowerBound d_plus = d_lower(a, DKind::DPlus);
    DLowerBound d_times = d_lower(a, DKind::DTimes);
    DLowerBound d4_plus = d_lower(a, DKind::D4Plus);
    KeyProbe probe = key_inequality_probe(a);

    r.quantities["size"] = n;
    r.quantities["sumset"] = int_str(sumset);
    r.quantities["diffset"] = int_str(diffset);
    r.quantities["prodset"] = int_str(prodset);
    r.quantities["quotset"] = int_str(quotset);
    r.quantities["e_plus"] = int_str(e_plus);
    r.quantities["e_times"] = int_str(e_times);
    r.quantities["e3_plus"] = int_str(e3_plus);
    r.quantities["e3_times"] = int_str(e3_times);
    r.quantities["e4_plus"] = int_str(e4_plus);
    r.quantities["e4_times"] = int_str(e4_times);
    r.quantities["expander_sum"] = int_str(expander_sum);
    r.quantities["expander_diff"] = int_str(expander_diff);
    r.quantities["max_shift_prod_plus"] = int_str(max_plus);
    r.quantities["max_shift_prod_plus_arg"] = format_rational(arg_plus);
    r.quantities["max_shift_prod_minus"] = int_str(max_minus);
    r.quantities["max_shift_prod_minus_arg"] = format_rational(arg_minus);
    r.quantities["d_plus_pool"] = format_rational(d_plus.value);
    r.quantities["d_times_pool"] = format_rational(d_times.value);
    r.quantities["d4_plus_pool"] = format_rational(d4_plus.value);
    r.quantities["key_probe_lower"] = format_rational(probe.lower.value);
    r.quantities["key_probe_upper"] = format_rational(probe.upper);
    r.quantities["key_probe_ratio"] = decimal_string(probe.ratio);

    auto soft = [&](const std::string& name, const Rational& quantity) {
        const ExponentRef& ref = exponent_ref(name);
        r.add_soft(name, soft_ratio(quantity, n, ref.exponent), format_rational(ref.exponent),
                   ref.reference);
    };
    soft("sumset_product", Rational(sumset + prodset));
    soft("four_set", Rational(sumset + diffset + prodset + quotset));
    soft("diff_quot", Rational(diffset + quotset));
    soft("diff_prod", Rational(diffset + prodset));
    soft("dq_product", Rational(diffset * quotset));
    soft("dq_weighted", Rational(ipow(diffset, 35) * ipow(prodset, 37)));
    soft("expander_diff", Rational(expander_diff));
    soft("expander_sum", Rational(expander_sum));
    soft("expander_shift", Rational(max_plus > max_minus ? max_plus : max_minus));
    soft("elekes", Rational(prodset * sumset));
    soft("expander_single",
         Rational(ipow(Int(n), 6)) / (Rational(ipow(max_plus, 2)) * Rational(e_times)));

    // Pool-bound forms of the d-statistic sum/difference/energy bounds.
    {
        const Rational& d = d_plus.value;
        Rational power = rpow(Rational(sumset), 37) * rpow(d, 21) / Rational(ipow(Int(n), 58));
        r.add_soft("sumset_vs_d", decimal_root_string(power, 37),
                   format_rational(exponent_ref("sumset_vs_d").exponent),
                   exponent_ref("sumset_vs_d").reference);
        power = rpow(Rational(diffset), 5) * rpow(d, 3) / Rational(ipow(Int(n), 8));
        r.add_soft("diffset_vs_d", decimal_root_string(power, 5),
                   format_rational(exponent_ref("diffset_vs_d").exponent),
                   exponent_ref("diffset_vs_d").reference);
        power = rpow(Rational(e_plus), 13) / (rpow(d, 7) * Rational(ipow(Int(n), 32)));
        r.add_soft("energy_vs_d", decimal_root_string(power, 13),
                   format_rational(exponent_ref("energy_vs_d").exponent),
                   exponent_ref("energy_vs_d").reference);
    }

    fill_meta(r, options, start);
    return r;
}

namespace {

void add_decomposition_checks(Report& r, const DecompositionCertificate& cert,
                              const std::string& prefix) {
    const size_t n = cert.input.size();
    bool cover = set_union(cert.x, cert.y) == cert.input;
    r.add_exact(prefix + "cover", cover, std::to_string(cert.x.size()) + "+" +
                                             std::to_string(cert.y.size()),
                std::to_string(n));
    if (cert.mode == DecompMode::TheoremDecomp) {
        r.add_exact(prefix + "disjoint", cert.x.disjoint_with(cert.y),
                    std::to_string(cert.x.size()), std::to_string(cert.y.size()));
        size_t budget = 1;
        while ((size_t(1) << budget) < n)
            ++budget; // budget = ceil(log2 n) for n >= 2
        budget = n == 1 ? 1 : budget + 1;
        r.add_exact(prefix + "outer_iterations", cert.outer_iterations <= budget,
                    std::to_string(cert.outer_iterations), std::to_string(budget));
    } else {
        r.add_exact(prefix + "halving", 2 * cert.x.size() >= n && 2 * cert.y.size() >= n,
                    std::to_string(std::min(cert.x.size(), cert.y.size())),
                    "ceil(" + std::to_string(n) + "/2)");
        r.add_exact(prefix + "step_budget", cert.steps.size() <= (n + 1) / 2,
                    std::to_string(cert.steps.size()), std::to_string((n + 1) / 2));
    }
    bool revalidated = true;
    std::string why;
    try {
        cert.revalidate();
    } catch (const Error& e) {
        revalidated = false;
        why = e.what();
    }
    r.add_exact(prefix + "revalidate", revalidated, revalidated ? "ok" : why, "");
}

void add_decomposition_softs(Report& r, const DecompositionCertificate& cert,
                             const std::string& prefix) {
    const uint64_t n = cert.input.size();
    switch (cert.mode) {
    case DecompMode::TheoremMain: {
        const ExponentRef& ref = exponent_ref("halving_main");
        r.add_soft(prefix + "halving_main", soft_ratio(cert.soft_product, n, ref.exponent),
                   format_rational(ref.exponent), ref.reference);
        break;
    }
    case DecompMode::PropSecond: {
        const ExponentRef& ref = exponent_ref("halving_fourth");
        r.add_soft(prefix + "halving_fourth", soft_ratio(cert.soft_product, n, ref.exponent),
                   format_rational(ref.exponent), ref.reference);
        break;
    }
    case DecompMode::TheoremDecomp: {
        const ExponentRef& d_ref = exponent_ref("decomp_d");
        Rational worst_d = cert.d_lower_x > cert.d_lower_y ? cert.d_lower_x : cert.d_lower_y;
        r.add_soft(prefix + "decomp_d", soft_ratio(worst_d, n, d_ref.exponent),
                   format_rational(d_ref.exponent), d_ref.reference);
        const ExponentRef& e_ref = exponent_ref("decomp_energy");
        Int worst_e = cert.energy_x > cert.energy_y ? cert.energy_x : cert.energy_y;
        if (worst_e > 0)
            r.add_soft(prefix + "decomp_energy", soft_ratio(Rational(worst_e), n, e_ref.exponent),
                       format_rational(e_ref.exponent), e_ref.reference);
        const ExponentRef& c_ref = exponent_ref("decomp_cross");
        Int worst_c = cert.cross_energy_x > cert.cross_energy_y ? cert.cross_energy_x
                                                                : cert.cross_energy_y;
        if (worst_c > 0)
            r.add_soft(prefix + "decomp_cross", soft_ratio(Rational(worst_c), n, c_ref.exponent),
                       format_rational(c_ref.exponent), c_ref.reference);
        break;
    }
    }
    // Extraction diagnostics: |A'| against the pool bound, and the
    // quotient-equation count against its reference cube.
    for (size_t i = 0; i < cert.steps.size(); ++i) {
        const ExtractionCertificate& s = cert.steps[i];
        if (s.sols_count) {
            Rational ratio = Rational(*s.sols_count) / Rational(s.sols_reference);
            r.add_soft(prefix + "step" + std::to_string(i) + "_sols", decimal_string(ratio), "0",
                       "quotient-equation count vs |P|^3 |B|^3");
        }
    }
}

} // namespace

Report decompose_report(const RSet& a, const std::string& mode, const RunOptions& options) {
    auto start = Clock::now();
    DecompositionCertificate cert;
    if (mode == "main")
        cert = theorem_main_decompose(a);
    else if (mode == "partition")
        cert = theorem_decomp_partition(a);
    else if (mode == "fourth")
        cert = prop_second_decompose(a);
    else
        throw InputError("unknown decomposition mode: '" + mode + "'");

    Report r;
    r.input = input_fragment(a, "set");
    r.quantities["size"] = a.size();
    r.quantities["x_size"] = cert.x.size();
    r.quantities["y_size"] = cert.y.size();
    r.quantities["steps"] = cert.steps.size();
    r.quantities["outer_iterations"] = cert.outer_iterations;
    r.quantities["d_lower_x"] = format_rational(cert.d_lower_x);
    r.quantities["d_lower_y"] = format_rational(cert.d_lower_y);
    if (cert.mode == DecompMode::TheoremDecomp) {
        r.quantities["e_plus_b"] = cert.energy_x.str();
        r.quantities["e_times_c"] = cert.energy_y.str();
        r.quantities["e_plus_b_cross"] = cert.cross_energy_x.str();
        r.quantities["e_times_c_cross"] = cert.cross_energy_y.str();
    }
    r.certificates.push_back(decomposition_to_json(cert));
    add_decomposition_checks(r, cert, "");
    add_decomposition_softs(r, cert, "");
    fill_meta(r, options, start);
    return r;
}

Report verify_suite(const RSet& a, const RunOptions& options) {
    auto start = Clock::now();
    if (a.empty())
        throw DomainError("verify_suite: empty set");
    const bool zero_free = !a.contains_zero();
    const size_t n = a.size();

    Report r;
    r.input = input_fragment(a, "set");
    r.quantities["size"] = n;
    r.quantities["zero_free"] = zero_free;

    auto guarded = [&](const std::string& name, auto&& body) {
        try {
            body();
        } catch (const Error& e) {
            r.add_exact(name, false, std::string("exception: ") + e.what(), "");
        }
    };

    // Mass identity and histogram differential test.
    guarded("mass_identity_diff", [&] {
        RepHistogram h = rep_histogram(a, a, SetOp::Diff);
        Int mass = h.total_mass();
        r.add_exact("mass_identity_diff", mass == Int(n) * Int(n), mass.str(),
                    Int(Int(n) * Int(n)).str());
        RepHistogram m = rep_histogram_sort_merge(a, a, SetOp::Diff);
        r.add_exact("histogram_differential_diff", h.counts == m.counts,
                    std::to_string(h.counts.size()), std::to_string(m.counts.size()));
        // Difference symmetry: r(0) = |A| and r(x) = r(-x).
        bool symmetric = h.count_of(Rational(0)) == static_cast<long long>(n);
        for (const auto& [key, count] : h.counts)
            symmetric = symmetric && h.count_of(-key) == count;
        r.add_exact("diff_symmetry", symmetric, "r(0)=" + std::to_string(h.count_of(Rational(0))),
                    std::to_string(n));
    });
    if (zero_free) {
        guarded("mass_identity_quot", [&] {
            RepHistogram h = rep_histogram(a, a, SetOp::Quot);
            Int mass = h.total_mass();
            r.add_exact("mass_identity_quot", mass == Int(n) * Int(n), mass.str(),
                        Int(Int(n) * Int(n)).str());
            RepHistogram m = rep_histogram_sort_merge(a, a, SetOp::Quot);
            r.add_exact("histogram_differential_quot", h.counts == m.counts,
                        std::to_string(h.counts.size()), std::to_string(m.counts.size()));
            r.add_exact("quot_diagonal", h.count_of(Rational(1)) == static_cast<long long>(n),
                        std::to_string(h.count_of(Rational(1))), std::to_string(n));
        });
    }

    // Cauchy-Schwarz chain: |A|^4 <= E(A) |A±A| and E(A)^2 <= E3(A) |A|^2.
    guarded("cs_chain", [&] {
        Int e2 = energy(a, a, SetOp::Diff, 2);
        Int e3 = energy(a, a, SetOp::Diff, 3);
        Int sumset = Int(combine(a, a, SetOp::Sum).size());
        r.add_exact("cs_chain_plus_lower", ipow(Int(n), 4) <= e2 * sumset,
                    ipow(Int(n), 4).str(), Int(e2 * sumset).str());
        r.add_exact("cs_chain_plus_upper", e2 * e2 <= e3 * Int(n) * Int(n), Int(e2 * e2).str(),
                    Int(e3 * Int(n) * Int(n)).str());
        if (zero_free) {
            Int f2 = energy(a, a, SetOp::Quot, 2);
            Int f3 = energy(a, a, SetOp::Quot, 3);
            Int prodset = Int(combine(a, a, SetOp::Prod).size());
            r.add_exact("cs_chain_times_lower", ipow(Int(n), 4) <= f2 * prodset,
                        ipow(Int(n), 4).str(), Int(f2 * prodset).str());
            r.add_exact("cs_chain_times_upper", f2 * f2 <= f3 * Int(n) * Int(n), Int(f2 * f2).str(),
                        Int(f3 * Int(n) * Int(n)).str());
            r.add_exact("e_times_floor", f2 >= Int(n) * Int(n), f2.str(),
                        Int(Int(n) * Int(n)).str());
        }
    });

    // Cross-energy Cauchy-Schwarz on a deterministic split.
    if (zero_free && n >= 2) {
        guarded("cross_cs", [&] {
            std::vector<Rational> lower(a.begin(), a.begin() + n / 2);
            RSet b(std::move(lower));
            Int cross = energy(a, b, SetOp::Quot, 2);
            Int ea = energy(a, a, SetOp::Quot, 2);
            Int eb = energy(b, b, SetOp::Quot, 2);
            r.add_exact("cross_cs", cross * cross <= ea * eb, Int(cross * cross).str(),
                        Int(ea * eb).str());
        });
    }

    // Moment monotonicity: E4 <= E3 |B| and E3 <= E2 |B|.
    guarded("moment_monotonicity", [&] {
        for (SetOp op : {SetOp::Diff, SetOp::Quot}) {
            if (op == SetOp::Quot && !zero_free)
                continue;
            RepHistogram h = rep_histogram(a, a, op);
            Int e2 = moment_sum(h, 2), e3 = moment_sum(h, 3), e4 = moment_sum(h, 4);
            std::string tag = op == SetOp::Diff ? "diff" : "quot";
            r.add_exact("moment_monotonicity_" + tag, e4 <= e3 * Int(n) && e3 <= e2 * Int(n),
                        e4.str(), Int(e3 * Int(n)).str());
        }
    });

    // Chebyshev tails at every dyadic threshold.
    guarded("chebyshev_tail", [&] {
        for (SetOp op : {SetOp::Diff, SetOp::Quot}) {
            if (op == SetOp::Quot && !zero_free)
                continue;
            RepHistogram h = rep_histogram(a, a, op);
            bool all = true;
            for (long long tau = 1; tau <= h.max_count; tau *= 2) {
                ChebyshevTail t = chebyshev_tail(a, a, op, tau);
                all = all && t.holds;
            }
            r.add_exact(std::string("chebyshev_tail_") + (op == SetOp::Diff ? "diff" : "quot"),
                        all, "all dyadic tau", "E3/tau^3");
        }
    });

    if (zero_free) {
        // Popular slice size = quotient count; Katz-Koester inclusion.
        guarded("slices", [&] {
            RepHistogram h = rep_histogram(a, a, SetOp::Quot);
            std::vector<Rational> lambdas;
            if (n <= 64) {
                for (const auto& [key, count] : h.counts)
                    lambdas.push_back(key);
            } else {
                std::vector<std::pair<long long, Rational>> pop;
                for (const auto& [key, count] : h.counts)
                    pop.emplace_back(count, key);
                std::sort(pop.begin(), pop.end(), [](const auto& l, const auto& r) {
                    if (l.first != r.first)
                        return l.first > r.first;
                    return l.second < r.second;
                });
                for (size_t i = 0; i < pop.size() && i < 16; ++i)
                    lambdas.push_back(pop[i].second);
            }
            RSet products = combine(a, a, SetOp::Prod);
            bool slice_ok = true, kk_ok = true;
            for (const Rational& lambda : lambdas) {
                slice_ok = slice_ok &&
                           popular_slice(a, lambda).size() ==
                               static_cast<size_t>(h.count_of(lambda));
                kk_ok = kk_ok && katz_koester_check(a, products, lambda).holds;
            }
            r.add_exact("slice_size_equals_count", slice_ok, std::to_string(lambdas.size()),
                        "lambdas tested");
            r.add_exact("katz_koester", kk_ok, std::to_string(lambdas.size()), "lambdas tested");
        });

        // Dyadic spectrum: partition property plus the pigeonhole bound.
        guarded("popular_spectrum", [&] {
            PopularSpectrum spec = popular_spectrum(a);
            RSet quots = combine(a, a, SetOp::Quot);
            RSet covered;
            bool disjoint = true;
            for (const auto& [t, level] : spec.levels) {
                disjoint = disjoint && covered.disjoint_with(level);
                covered = set_union(covered, level);
            }
            r.add_exact("spectrum_partition", disjoint && covered == quots,
                        std::to_string(covered.size()), std::to_string(quots.size()));
            long bound = 2 * (floor_log2(Int(n)) + 1);
            r.add_exact("spectrum_pigeonhole", spec.best_stat * bound >= spec.energy_times,
                        Int(spec.best_stat * bound).str(), spec.energy_times.str());
        });
    }

    // Trilinear counts within the cap, plus the per-coefficient bound.
    guarded("sigma", [&] {
        uint64_t grid = static_cast<uint64_t>(n) * n * n;
        if (grid <= options.caps.sigma) {
            SigmaWitness w = sigma_sup(a, a, a, options.caps.sigma);
            r.add_exact("sigma_trivial_bound", w.count <= Int(n) * Int(n), w.count.str(),
                        Int(Int(n) * Int(n)).str());
        }
        static const std::pair<int, int> coeff[] = {{1, -1}, {1, -2}, {2, -1}, {3, -2}};
        bool all = true;
        for (auto [p, q] : coeff) {
            SigmaHolderCheck c = sigma_bound_check(a, a, a, Rational(p), Rational(q));
            all = all && c.holds;
        }
        r.add_exact("sigma_holder", all, "4 coefficient pairs", "|C|^3 * fourth moment");
    });

    // Union triangle inequalities on a deterministic 3-way split.
    guarded("union_triangle", [&] {
        std::vector<std::vector<Rational>> buckets(std::min<size_t>(3, n));
        for (size_t i = 0; i < n; ++i)
            buckets[i % buckets.size()].push_back(a[i]);
        std::vector<RSet> parts;
        for (auto& b : buckets)
            parts.emplace_back(std::move(b));
        r.add_exact("union_l3_diff", union_triangle_check(parts, a, UnionMode::L3Diff).holds,
                    std::to_string(parts.size()), "parts");
        if (zero_free) {
            r.add_exact("union_l3_quot", union_triangle_check(parts, a, UnionMode::L3Quot).holds,
                        std::to_string(parts.size()), "parts");
            r.add_exact("union_l4_mult",
                        union_triangle_check(parts, a, UnionMode::L4MultEnergy).holds,
                        std::to_string(parts.size()), "parts");
        }
    });

    // Incidence bound fuzz plus the structured configurations.
    guarded("incidence", [&] {
        bool fuzz_ok = true;
        for (int i = 0; i < 20; ++i) {
            auto [pts, lines] = random_incidence_config(options.seed + i, 60, 60);
            long long count = count_incidences(pts, lines, options.caps.incidence);
            fuzz_ok = fuzz_ok && st_check(Int(count), pts.size(), lines.size());
        }
        r.add_exact("st_fuzz", fuzz_ok, "20 seeded configurations", "st bound");
        if (zero_free) {
            uint64_t psize = static_cast<uint64_t>(combine(a, a, SetOp::Sum).size()) *
                             combine(a, a, SetOp::Prod).size();
            if (psize * n * n <= options.caps.incidence) {
                ElekesConfig cfg = elekes_config(a, options.caps.incidence);
                r.add_exact("elekes_floor", cfg.floor_holds, std::to_string(cfg.incidences),
                            cfg.floor_value.str());
                r.add_exact("elekes_st", cfg.st_holds, std::to_string(cfg.incidences),
                            decimal_string(st_bound(cfg.points.size(), cfg.lines.size()), 6));
            }
            DUpperWitness w = product_witness(a, a);
            uint64_t dsize = static_cast<uint64_t>(w.q.size()) * n * n * n;
            if (dsize <= options.caps.incidence) {
                DstarConfig cfg = dstar_config(w, a, a, 2, options.caps.incidence);
                r.add_exact("dstar_floor", cfg.floor_holds, std::to_string(cfg.incidences),
                            cfg.floor_value.str());
            }
        }
    });

    // Structure statistics stay in [1, |A|]; fourth-moment pool bounds
    // never beat third-moment ones on the same witness.
    guarded("d_bounds", [&] {
        DLowerBound dp = d_lower(a, DKind::DPlus);
        r.add_exact("d_plus_range", dp.value >= 1 && dp.value <= Int(n),
                    format_rational(dp.value), std::to_string(n));
        DLowerBound d4 = d_lower(a, DKind::D4Plus);
        r.add_exact("d4_plus_range", d4.value >= 1 && d4.value <= Int(n),
                    format_rational(d4.value), std::to_string(n));
        if (zero_free) {
            DLowerBound dt = d_lower(a, DKind::DTimes);
            r.add_exact("d_times_range", dt.value >= 1 && dt.value <= Int(n),
                        format_rational(dt.value), std::to_string(n));
        }
        bool mono = true;
        for (const RSet& b : default_witness_pool(a, DKind::D4Plus).members) {
            RepHistogram h = rep_histogram(a, b, SetOp::Diff);
            mono = mono && moment_sum(h, 4) <= moment_sum(h, 3) * Int(b.size());
        }
        r.add_exact("witness_moment_monotonicity", mono, "all pool members", "E4 <= E3 |B|");
        if (zero_free) {
            KeyProbe probe = key_inequality_probe(a);
            r.add_soft("key_probe", decimal_string(probe.ratio), "0",
                       "pool d+ lower vs covering upper; diagnostic only");
        }
    });

    // Involution and dilation round trips.
    guarded("set_roundtrips", [&] {
        r.add_exact("inverse_involution", inverse_set(inverse_set(a)) == a, std::to_string(n),
                    std::to_string(n));
        Rational lam(3, 2);
        r.add_exact("dilate_roundtrip", dilate(dilate(a, lam), Rational(2, 3)) == a,
                    std::to_string(n), std::to_string(n));
    });

    // Decomposition certificates, including a serialization round trip.
    if (zero_free && static_cast<long long>(n) <= options.max_decompose) {
        guarded("decompose_main", [&] {
            DecompositionCertificate cert = theorem_main_decompose(a);
            add_decomposition_checks(r, cert, "main_");
            if (n <= 64) {
                DecompositionCertificate back =
                    decomposition_from_json(decomposition_to_json(cert));
                back.revalidate();
                r.add_exact("main_certificate_roundtrip", back.x == cert.x && back.y == cert.y,
                            std::to_string(back.steps.size()), std::to_string(cert.steps.size()));
            }
        });
        guarded("decompose_partition", [&] {
            DecompositionCertificate cert = theorem_decomp_partition(a);
            add_decomposition_checks(r, cert, "partition_");
        });
        guarded("decompose_fourth", [&] {
            DecompositionCertificate cert = prop_second_decompose(a);
            add_decomposition_checks(r, cert, "fourth_");
        });
    }

    fill_meta(r, options, start);
    return r;
}

Report incidence_report(const std::string& config, const RSet* a, const RunOptions& options,
                        long long tau, int trials) {
    auto start = Clock::now();
    Report r;
    if (config == "elekes") {
        if (!a)
            throw InputError("incidence elekes: needs a set");
        ElekesConfig cfg = elekes_config(*a, options.caps.incidence);
        r.input = input_fragment(*a, "set");
        r.quantities["points"] = cfg.points.size();
        r.quantities["lines"] = cfg.lines.size();
        r.quantities["incidences"] = cfg.incidences;
        r.quantities["floor"] = cfg.floor_value.str();
        r.quantities["st_bound"] = decimal_string(st_bound(cfg.points.size(), cfg.lines.size()), 6);
        r.add_exact("elekes_floor", cfg.floor_holds, std::to_string(cfg.incidences),
                    cfg.floor_value.str());
        r.add_exact("elekes_st", cfg.st_holds, std::to_string(cfg.incidences),
                    decimal_string(st_bound(cfg.points.size(), cfg.lines.size()), 6));
    } else if (config == "dstar") {
        if (!a)
            throw InputError("incidence dstar: needs a set");
        if (a->contains_zero())
            throw DomainError("incidence dstar: set contains 0");
        DUpperWitness w = product_witness(*a, *a);
        DstarConfig cfg = dstar_config(w, *a, *a, tau, options.caps.incidence);
        r.input = input_fragment(*a, "set");
        r.quantities["points"] = cfg.points.size();
        r.quantities["lines"] = cfg.lines.size();
        r.quantities["incidences"] = cfg.incidences;
        r.quantities["tau"] = tau;
        r.quantities["popular_diffs"] = cfg.popular_diff_count;
        r.quantities["floor"] = cfg.floor_value.str();
        r.add_exact("dstar_floor", cfg.floor_holds, std::to_string(cfg.incidences),
                    cfg.floor_value.str());
        r.add_exact("dstar_st", cfg.st_holds, std::to_string(cfg.incidences), "st bound");
    } else if (config == "random") {
        r.input["source"] = "seeded random configurations";
        r.input["trials"] = trials;
        bool all = true;
        long long worst_margin = -1;
        for (int i = 0; i < trials; ++i) {
            auto [pts, lines] = random_incidence_config(options.seed + i, 200, 200);
            long long count = count_incidences(pts, lines, options.caps.incidence);
            all = all && st_check(Int(count), pts.size(), lines.size());
            worst_margin = std::max(worst_margin, count);
        }
        r.quantities["max_incidences"] = worst_margin;
        r.add_exact("st_fuzz", all, std::to_string(trials) + " configurations", "st bound");
    } else {
        throw InputError("unknown incidence config: '" + config + "'");
    }
    fill_meta(r, options, start);
    return r;
}

std::vector<FamilySpec> default_corpus(long long max_n) {
    static const long long sizes[] = {4, 8, 16, 32, 64, 128, 256};
    static const std::pair<long long, long long> bw_shapes[] = {
        {2, 2}, {4, 2}, {8, 2}, {16, 2}, {16, 4}, {32, 4}, {64, 4}};
    std::vector<FamilySpec> corpus;
    for (long long n : sizes) {
        if (n > max_n)
            continue;
        corpus.push_back(FamilySpec::ap(n));
        corpus.push_back(FamilySpec::gp(n));
        corpus.push_back(FamilySpec::random_subset(4 * static_cast<uint64_t>(n) * n + 16, n,
                                                   1000 + static_cast<uint64_t>(n)));
    }
    for (auto [s, p] : bw_shapes)
        if (s * p <= max_n)
            corpus.push_back(FamilySpec::balog_wooley(s, p));
    return corpus;
}

namespace {

Json sweep_point(const FamilySpec& spec, const RunOptions& options,
                 std::vector<ExactCheck>& checks, std::vector<SoftCheck>& softs,
                 Json& certificates) {
    RSet a = generate(spec);
    const std::string label = spec.label();
    Json point;
    point["family"] = label;
    point["n"] = a.size();

    Report q = compute_quantities_report(a, options);
    point["quantities"] = q.quantities;
    for (SoftCheck& s : q.soft_checks) {
        s.name = label + "/" + s.name;
        softs.push_back(std::move(s));
    }

    // Exact sum-product floor (|A+A| + |AA|)^3 >= n^4 for the structured
    // families; their sumsets/product sets are computed exactly above.
    if (spec.kind == FamilySpec::Kind::Ap || spec.kind == FamilySpec::Kind::Gp) {
        Int sumset(q.quantities["sumset"].get<std::string>());
        Int prodset(q.quantities["prodset"].get<std::string>());
        Int lhs = ipow(sumset + prodset, 3);
        Int rhs = ipow(Int(a.size()), 4);
        checks.push_back({label + "/four_thirds_floor", lhs >= rhs, lhs.str(), rhs.str()});
    }

    if (static_cast<long long>(a.size()) <= options.max_decompose) {
        for (const char* mode : {"main", "partition", "fourth"}) {
            Report d = decompose_report(a, mode, options);
            for (ExactCheck& c : d.exact_checks) {
                c.name = label + "/" + mode + "/" + c.name;
                checks.push_back(std::move(c));
            }
            for (SoftCheck& s : d.soft_checks) {
                s.name = label + "/" + mode + "/" + s.name;
                softs.push_back(std::move(s));
            }
            Json cert;
            cert["point"] = label;
            cert["mode"] = mode;
            cert["certificate"] = d.certificates[0];
            certificates.push_back(std::move(cert));
        }
    } else {
        point["decomposition"] = "skipped: size above max_decompose";
    }
    return point;
}

} // namespace

Report sweep(const SweepSpec& spec) {
    auto start = Clock::now();
    if (spec.sizes.empty())
        throw ConfigError("sweep: no sizes given");

    std::vector<FamilySpec> points;
    points.reserve(spec.sizes.size());
    for (long long n : spec.sizes)
        points.push_back(FamilySpec::kind_with_size(spec.family, n,
                                                    spec.options.seed + static_cast<uint64_t>(n)));

    struct PointResult {
        Json point;
        std::vector<ExactCheck> checks;
        std::vector<SoftCheck> softs;
        Json certificates = Json::array();
    };

    auto run_point = [&](const FamilySpec& fs) {
        PointResult res;
        res.point = sweep_point(fs, spec.options, res.checks, res.softs, res.certificates);
        return res;
    };

    std::vector<PointResult> results(points.size());
    if (spec.options.workers > 1) {
        std::vector<std::future<PointResult>> futures;
        futures.reserve(points.size());
        for (const FamilySpec& fs : points)
            futures.push_back(std::async(std::launch::async, run_point, fs));
        for (size_t i = 0; i < futures.size(); ++i)
            results[i] = futures[i].get();
    } else {
        for (size_t i = 0; i < points.size(); ++i)
            results[i] = run_point(points[i]);
    }

    Report r;
    r.input["source"] = "sweep";
    r.input["family"] = spec.family;
    Json sizes = Json::array();
    for (long long n : spec.sizes)
        sizes.push_back(n);
    r.input["sizes"] = std::move(sizes);
    Json trend = Json::array();
    for (PointResult& res : results) {
        trend.push_back(std::move(res.point));
        for (ExactCheck& c : res.checks)
            r.exact_checks.push_back(std::move(c));
        for (SoftCheck& s : res.softs)
            r.soft_checks.push_back(std::move(s));
        for (Json& c : res.certificates)
            r.certificates.push_back(std::move(c));
    }
    r.quantities["points"] = std::move(trend);
    fill_meta(r, spec.options, start);
    return r;
}

} // namespace sumprod
