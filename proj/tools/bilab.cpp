// Batch front-end: every check and scan as a subcommand with reproducible
// configuration and CSV/JSON outputs.
//
// Exit codes: 0 all executed assertions pass, 1 assertion failure, 2 config
// error.  Failures are also emitted as machine-readable JSON records.

#include "bilab/bochner_riesz.hpp"
#include "bilab/checks.hpp"
#include "bilab/counterexamples.hpp"
#include "bilab/exponents.hpp"
#include "bilab/grid.hpp"
#include "bilab/maximal.hpp"
#include "bilab/quadrature.hpp"
#include "bilab/spherical_avg.hpp"

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using nlohmann::json;
using namespace bilab;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 1;
    int threads = 1;
    std::string format = "json";  // csv | json
    std::string out;              // empty = stdout
};

void emit(const GlobalOpts& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::fputs(text.c_str(), stdout);
        if (!text.empty() && text.back() != '\n') std::fputc('\n', stdout);
    } else {
        std::ofstream f(opts.out, std::ios::binary);
        f << text;
        if (!text.empty() && text.back() != '\n') f << "\n";
    }
}

void parallel_for(int threads, std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const int nt = std::min<std::size_t>(threads, count);
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&, t]() {
            for (std::size_t i = static_cast<std::size_t>(t); i < count; i += nt) fn(i);
        });
    for (std::thread& th : pool) th.join();
}

std::vector<double> parse_number_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const Rat r = Rat::parse(item);
        out.push_back(r.value());
    }
    return out;
}

Rat reciprocal_of(const std::string& exponent) {
    if (exponent == "inf" || exponent == "infinity") return Rat(0);
    return Rat(1) / Rat::parse(exponent);
}

json verdict_json(const RegionVerdict& v) {
    json j;
    j["status"] = region_name(v.status);
    if (!v.case_tag.empty()) j["case"] = v.case_tag;
    j["citation"] = v.citation;
    if (!v.lorentz_note.empty()) j["lorentz"] = v.lorentz_note;
    return j;
}

int run_report(const GlobalOpts& opts) {
    const std::vector<CheckResult> results = run_all_checks(opts.seed);
    json j;
    j["seed"] = opts.seed;
    j["checks"] = json::array();
    bool all = true;
    for (const CheckResult& r : results) {
        json c;
        c["name"] = r.name;
        c["pass"] = r.pass;
        c["runtime_seconds"] = r.runtime_seconds;
        c["details"] = r.details;
        j["checks"].push_back(c);
        all = all && r.pass;
    }
    j["all_pass"] = all;
    emit(opts, j.dump(2));
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bilinear spherical-average and Bochner-Riesz laboratory"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts opts;
    app.add_option("--seed", opts.seed, "seed for all randomized corpora");
    app.add_option("--threads", opts.threads, "worker pool cap");
    app.add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opts.out, "output file (default stdout)");

    // ---- slice-check ----
    auto* slice = app.add_subcommand("slice-check", "direct vs sliced bilinear average");
    int sc_d = 2, sc_n = 64, sc_order = 12;
    slice->add_option("--d", sc_d)->check(CLI::IsMember({2}));
    slice->add_option("--n", sc_n);
    slice->add_option("--order", sc_order);

    // ---- domination ----
    auto* dom = app.add_subcommand("domination", "pointwise domination report");
    int do_n = 16, do_order = 6, do_pairs = 8;
    dom->add_option("--n", do_n);
    dom->add_option("--order", do_order);
    dom->add_option("--pairs", do_pairs);

    // ---- scan ----
    auto* scan = app.add_subcommand("scan", "counterexample delta/R sweeps + slope fit");
    std::string scan_family = "knapp", scan_params = "1/8,1/16,1/32,1/64";
    int scan_d = 2, scan_n = 2048;
    double scan_box = 4.0;
    std::string scan_p = "2", scan_q = "2", scan_r = "1";
    double scan_eps0 = 0.15;  // sweeps routinely start at delta = 1/8
    scan->add_option("--family", scan_family)
        ->check(CLI::IsMember({"knapp", "annulus", "scaling"}));
    scan->add_option("--deltas,--params", scan_params, "comma list, rationals ok");
    scan->add_option("--d", scan_d)->check(CLI::IsMember({2, 3}));
    scan->add_option("--n", scan_n);
    scan->add_option("--box", scan_box);
    scan->add_option("--eps0", scan_eps0, "probe width for the indicator families");
    scan->add_option("--p", scan_p);
    scan->add_option("--q", scan_q);
    scan->add_option("--r", scan_r);

    // ---- br-reconstruct ----
    auto* rec = app.add_subcommand("br-reconstruct", "dyadic profile residuals");
    std::string rec_alphas = "1/2,1,2";
    int rec_j = 10;
    rec->add_option("--alphas", rec_alphas);
    rec->add_option("--j", rec_j);

    // ---- sqfn ----
    auto* sq = app.add_subcommand("sqfn", "square-function bounds and delta sweeps");
    std::string sq_deltas = "1/4,1/8,1/16,1/32";
    int sq_n = 16;
    sq->add_option("--deltas", sq_deltas);
    sq->add_option("--n", sq_n);

    // ---- partition ----
    auto* part = app.add_subcommand("partition", "multiplier partition identity");
    std::string part_delta = "1/8", part_eps = "1/4";
    int part_n = 32;
    double part_box = 8.0, part_lambda = 1.0;
    part->add_option("--delta", part_delta);
    part->add_option("--eps", part_eps);
    part->add_option("--n", part_n);
    part->add_option("--box", part_box);
    part->add_option("--lambda", part_lambda);

    // ---- kernel ----
    auto* ker = app.add_subcommand("kernel", "kernel decay sweep");
    std::string ker_deltas = "1/8,1/16,1/32,1/64";
    int ker_n = 2048;
    double ker_box = 128.0;
    std::string ker_dump;
    ker->add_option("--deltas", ker_deltas);
    ker->add_option("--n", ker_n);
    ker->add_option("--box", ker_box);
    ker->add_option("--dump", ker_dump, "write each kernel as a grid snapshot prefix");

    // ---- classify ----
    auto* cls = app.add_subcommand("classify", "exponent region verdicts");
    std::string cl_p = "2", cl_q = "2", cl_r = "1", cl_op = "global";
    int cl_d = 2;
    double cl_alpha = 0.0;
    cls->add_option("--d", cl_d);
    cls->add_option("--p", cl_p, "exponent p as rational or inf");
    cls->add_option("--q", cl_q);
    cls->add_option("--r", cl_r);
    cls->add_option("--alpha", cl_alpha, "order for br-necessity");
    cls->add_option("--op", cl_op)
        ->check(CLI::IsMember({"global", "localized", "delta", "br-necessity",
                               "alpha-star", "sufficient-alpha"}));

    // ---- report ----
    app.add_subcommand("report", "aggregate JSON of all acceptance checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("report")) return run_report(opts);

        if (app.got_subcommand(slice)) {
            // the acceptance-grade run is seed- and size-fixed; the CLI exposes
            // order/n for exploratory use
            if (sc_n != 64 || sc_order != 12) {
                // run a reduced inline variant
                GridFunction f = make_band_limited(2, sc_n, 8.0, 3, opts.seed, 3.0);
                GridFunction g = make_band_limited(2, sc_n, 8.0, 3, opts.seed + 1, 3.0);
                const SphereRule s3 = sphere_rule(4, sc_order);
                const BallRule ball = ball_rule(2, sc_order, true);
                const SphereRule s1 = sphere_rule(2, sc_order);
                const double x[2] = {0.1, -0.2};
                const double direct = direct_bilinear_average(f, g, {x, 2}, 1.0, s3, false);
                const double sliced = sliced_bilinear_average(f, g, {x, 2}, 1.0, ball, s1, false);
                json j;
                j["direct"] = direct;
                j["sliced"] = sliced;
                j["rel_error"] = std::abs(direct - sliced) / std::abs(direct);
                emit(opts, j.dump(2));
                return j["rel_error"].get<double>() <= 1e-6 ? 0 : 1;
            }
            CheckResult r = check_slicing_identity(opts.seed);
            json j;
            j["max_rel_error"] = r.details["max_rel_error"];
            j["pass"] = r.pass;
            emit(opts, j.dump(2));
            return r.pass ? 0 : 1;
        }

        if (app.got_subcommand(dom)) {
            const RadiusGrid radii = RadiusGrid::global(-2, 1, 4);
            std::vector<DominationReport> reports(do_pairs);
            parallel_for(opts.threads, do_pairs, [&](std::size_t i) {
                GridFunction f = make_band_limited(2, do_n, 4.0, 3, opts.seed + 2 * i, 0.0);
                GridFunction g = make_band_limited(2, do_n, 4.0, 3, opts.seed + 2 * i + 1, 0.0);
                for (cplx& v : f.values) v = std::abs(v);
                for (cplx& v : g.values) v = std::abs(v);
                reports[i] = pointwise_domination_report(f, g, radii, do_order);
            });
            bool all = true;
            double worst = 0;
            for (const DominationReport& r : reports) {
                all = all && r.pass;
                worst = std::max({worst, r.max_ratio, r.max_ratio_swapped});
            }
            if (opts.format == "csv") {
                emit(opts, reports.front().to_csv());
            } else {
                json j;
                j["pairs"] = do_pairs;
                j["max_ratio"] = worst;
                j["pass"] = all;
                emit(opts, j.dump(2));
            }
            return all ? 0 : 1;
        }

        if (app.got_subcommand(scan)) {
            ScanConfig config;
            config.grid = {scan_d, scan_n, scan_box};
            config.seed = opts.seed;
            config.eps0 = scan_eps0;
            config.eps_annulus = scan_eps0;
            config.exponents.d = scan_d;
            config.exponents.up = reciprocal_of(scan_p).value();
            config.exponents.uq = reciprocal_of(scan_q).value();
            config.exponents.ur = reciprocal_of(scan_r).value();
            const std::vector<double> params = parse_number_list(scan_params);
            const std::vector<ScanRecord> records = run_scan(scan_family, params, config);
            const SlopeFit fit = fit_scaling_exponent(records);
            emit(opts, opts.format == "csv" ? scan_to_csv(records, &fit)
                                            : scan_to_json(records, &fit));
            return 0;
        }

        if (app.got_subcommand(rec)) {
            json j = json::array();
            bool ok = true;
            for (double alpha : parse_number_list(rec_alphas)) {
                const ProfileDecomposition dec = dyadic_profile_decomposition(alpha, rec_j);
                const double bound = 2.0 * std::pow(2.0, -rec_j * alpha);
                json row;
                row["alpha"] = alpha;
                row["j"] = rec_j;
                row["residual_global"] = dec.residual_global;
                row["residual_resolved"] = dec.residual_resolved;
                row["bound"] = bound;
                ok = ok && dec.residual_global <= bound;
                j.push_back(row);
            }
            emit(opts, j.dump(2));
            return ok ? 0 : 1;
        }

        if (app.got_subcommand(sq)) {
            const std::vector<BumpProfile> corpus = profile_corpus(4);
            json j;
            j["plancherel"] = json::array();
            bool ok = true;
            for (double delta : parse_number_list(sq_deltas)) {
                GridFunction f = make_band_limited(2, sq_n, 4.0, 3, opts.seed, 0.0);
                const int samples = static_cast<int>(std::ceil(8.0 / delta)) + 1;
                const GridFunction s = lo_square_function(f, corpus[0], delta, samples);
                const double ratio = lp_norm(s, 0.5) / lp_norm(f, 0.5);
                const double bound = std::sqrt(2.0 * delta);
                ok = ok && ratio <= bound;
                j["plancherel"].push_back({{"delta", delta},
                                           {"ratio", ratio},
                                           {"bound", bound}});
            }
            CheckResult mixed = check_mixed_square_slope(opts.seed);
            j["mixed_sup_slope"] = mixed.details;
            ok = ok && mixed.pass;
            emit(opts, j.dump(2));
            return ok ? 0 : 1;
        }

        if (app.got_subcommand(part)) {
            const ProfileDecomposition dec = dyadic_profile_decomposition(1.0, 10);
            const PartitionReport rep = multiplier_partition_check(
                Rat::parse(part_delta).value(), Rat::parse(part_eps).value(),
                part_lambda, dec.psi, 2, part_n, part_box);
            json j;
            j["max_error"] = rep.max_error;
            j["active_cells"] = rep.active_cells;
            j["cell_bound"] = rep.cell_bound;
            j["max_cells_per_pair"] = rep.max_cells_per_pair;
            j["pou_defect"] = rep.pou_defect;
            const bool ok = rep.max_error <= 1e-10 && rep.active_cells <= rep.cell_bound;
            j["pass"] = ok;
            emit(opts, j.dump(2));
            return ok ? 0 : 1;
        }

        if (app.got_subcommand(ker)) {
            const std::vector<BumpProfile> corpus = profile_corpus(4);
            json j = json::array();
            std::vector<double> constants;
            for (double delta : parse_number_list(ker_deltas)) {
                const KernelDecayReport rep = kernel_decay_check(
                    corpus[0], 2.0 * delta, delta, 2, ker_n, ker_box);
                constants.push_back(rep.constant);
                j.push_back({{"delta", delta},
                             {"constant", rep.constant},
                             {"radial_asym", rep.max_radial_asym}});
                if (!ker_dump.empty()) {
                    // reproduce the kernel and write it in the snapshot format
                    GridFunction probe = make_grid(2, ker_n, ker_box);
                    std::vector<cplx> mhat(probe.size());
                    const double dxi = 1.0 / ker_box;
                    for (std::size_t i = 0; i < mhat.size(); ++i) {
                        const int k0 = static_cast<int>(i / ker_n) - ker_n / 2;
                        const int k1 = static_cast<int>(i % ker_n) - ker_n / 2;
                        const double q = (k0 * dxi) * (k0 * dxi) + (k1 * dxi) * (k1 * dxi);
                        mhat[i] = cplx{corpus[0]((2.0 * delta - q) / delta), 0.0};
                    }
                    GridFunction kern = inverse_transform(2, ker_n, ker_box, mhat);
                    char name[256];
                    std::snprintf(name, sizeof(name), "%s_delta_%g.grid",
                                  ker_dump.c_str(), delta);
                    write_snapshot(kern, name, "annular multiplier kernel");
                }
            }
            bool ok = true;
            for (std::size_t i = 1; i < constants.size(); ++i) {
                const double q = constants[i] / constants[i - 1];
                ok = ok && q >= 0.25 && q <= 4.0;
            }
            json out;
            out["sweep"] = j;
            out["pass"] = ok;
            emit(opts, out.dump(2));
            return ok ? 0 : 1;
        }

        if (app.got_subcommand(cls)) {
            const Rat up = reciprocal_of(cl_p);
            const Rat uq = reciprocal_of(cl_q);
            const Rat ur = reciprocal_of(cl_r);
            json j;
            if (cl_op == "global") {
                j = verdict_json(global_region(cl_d, up, uq, ur));
            } else if (cl_op == "localized") {
                j = verdict_json(localized_region(cl_d, up, uq, ur));
            } else if (cl_op == "delta") {
                j = verdict_json(delta_region(cl_d, up, uq));
            } else if (cl_op == "br-necessity") {
                j = verdict_json(br_maximal_necessity(cl_alpha, ur, cl_d));
            } else if (cl_op == "alpha-star") {
                const AlphaStar a = alpha_star(up, uq, Rat(1) / p_s(cl_d), cl_d);
                j["value"] = a.value;
                j["region"] = a.region;
                j["tie"] = a.tie;
                if (a.tie) {
                    j["value_d1"] = a.value_d1;
                    j["value_d2"] = a.value_d2;
                }
            } else {
                j["value"] = sufficient_alpha(up, uq, cl_d);
            }
            emit(opts, j.dump(2));
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        json j;
        j["error"] = "config";
        j["message"] = e.what();
        emit(opts, j.dump(2));
        return 2;
    } catch (const std::exception& e) {
        json j;
        j["error"] = "failure";
        j["message"] = e.what();
        emit(opts, j.dump(2));
        return 1;
    }
    return 2;
}
