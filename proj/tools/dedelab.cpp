#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dedelab/dedekind.hpp"
#include "dedelab/error.hpp"
#include "dedelab/io.hpp"
#include "dedelab/moments.hpp"
#include "dedelab/oracle.hpp"
#include "dedelab/scan.hpp"
#include "dedelab/verify.hpp"

using namespace dedelab;
using nlohmann::json;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

struct GlobalOpts {
    std::string format = "text";
    unsigned threads = 0;
    int precision_bits = 53;
    std::string out_path;
};

std::ostream& out_stream(const GlobalOpts& g, std::ofstream& file) {
    if (g.out_path.empty()) return std::cout;
    file.open(g.out_path, std::ios::trunc);
    if (!file) fail(errc::bad_argument, "cannot open output file " + g.out_path);
    return file;
}

oracle::FloatPrec prec_of(const GlobalOpts& g) { return oracle::FloatPrec{g.precision_bits}; }

void emit_check(std::ostream& os, const GlobalOpts& g, const std::string& name, double lhs,
                double rhs, bool pass) {
    if (g.format == "json") {
        os << check_report_json(name, lhs, rhs, pass, 2) << "\n";
    } else {
        os << name << ": lhs=" << lhs << " rhs=" << rhs << " |diff|=" << std::fabs(lhs - rhs)
           << " -> " << (pass ? "pass" : "FAIL") << "\n";
    }
}

int cmd_verify_run(const GlobalOpts& g, const std::string& suite, bool extended) {
    VerifyOptions opts{g.threads, extended};
    std::ofstream file;
    std::ostream& os = out_stream(g, file);
    bool all_pass = true;
    std::vector<CheckResult> results = verify_suite(suite, opts);
    if (g.format == "json") {
        json arr = json::array();
        for (const CheckResult& r : results) {
            arr.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            all_pass = all_pass && r.pass;
        }
        os << arr.dump(2) << "\n";
    } else {
        for (const CheckResult& r : results) {
            os << (r.pass ? "[pass] " : "[FAIL] ") << r.name << " (" << r.detail << ")\n";
            all_pass = all_pass && r.pass;
        }
        os << (all_pass ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    }
    return all_pass ? 0 : 1;
}

// Closed-form family detection for `moment --verify`.
std::optional<MomentResult> try_closed_form(u64 p, u64 d, u64 d0, const Subgroup& H) {
    try {
        if (d == 1) return closed_form(p, TrivialH{}, d0);
    } catch (const Error&) {
    }
    try {
        unsigned k = 0;
        u64 v = p + 1;
        while (v > 1 && v % 2 == 0) {
            v /= 2;
            ++k;
        }
        if (v == 1 && k >= 3 && H.contains(2) && mult_order(2, p) == d)
            return closed_form(p, MersenneH{k}, d0);
    } catch (const Error&) {
    }
    try {
        if (d == 3) {
            u64 a = static_cast<u64>(std::llround((std::sqrt(4.0 * static_cast<double>(p) - 3.0) - 1.0) / 2.0));
            if (a >= 2 && a * a + a + 1 == p && H.contains(a))
                return closed_form(p, D3H{static_cast<long>(a), 1}, d0);
        }
    } catch (const Error&) {
    }
    return std::nullopt;
}

int cmd_moment_run(const GlobalOpts& g, u64 p, u64 d, u64 d0, bool verify) {
    Subgroup H = subgroup_of_order(p, d);
    MomentResult m = mean_square_d0(p, H, d0);
    json j{{"coefficient", m.coefficient.frac_str()},
           {"pi_sq_multiple", m.float_value},
           {"provenance", formula_name(m.provenance)}};
    bool ok = true;
    if (verify) {
        if (auto cf = try_closed_form(p, d, d0, H)) {
            bool match = cf->coefficient == m.coefficient;
            j["closed_form_match"] = match;
            ok = ok && match;
        }
        if (d0 * p <= 20'000 * 15 && p <= 20'000) {
            double brute = oracle::mean_square_bruteforce(p, H, d0, prec_of(g));
            double rel = std::fabs(m.float_value - brute) / std::fabs(m.float_value);
            j["oracle_err"] = rel;
            ok = ok && rel <= 1e-8;
        }
    }
    std::ofstream file;
    std::ostream& os = out_stream(g, file);
    if (g.format == "json") {
        os << j.dump(2) << "\n";
    } else {
        os << "M_" << d0 << "(" << p << ", H_" << d << ") = " << m.coefficient.str()
           << " * pi^2 = " << m.float_value << "  [" << formula_name(m.provenance) << "]\n";
        if (j.contains("closed_form_match"))
            os << "closed form match: " << (j["closed_form_match"].get<bool>() ? "yes" : "NO") << "\n";
        if (j.contains("oracle_err"))
            os << "oracle relative error: " << j["oracle_err"].get<double>() << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_bound_run(const GlobalOpts& g, u64 p, u64 d, u64 d0, const std::string& mode_name) {
    BoundMode mode;
    if (mode_name == "plain")
        mode = BoundMode::plain;
    else if (mode_name == "euler")
        mode = BoundMode::euler;
    else if (mode_name == "exact_product")
        mode = BoundMode::exact_product;
    else
        fail(errc::bad_argument, "mode must be plain | euler | exact_product");
    ClassNumberBound b = class_number_bound(p, d, d0, mode, prec_of(g));
    std::ofstream file;
    std::ostream& os = out_stream(g, file);
    if (g.format == "json") {
        json j{{"p", p},     {"order", d},           {"d0", d0},
               {"mode", mode_name}, {"w_K", b.w_k},  {"m", b.m},
               {"bound_log", b.bound_log}, {"bound", b.bound}};
        os << j.dump(2) << "\n";
    } else {
        os << "h_K^- " << (mode == BoundMode::exact_product ? "=" : "<=") << " " << b.bound
           << "   (log = " << b.bound_log << ", w_K = " << b.w_k << ", degree m = " << b.m << ")\n";
    }
    return 0;
}

int cmd_scan_run(const GlobalOpts& g, u64 max_p, u64 d_max, double threshold) {
    ScanOptions opts;
    opts.max_p = max_p;
    opts.d_max = d_max;
    opts.threads = g.threads;
    opts.report_threshold = threshold;
    if (const char* dir = std::getenv("DEDELAB_CHECKPOINT_DIR")) opts.checkpoint_dir = dir;
    std::ofstream file;
    std::ostream& os = out_stream(g, file);
    os << scan_csv_header() << "\n";
    ScanSummary summary = run_scan(opts, [&os](const ScanRecord& r) { os << scan_csv_line(r) << "\n"; });
    std::ostream& sos = std::cout; // summary always on stdout
    if (g.format == "json" || !g.out_path.empty()) {
        sos << to_json_string(summary, 2) << "\n";
    } else {
        sos << "primes scanned: " << summary.primes_scanned
            << ", evaluations: " << summary.evaluations << "\n";
        if (summary.max_record) {
            const ScanRecord& r = *summary.max_record;
            sos << "max Q = " << r.q_ratio << " at (h, p) = (" << r.h << ", " << r.p
                << "), order d = " << r.d << ", s = " << r.s_val.str() << "\n";
        }
        sos << "max 12|s|/p = " << summary.max_s12p << "\n";
    }
    return 0;
}

int cmd_scan_mersenne_run(const GlobalOpts& g, std::vector<unsigned> ds, std::vector<u64> d0s) {
    std::ofstream file;
    std::ostream& os = out_stream(g, file);
    bool all_ok = true;
    json out = json::array();
    for (u64 d0 : d0s) {
        MersenneFitReport rep = run_mersenne_scan(ds, d0, g.threads);
        for (const MersenneFitClass& c : rep.classes) {
            bool ok = c.fitted && c.verified && (!c.has_table || c.matches_table);
            all_ok = all_ok && ok;
        }
        if (g.format == "json") {
            out.push_back(json::parse(to_json_string(rep)));
        } else {
            os << "d0 = " << d0 << " (ord of 2 mod d0 = " << rep.ord2 << ")\n";
            for (const MersenneFitClass& c : rep.classes) {
                os << "  d mod " << rep.ord2 << " = " << c.residue << ": N' = ";
                if (c.fitted)
                    os << "(" << c.a1.str() << ") d + (" << c.a0.str() << ")";
                else
                    os << "(need two samples)";
                os << "  samples d = {";
                for (std::size_t i = 0; i < c.sample_d.size(); ++i)
                    os << (i ? "," : "") << c.sample_d[i];
                os << "}";
                if (c.fitted) os << (c.verified ? " verified" : " NOT VERIFIED");
                if (c.has_table) os << (c.matches_table ? ", matches table" : ", TABLE MISMATCH");
                os << "\n";
            }
            if (!rep.skipped_d.empty()) {
                os << "  skipped d (gcd or range): {";
                for (std::size_t i = 0; i < rep.skipped_d.size(); ++i)
                    os << (i ? "," : "") << rep.skipped_d[i];
                os << "}\n";
            }
        }
    }
    if (g.format == "json") os << out.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

int run_oracle_check(const GlobalOpts& g, const std::string& name, double lhs, double rhs,
                     double tol) {
    bool pass = std::fabs(lhs - rhs) <= tol;
    std::ofstream file;
    std::ostream& os = out_stream(g, file);
    emit_check(os, g, name, lhs, rhs, pass);
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dedelab: exact Dedekind sums and mean square values of L(1, chi)"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--format", g.format, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
    app.add_option("--precision", g.precision_bits, "float mantissa bits for oracle sums (53 or 64)");
    app.add_option("--out", g.out_path, "write primary output to this file");

    // dedekind c d
    auto* cmd_ded = app.add_subcommand("dedekind", "exact Dedekind sum s(c, d)");
    long ded_c = 0, ded_d = 0;
    bool ded_naive = false;
    cmd_ded->add_option("c", ded_c)->required();
    cmd_ded->add_option("d", ded_d)->required();
    cmd_ded->add_flag("--naive", ded_naive, "force the O(|d|) sawtooth oracle");

    // rademacher b c d
    auto* cmd_rad = app.add_subcommand("rademacher", "Dedekind-Rademacher sum s(b, c, d)");
    long rad_b = 0, rad_c = 0, rad_d = 0;
    cmd_rad->add_option("b", rad_b)->required();
    cmd_rad->add_option("c", rad_c)->required();
    cmd_rad->add_option("d", rad_d)->required();

    // moment
    auto* cmd_mom = app.add_subcommand("moment", "mean square of L(1, chi') over X_p^-(H)");
    u64 mom_p = 0, mom_d = 1, mom_d0 = 1;
    bool mom_verify = false;
    cmd_mom->add_option("--p", mom_p, "prime conductor")->required();
    cmd_mom->add_option("--order", mom_d, "odd order d of the subgroup H")->required();
    cmd_mom->add_option("--d0", mom_d0, "squarefree twist modulus");
    cmd_mom->add_flag("--verify", mom_verify, "cross-check closed form and brute-force oracle");

    // bound
    auto* cmd_bnd = app.add_subcommand("bound", "relative class number bound");
    u64 bnd_p = 0, bnd_d = 1, bnd_d0 = 1;
    std::string bnd_mode = "plain";
    cmd_bnd->add_option("--p", bnd_p, "prime conductor")->required();
    cmd_bnd->add_option("--order", bnd_d, "odd order d of the subgroup H")->required();
    cmd_bnd->add_option("--d0", bnd_d0, "squarefree twist modulus");
    cmd_bnd->add_option("--mode", bnd_mode, "plain | euler | exact_product");

    // scan
    auto* cmd_scan = app.add_subcommand("scan", "scan Q(h, p) over primes p");
    u64 scan_max_p = 100'000, scan_d_max = 0;
    double scan_threshold = 0.05;
    cmd_scan->add_option("--max-p", scan_max_p, "scan primes up to this bound");
    cmd_scan->add_option("--d-max", scan_d_max, "cap on the order d (0 = all odd d >= 3)");
    cmd_scan->add_option("--threshold", scan_threshold, "CSV reporting threshold on Q");

    // scan-mersenne
    auto* cmd_sm = app.add_subcommand("scan-mersenne", "fit N'_{d0}(2^d - 1, <2>) = A1 d + A0");
    std::vector<unsigned> sm_d;
    std::vector<u64> sm_d0;
    cmd_sm->add_option("--d", sm_d, "odd exponents d (f = 2^d - 1)")->required()->delimiter(',');
    cmd_sm->add_option("--d0", sm_d0, "odd squarefree twist moduli")->required()->delimiter(',');

    // maxsum
    auto* cmd_max = app.add_subcommand("maxsum", "exact sum of max(q1 x, q2 x) over x mod p");
    u64 max_q1 = 1, max_q2 = 1, max_p = 5;
    cmd_max->add_option("q1", max_q1)->required();
    cmd_max->add_option("q2", max_q2)->required();
    cmd_max->add_option("p", max_p)->required();

    // oracle checks
    auto* cmd_orc = app.add_subcommand("oracle", "independent brute-force checks");
    cmd_orc->require_subcommand(1);
    u64 orc_f = 7, orc_d = 1, orc_d0 = 1, orc_p = 7, orc_q1 = 1, orc_q2 = 2;
    auto* orc_ms = cmd_orc->add_subcommand("meansquare", "definitional average vs exact formula");
    orc_ms->add_option("--f", orc_f)->required();
    orc_ms->add_option("--order", orc_d);
    orc_ms->add_option("--d0", orc_d0);
    auto* orc_l1 = cmd_orc->add_subcommand("l1", "cotangent formula vs Dirichlet series");
    orc_l1->add_option("--f", orc_f)->required();
    auto* orc_cs = cmd_orc->add_subcommand("charsum", "partial-character-sum identity");
    orc_cs->add_option("--f", orc_f)->required();
    auto* orc_ufa = cmd_orc->add_subcommand("ufa", "U(d0, f) = f A(d0, f)");
    orc_ufa->add_option("--d0", orc_d0)->required();
    orc_ufa->add_option("--f", orc_f)->required();
    auto* orc_tw = cmd_orc->add_subcommand("twisted", "twisted average vs (2 pi^2/p) s(q1,q2,p)");
    orc_tw->add_option("--p", orc_p)->required();
    orc_tw->add_option("--q1", orc_q1);
    orc_tw->add_option("--q2", orc_q2);
    auto* orc_ker = cmd_orc->add_subcommand("kernel", "common kernel of X_p^-(H) equals H");
    orc_ker->add_option("--p", orc_p)->required();
    orc_ker->add_option("--order", orc_d)->required();

    // verify
    auto* cmd_ver = app.add_subcommand("verify", "run a named invariant suite");
    std::string ver_suite = "all";
    bool ver_ext = false;
    cmd_ver->add_option("suite", ver_suite, "reciprocity | formulas | mersenne | d3 | oracle | all");
    cmd_ver->add_flag("--extended", ver_ext, "full-depth grids (slow)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_ded->parsed()) {
            Rational s = ded_naive ? dedekind_naive(ded_c, ded_d) : dedekind_fast(ded_c, ded_d);
            std::ofstream file;
            std::ostream& os = out_stream(g, file);
            if (g.format == "json") {
                json j{{"c", ded_c}, {"d", ded_d}, {"s", s.frac_str()}, {"float", s.to_double()}};
                os << j.dump(2) << "\n";
            } else {
                os << s.str() << "  (" << s.to_double() << ")\n";
            }
            return 0;
        }
        if (cmd_rad->parsed()) {
            Rational s = rademacher(rad_b, rad_c, rad_d);
            std::ofstream file;
            std::ostream& os = out_stream(g, file);
            if (g.format == "json") {
                json j{{"b", rad_b}, {"c", rad_c}, {"d", rad_d}, {"s", s.frac_str()},
                       {"float", s.to_double()}};
                os << j.dump(2) << "\n";
            } else {
                os << s.str() << "  (" << s.to_double() << ")\n";
            }
            return 0;
        }
        if (cmd_mom->parsed()) return cmd_moment_run(g, mom_p, mom_d, mom_d0, mom_verify);
        if (cmd_bnd->parsed()) return cmd_bound_run(g, bnd_p, bnd_d, bnd_d0, bnd_mode);
        if (cmd_scan->parsed()) return cmd_scan_run(g, scan_max_p, scan_d_max, scan_threshold);
        if (cmd_sm->parsed()) return cmd_scan_mersenne_run(g, sm_d, sm_d0);
        if (cmd_max->parsed()) {
            u64 ma = oracle::sum_of_maxima(max_q1, max_q2, max_p);
            u64 gc = std::gcd(max_q1, max_q2);
            double ratio = static_cast<double>(ma) / (static_cast<double>(max_p) * max_p);
            double predicted = 2.0 / 3.0 - static_cast<double>(gc * gc) / (12.0 * max_q1 * max_q2);
            std::ofstream file;
            std::ostream& os = out_stream(g, file);
            if (g.format == "json") {
                json j{{"q1", max_q1}, {"q2", max_q2}, {"p", max_p}, {"sum", ma},
                       {"ratio", ratio}, {"predicted", predicted}};
                os << j.dump(2) << "\n";
            } else {
                os << "Ma = " << ma << ", Ma/p^2 = " << ratio << ", predicted constant = "
                   << predicted << "\n";
            }
            return 0;
        }
        if (cmd_orc->parsed()) {
            if (orc_ms->parsed()) {
                Subgroup H = subgroup_of_order(orc_f, orc_d);
                double rhs = mean_square_d0(orc_f, H, orc_d0).float_value;
                double lhs = oracle::mean_square_bruteforce(orc_f, H, orc_d0, prec_of(g));
                return run_oracle_check(g, "mean_square_bruteforce", lhs, rhs,
                                        1e-8 * std::fabs(rhs));
            }
            if (orc_l1->parsed()) {
                double worst = 0, worst_tol = 1e-8;
                for (const Character& chi : characters(orc_f)) {
                    if (!chi.is_odd() || !chi.is_primitive()) continue;
                    double tail = 0;
                    auto a = oracle::l1_cotangent(chi, prec_of(g));
                    auto b = oracle::l1_dirichlet_series(chi, 1'000'000, &tail);
                    double err = std::abs(a - b);
                    if (err > worst) {
                        worst = err;
                        worst_tol = std::max(1e-8, 4.0 * tail);
                    }
                }
                return run_oracle_check(g, "l1_cotangent_vs_series", worst, 0.0, worst_tol);
            }
            if (orc_cs->parsed()) {
                double worst = 0;
                for (const Character& chi : characters(orc_f)) {
                    if (!chi.is_primitive()) continue;
                    auto pr = oracle::charsum_identity(chi, prec_of(g));
                    worst = std::max(worst, std::fabs(pr.lhs - pr.rhs));
                }
                return run_oracle_check(g, "charsum_identity", worst, 0.0,
                                        1e-6 * static_cast<double>(orc_f) * orc_f);
            }
            if (orc_ufa->parsed()) {
                auto pr = oracle::u_equals_fa(orc_d0, orc_f);
                return run_oracle_check(g, "u_equals_fa", pr.lhs, pr.rhs,
                                        1e-6 * std::max(1.0, std::fabs(pr.rhs)));
            }
            if (orc_tw->parsed()) {
                double lhs = oracle::twisted_moment_bruteforce(orc_p, orc_q1, orc_q2, prec_of(g));
                double rhs = twisted_moment(orc_q1, orc_q2, orc_p).float_value;
                return run_oracle_check(g, "twisted_moment", lhs, rhs, 1e-8 * std::fabs(rhs));
            }
            if (orc_ker->parsed()) {
                Subgroup H = subgroup_of_order(orc_p, orc_d);
                auto chars = characters_trivial_on(orc_p, H, Parity::odd);
                bool same = common_kernel(orc_p, chars) == H.elements;
                return run_oracle_check(g, "kernel_recovery", same ? 1 : 0, 1, 0.5);
            }
        }
        if (cmd_ver->parsed()) return cmd_verify_run(g, ver_suite, ver_ext);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
