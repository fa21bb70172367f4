// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <sstream>
#include <vector>

#include "dedelab/dedekind.hpp"
#include "dedelab/moments.hpp"
#include "dedelab/oracle.hpp"
#include "dedelab/parallel.hpp"
#include "dedelab/scan.hpp"
#include "dedelab/verify.hpp"

using namespace dedelab;

namespace {

int failures = 0;

void report(int idx, const std::string& what, bool pass, const std::string& detail = "") {
    std::printf("criterion %d [%s]: %s%s%s\n", idx, pass ? "PASS" : "FAIL", what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

void report(int idx, const CheckResult& r, const std::string& label) {
    report(idx, label, r.pass, r.detail);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 4: paper regression table ------------------------------

bool regression_table(std::string& detail) {
    std::ostringstream why;
    bool ok = true;
    auto expect = [&](bool cond, const char* what) {
        if (!cond) {
            ok = false;
            why << what << "; ";
        }
    };
    expect(mean_square(5, trivial_subgroup(5)).coefficient == Rational(2, 25), "M(5,{1}) != 2/25");
    for (u64 p : {7ull, 13ull, 31ull, 43ull}) {
        Rational want = Rational(1, 6) * (Rational(1L) - Rational(1L) / Rational::from_u64(p));
        expect(mean_square(p, subgroup_of_order(p, 3)).coefficient == want,
               "M(p,H_3) != (pi^2/6)(1-1/p)");
    }
    CheckResult mers = check_mersenne_tables(0);
    expect(mers.pass, "Mersenne table");
    if (!mers.pass) why << mers.detail << "; ";
    CheckResult triv = check_trivial_product_forms(300);
    expect(triv.pass, "product formulas to f = 300");
    if (!triv.pass) why << triv.detail << "; ";
    detail = why.str();
    return ok;
}

// ---- criterion 7: class number bounds ----------------------------------

bool bounds_check(std::string& detail) {
    ClassNumberBound b73 = class_number_bound(7, 3, 1, BoundMode::plain);
    bool first = std::fabs(b73.bound_log) < 1e-9; // bound exactly 1, true class number 1
    ClassNumberBound plain = class_number_bound(23, 1, 1, BoundMode::plain);
    ClassNumberBound euler = class_number_bound(23, 1, 6, BoundMode::euler);
    bool second = euler.bound_log < plain.bound_log;
    std::ostringstream d;
    d << "h^-(Q(sqrt(-7))) bound = " << std::exp(b73.bound_log) << "; (23,1): euler log "
      << euler.bound_log << " vs plain log " << plain.bound_log;
    detail = d.str();
    return first && second;
}

// ---- criterion 8: asymptotic monitor ------------------------------------

bool asymptotic_monitor(std::string& detail) {
    std::vector<u64> primes;
    for_primes_in(1001, 100'000, [&](u64 p) {
        if (p % 6 == 1) primes.push_back(p);
    });
    std::vector<double> dev(primes.size());
    parallel_for(primes.size(), 0, [&](std::size_t i) {
        u64 p = primes[i];
        Subgroup H = subgroup_of_order(p, 3);
        dev[i] = std::fabs(n_d0_bis(p, H, 6).to_double()) / static_cast<double>(p);
    });
    double lo_max = 0, hi_max = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] < 10'000)
            lo_max = std::max(lo_max, dev[i]);
        else
            hi_max = std::max(hi_max, dev[i]);
    }
    bool deviation_ok = hi_max < 0.05 && hi_max < lo_max;
    CheckResult growth = check_d3_growth(315, 0);
    std::ostringstream d;
    d << "max |M_6/kappa_6 - 1|: p < 1e4: " << lo_max << ", p > 1e4: " << hi_max << "; "
      << growth.detail;
    detail = d.str();
    return deviation_ok && growth.pass;
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();

    {
        auto t = std::chrono::steady_clock::now();
        CheckResult r = check_fast_naive_equivalence(1000, 0);
        double secs = seconds_since(t);
        bool pass = r.pass && secs < 60.0;
        std::ostringstream d;
        d << r.detail << "; " << secs << " s";
        report(1, "dedekind fast == naive kernel, all coprime pairs d <= 1000, < 1 min", pass,
               d.str());
    }
    {
        CheckResult two = check_reciprocity(2000, 0);
        CheckResult three = check_three_term(10'000, 0);
        report(2, "reciprocity suites (two-term d <= 2000, 1e4 coprime triples)",
               two.pass && three.pass, two.detail + " / " + three.detail);
    }
    {
        CheckResult r = check_meansquare_oracle(500, {1, 2, 3, 6, 15}, 1e-8, 0);
        report(3, "exact mean squares vs brute-force oracle, p <= 500, rel err <= 1e-8", r.pass,
               r.detail);
    }
    {
        std::string detail;
        bool ok = regression_table(detail);
        report(4, "paper regression table (exact equalities)", ok, detail);
    }
    {
        auto t = std::chrono::steady_clock::now();
        ScanOptions opts;
        opts.max_p = 100'000;
        u64 csv_lines = 0;
        ScanSummary s = run_scan(opts, [&](const ScanRecord&) { ++csv_lines; });
        double secs = seconds_since(t);
        bool pass = s.max_record.has_value() && s.max_record->p == 127 && s.max_record->h == 2 &&
                    std::fabs(s.max_record->q_ratio - 0.08903) <= 1e-5 && secs < 600.0;
        std::ostringstream d;
        if (s.max_record)
            d << "max Q = " << s.max_record->q_ratio << " at (h,p) = (" << s.max_record->h << ","
              << s.max_record->p << "); " << s.evaluations << " sums in " << secs << " s";
        report(5, "conjecture scan to 1e5: max Q = 0.08903 +- 1e-5 at (2, 127)", pass, d.str());
    }
    {
        CheckResult r = check_maxsum(99'991);
        report(6, "sums of maxima: exact value 18 and 1% asymptotics at p ~ 1e5", r.pass, r.detail);
    }
    {
        std::string detail;
        bool ok = bounds_check(detail);
        report(7, "class-number bounds: h^- <= 1 at (7,3); d0=6 improves on d0=1 at p=23", ok,
               detail);
    }
    {
        std::string detail;
        bool ok = asymptotic_monitor(detail);
        report(8, "asymptotic monitor: M_6 deviation shrinks, N_2/sqrt(f) bounded", ok, detail);
    }
    {
        CheckResult ids = check_n_identities(0);
        CheckResult two_path = check_two_path(500, 5000, 150, 0);
        CheckResult pi = check_pi_formula(200, 0);
        CheckResult cs = check_charsum(200, 0);
        CheckResult ufa = check_u_fa();
        bool ok = ids.pass && two_path.pass && pi.pass && cs.pass && ufa.pass;
        std::ostringstream d;
        d << ids.detail << " / " << two_path.detail << " / " << pi.detail << " / " << cs.detail
          << " / " << ufa.detail;
        report(9, "identity suite: N-triples, two-path, Pi product, charsum, U = fA", ok, d.str());
    }

    std::printf("acceptance: %s (%d failure%s, %.1f s total)\n", failures == 0 ? "PASS" : "FAIL",
                failures, failures == 1 ? "" : "s", seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
