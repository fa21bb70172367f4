#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "dedelab/io.hpp"
#include "dedelab/scan.hpp"

using namespace dedelab;

namespace {

std::string csv_of(const ScanOptions& opts, ScanSummary* summary_out = nullptr) {
    std::ostringstream os;
    ScanSummary s = run_scan(opts, [&os](const ScanRecord& r) { os << scan_csv_line(r) << "\n"; });
    if (summary_out) *summary_out = s;
    return os.str();
}

} // namespace

TEST_CASE("small scans find the (2, 127) record") {
    ScanOptions opts;
    opts.max_p = 130;
    ScanSummary s;
    csv_of(opts, &s);
    REQUIRE(s.max_record.has_value());
    CHECK(s.max_record->p == 127);
    CHECK(s.max_record->d == 7);
    CHECK(s.max_record->h == 2);
    CHECK(s.max_record->s_val == Rational(1281, 254));
    CHECK(s.max_record->q_ratio == doctest::Approx(0.08903).epsilon(2e-4));

    ScanOptions tiny;
    tiny.max_p = 30;
    ScanSummary t;
    csv_of(tiny, &t);
    REQUIRE(t.max_record.has_value());
    CHECK(t.max_record->q_ratio < 0.089);
}

TEST_CASE("scanner output is independent of the thread count") {
    ScanOptions a;
    a.max_p = 4000;
    a.threads = 1;
    ScanOptions b = a;
    b.threads = 4;
    ScanSummary sa, sb;
    std::string ca = csv_of(a, &sa);
    std::string cb = csv_of(b, &sb);
    CHECK(ca == cb);
    CHECK(sa.evaluations == sb.evaluations);
    CHECK(sa.max_record->p == sb.max_record->p);
    CHECK(sa.max_record->h == sb.max_record->h);
    CHECK(sa.histogram.counts == sb.histogram.counts);
}

TEST_CASE("d_max cap restricts the orders") {
    ScanOptions opts;
    opts.max_p = 600;
    opts.d_max = 3;
    opts.report_threshold = 0.0;
    std::ostringstream os;
    bool only_d3 = true;
    ScanSummary s = run_scan(opts, [&](const ScanRecord& r) { only_d3 = only_d3 && r.d == 3; });
    CHECK(only_d3);
    CHECK(s.evaluations > 0);
}

TEST_CASE("checkpoint resume reproduces a clean run") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "dedelab_ckpt_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    ScanOptions clean;
    clean.max_p = 3000;
    ScanSummary want;
    csv_of(clean, &want);

    // First leg: scan to a smaller bound, checkpointing into dir.
    ScanOptions leg1 = clean;
    leg1.max_p = 3000;
    leg1.checkpoint_dir = dir.string();
    leg1.checkpoint_primes = 50;
    ScanSummary got;
    csv_of(leg1, &got);
    CHECK(got.primes_scanned == want.primes_scanned);
    CHECK(got.max_record->p == want.max_record->p);
    CHECK(got.evaluations == want.evaluations);

    // Second leg: resuming after completion is a no-op.
    ScanSummary resumed;
    csv_of(leg1, &resumed);
    CHECK(resumed.primes_scanned == want.primes_scanned);
    CHECK(resumed.evaluations == want.evaluations);
    CHECK(resumed.max_record->p == want.max_record->p);
    CHECK(resumed.max_record->q_ratio == want.max_record->q_ratio);
    fs::remove_all(dir);
}

TEST_CASE("scan csv schema") {
    ScanRecord r{127, 7, 2, Rational(1281, 254), 0.0890281};
    CHECK(scan_csv_header() == "p,d,h,s_num,s_den,q_ratio");
    CHECK(scan_csv_line(r) == "127,7,2,1281,254,0.0890281");
}

TEST_CASE("mersenne scan fits the tabulated families") {
    std::vector<unsigned> ds{3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25};
    MersenneFitReport r3 = run_mersenne_scan(ds, 3);
    REQUIRE(r3.classes.size() == 1);
    CHECK(r3.ord2 == 2);
    CHECK(r3.classes[0].a1 == Rational(-1L));
    CHECK(r3.classes[0].a0 == Rational(0L));
    CHECK(r3.classes[0].verified);
    CHECK(r3.classes[0].matches_table);

    MersenneFitReport r1 = run_mersenne_scan(ds, 1);
    REQUIRE(r1.classes.size() == 1);
    CHECK(r1.classes[0].a1 == Rational(-2L));
    CHECK(r1.classes[0].a0 == Rational(1L));

    MersenneFitReport r15 = run_mersenne_scan(ds, 15);
    REQUIRE(r15.classes.size() == 2); // d = 1, 3 mod 4
    for (const auto& c : r15.classes) {
        CHECK(c.fitted);
        CHECK(c.verified);
        CHECK(c.matches_table);
    }

    // d0 = 105: residues 1, 5, 7, 11 mod 12; d with 3 | d skipped
    std::vector<unsigned> dl105{5, 7, 9, 11, 13, 15, 17, 19, 23, 25, 29, 31, 35, 37, 41, 43, 47, 49};
    MersenneFitReport r105 = run_mersenne_scan(dl105, 105);
    CHECK(r105.ord2 == 12);
    CHECK(r105.classes.size() == 4);
    for (const auto& c : r105.classes) {
        CHECK(c.fitted);
        CHECK(c.verified);
        CHECK(c.matches_table);
    }
    CHECK(r105.skipped_d == std::vector<unsigned>{9, 15});

    // untabulated d0 = 7: fit from two samples, verified on at least 3 more
    std::vector<unsigned> dl7{5, 7, 11, 13, 17, 19, 23, 25, 29, 31};
    MersenneFitReport r7 = run_mersenne_scan(dl7, 7);
    CHECK(r7.ord2 == 3);
    REQUIRE(r7.classes.size() == 2);
    for (const auto& c : r7.classes) {
        CHECK(c.fitted);
        CHECK(c.sample_d.size() >= 5);
        CHECK(c.verified);
    }
    std::string json = to_json_string(r7);
    CHECK(json.find("\"a1\"") != std::string::npos);
}
