#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dedelab/numt.hpp"
#include "dedelab/rational.hpp"

namespace dedelab {

/// One observation from the conjecture scan: h of odd order d >= 3 mod a
/// prime p, with q_ratio = |s(h, p)| / p^{1 - 1/phi(d)}.
struct ScanRecord {
    u64 p = 0;
    u64 d = 0;
    u64 h = 0;
    Rational s_val;
    double q_ratio = 0;
};

struct QHistogram {
    double bucket_width = 0.002;
    std::vector<u64> counts = std::vector<u64>(61, 0); // last bucket = overflow

    void add(double q);
    void merge(const QHistogram& o);
};

struct ScanOptions {
    u64 max_p = 100'000;
    u64 d_max = 0; // 0 = no cap on the order
    unsigned threads = 0;
    double report_threshold = 0.05;
    /// Re-verify roughly 1 in `verify_rate` evaluated sums with the
    /// sawtooth oracle (0 disables).
    u64 verify_rate = 1000;
    u64 checkpoint_primes = 10'000;
    std::string checkpoint_dir; // empty = no checkpointing
};

struct ScanSummary {
    u64 max_p = 0;
    u64 d_max = 0;
    u64 primes_scanned = 0;
    u64 evaluations = 0;
    u64 emitted = 0;
    std::optional<ScanRecord> max_record;
    /// Conjecture monitor: largest |s(h,p)| * 12 / p seen, with its record.
    double max_s12p = 0;
    std::optional<ScanRecord> max_s12p_record;
    QHistogram histogram;
};

/// Scans primes p <= max_p; for each odd d | p-1 (3 <= d <= d_max when
/// capped) walks one representative per inverse pair of order-d elements.
/// `sink` receives the CSV-worthy records (q above threshold) in a
/// deterministic order independent of the thread count.
ScanSummary run_scan(const ScanOptions& opts, const std::function<void(const ScanRecord&)>& sink);

/// Exact N'_{d0}(2^d - 1, <2>) fitting: per residue class of d modulo
/// ord(2 mod d0), solve N' = A1 d + A0 from the first two samples and
/// verify the rest exactly.
struct MersenneFitClass {
    u64 residue = 0;
    std::vector<unsigned> sample_d;
    std::vector<Rational> sample_n; // N' per sample
    Rational a1;
    Rational a0;
    bool fitted = false;    // at least two samples
    bool verified = true;   // every extra sample matches the fit
    bool has_table = false; // a tabulated closed form exists
    bool matches_table = true;
};

struct MersenneFitReport {
    u64 d0 = 1;
    u64 ord2 = 1; // order of 2 mod d0 (1 when d0 = 1)
    std::vector<MersenneFitClass> classes;
    std::vector<unsigned> skipped_d; // gcd(2^d - 1, d0) > 1
};

MersenneFitReport run_mersenne_scan(const std::vector<unsigned>& d_list, u64 d0,
                                    unsigned threads = 0);

} // namespace dedelab
