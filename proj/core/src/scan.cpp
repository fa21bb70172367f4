#include "dedelab/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dedelab/dedekind.hpp"
#include "dedelab/error.hpp"
#include "dedelab/groups.hpp"
#include "dedelab/moments.hpp"
#include "dedelab/parallel.hpp"

namespace dedelab {

void QHistogram::add(double q) {
    std::size_t b = q < 0 ? 0 : static_cast<std::size_t>(q / bucket_width);
    if (b >= counts.size()) b = counts.size() - 1;
    ++counts[b];
}

void QHistogram::merge(const QHistogram& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
}

namespace {

struct ChunkResult {
    u64 primes = 0;
    u64 evaluations = 0;
    std::vector<ScanRecord> emitted;
    std::optional<ScanRecord> max_record;
    double max_s12p = 0;
    std::optional<ScanRecord> max_s12p_record;
    QHistogram histogram;
};

void better(std::optional<ScanRecord>& best, const ScanRecord& cand) {
    if (!best || cand.q_ratio > best->q_ratio) best = cand;
}

void scan_prime(u64 p, const ScanOptions& opts, ChunkResult& out) {
    ++out.primes;
    const u64 m = p - 1;
    u64 odd_part = m;
    while (odd_part % 2 == 0) odd_part /= 2;
    if (odd_part < 3) return;
    const u64 g = smallest_primitive_root(p);
    for (u64 d : divisors(factorize(odd_part))) {
        if (d < 3) continue;
        if (opts.d_max != 0 && d > opts.d_max) continue;
        const u64 step = pow_mod(g, m / d, p); // an element of order exactly d
        const double exponent = 1.0 - 1.0 / static_cast<double>(euler_phi(d));
        const double scale = std::pow(static_cast<double>(p), -exponent);
        // s(h, p) = s(h^{-1}, p): one representative per inverse pair
        // {step^k, step^{d-k}}, i.e. k < d/2 with gcd(k, d) = 1.
        u64 h = 1;
        for (u64 k = 1; 2 * k < d; ++k) {
            h = mul_mod(h, step, p);
            if (std::gcd(k, d) != 1) continue;
            Rational s = dedekind_fast(static_cast<long>(h), static_cast<long>(p));
            ++out.evaluations;
            if (opts.verify_rate != 0 && p <= static_cast<u64>(kNaiveModulusLimit) &&
                splitmix64(p * 0x100000001b3ull + h) % opts.verify_rate == 0) {
                if (s != dedekind_naive(static_cast<long>(h), static_cast<long>(p)))
                    throw std::logic_error("scan soundness check failed: fast != naive");
            }
            double q = std::fabs(s.to_double()) * scale;
            out.histogram.add(q);
            ScanRecord rec{p, d, h, std::move(s), q};
            double s12p = std::fabs(rec.s_val.to_double()) * 12.0 / static_cast<double>(p);
            if (s12p > out.max_s12p) {
                out.max_s12p = s12p;
                out.max_s12p_record = rec;
            }
            better(out.max_record, rec);
            if (q > opts.report_threshold) out.emitted.push_back(std::move(rec));
        }
    }
}

struct Checkpoint {
    u64 next_start = 2;
    ScanSummary summary;
};

std::string checkpoint_path(const ScanOptions& opts) {
    std::ostringstream name;
    name << "scan_" << opts.max_p << "_" << opts.d_max << ".ckpt";
    return (std::filesystem::path(opts.checkpoint_dir) / name.str()).string();
}

void write_checkpoint(const ScanOptions& opts, const Checkpoint& ck) {
    std::string path = checkpoint_path(opts);
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        os << "v1 " << ck.next_start << " " << ck.summary.primes_scanned << " "
           << ck.summary.evaluations << " " << ck.summary.emitted << "\n";
        auto put_record = [&os](const std::optional<ScanRecord>& r) {
            if (!r) {
                os << "-\n";
                return;
            }
            os << r->p << " " << r->d << " " << r->h << " " << r->s_val.frac_str() << " "
               << std::hexfloat << r->q_ratio << std::defaultfloat << "\n";
        };
        put_record(ck.summary.max_record);
        os << std::hexfloat << ck.summary.max_s12p << std::defaultfloat << "\n";
        put_record(ck.summary.max_s12p_record);
        for (u64 c : ck.summary.histogram.counts) os << c << " ";
        os << "\n";
    }
    std::filesystem::rename(tmp, path);
}

bool read_checkpoint(const ScanOptions& opts, Checkpoint& ck) {
    std::ifstream is(checkpoint_path(opts));
    if (!is) return false;
    std::string tag;
    is >> tag;
    if (tag != "v1") return false;
    is >> ck.next_start >> ck.summary.primes_scanned >> ck.summary.evaluations >>
        ck.summary.emitted;
    auto get_record = [&is]() -> std::optional<ScanRecord> {
        std::string first;
        is >> first;
        if (first == "-") return std::nullopt;
        ScanRecord r;
        r.p = std::stoull(first);
        std::string frac;
        is >> r.d >> r.h >> frac;
        auto slash = frac.find('/');
        long num = std::stol(frac.substr(0, slash));
        long den = std::stol(frac.substr(slash + 1));
        r.s_val = Rational(num, den);
        std::string qh;
        is >> qh;
        r.q_ratio = std::strtod(qh.c_str(), nullptr);
        return r;
    };
    ck.summary.max_record = get_record();
    std::string mh;
    is >> mh;
    ck.summary.max_s12p = std::strtod(mh.c_str(), nullptr);
    ck.summary.max_s12p_record = get_record();
    for (u64& c : ck.summary.histogram.counts) is >> c;
    return static_cast<bool>(is);
}

} // namespace

ScanSummary run_scan(const ScanOptions& opts, const std::function<void(const ScanRecord&)>& sink) {
    if (opts.max_p > 100'000'000) fail(errc::input_too_large, "scan capped at max_p <= 1e8");
    Checkpoint ck;
    ck.summary.max_p = opts.max_p;
    ck.summary.d_max = opts.d_max;
    bool resumed = false;
    if (!opts.checkpoint_dir.empty()) resumed = read_checkpoint(opts, ck);
    if (resumed && ck.next_start > opts.max_p) return ck.summary;

    const unsigned threads = effective_threads(opts.threads);
    const u64 chunk_span = 1 << 14;
    u64 primes_at_last_checkpoint = ck.summary.primes_scanned;
    for (u64 wave_start = ck.next_start; wave_start <= opts.max_p;) {
        const std::size_t wave_chunks = threads * 4;
        std::vector<std::pair<u64, u64>> ranges;
        u64 lo = wave_start;
        for (std::size_t i = 0; i < wave_chunks && lo <= opts.max_p; ++i) {
            u64 hi = std::min(opts.max_p, lo + chunk_span - 1);
            ranges.emplace_back(lo, hi);
            lo = hi + 1;
        }
        parallel_map_ordered<ChunkResult>(
            ranges.size(), threads,
            [&](std::size_t i) {
                ChunkResult r;
                for_primes_in(ranges[i].first, ranges[i].second,
                              [&](u64 p) { scan_prime(p, opts, r); });
                return r;
            },
            [&](std::size_t, ChunkResult&& r) {
                ck.summary.primes_scanned += r.primes;
                ck.summary.evaluations += r.evaluations;
                ck.summary.histogram.merge(r.histogram);
                if (r.max_record) better(ck.summary.max_record, *r.max_record);
                if (r.max_s12p > ck.summary.max_s12p) {
                    ck.summary.max_s12p = r.max_s12p;
                    ck.summary.max_s12p_record = r.max_s12p_record;
                }
                for (const ScanRecord& rec : r.emitted) {
                    sink(rec);
                    ++ck.summary.emitted;
                }
            });
        wave_start = lo;
        ck.next_start = lo;
        if (!opts.checkpoint_dir.empty() &&
            ck.summary.primes_scanned - primes_at_last_checkpoint >= opts.checkpoint_primes) {
            write_checkpoint(opts, ck);
            primes_at_last_checkpoint = ck.summary.primes_scanned;
        }
    }
    if (!opts.checkpoint_dir.empty()) write_checkpoint(opts, ck);
    return ck.summary;
}

MersenneFitReport run_mersenne_scan(const std::vector<unsigned>& d_list, u64 d0, unsigned threads) {
    if (d0 == 0 || !is_squarefree(d0) || d0 % 2 == 0)
        fail(errc::not_square_free, "d0 must be odd and squarefree");
    MersenneFitReport report;
    report.d0 = d0;
    report.ord2 = d0 == 1 ? 1 : mult_order(2, d0);

    std::vector<unsigned> usable;
    for (unsigned d : d_list) {
        if (d < 3 || d % 2 == 0 || d >= 64) {
            report.skipped_d.push_back(d);
            continue;
        }
        u64 f = (1ull << d) - 1;
        if (std::gcd(f, d0) != 1) {
            report.skipped_d.push_back(d);
            continue;
        }
        unsigned __int128 prod = static_cast<unsigned __int128>(f) * d0;
        if (prod > ~0ull) {
            report.skipped_d.push_back(d);
            continue;
        }
        usable.push_back(d);
    }
    std::sort(usable.begin(), usable.end());
    usable.erase(std::unique(usable.begin(), usable.end()), usable.end());

    std::vector<Rational> n_values(usable.size());
    parallel_for(usable.size(), threads, [&](std::size_t i) {
        unsigned d = usable[i];
        u64 f = (1ull << d) - 1;
        Subgroup H = subgroup_from_generators(f, std::vector<u64>{2});
        if (H.order() != d) throw std::logic_error("order of 2 mod 2^d - 1 must be d");
        n_values[i] = n_prime_d0_value(f, H, d0).value;
    });

    bool has_table = d0 == 1 || d0 == 3 || d0 == 5 || d0 == 15 || d0 == 105;
    for (std::size_t i = 0; i < usable.size(); ++i) {
        unsigned d = usable[i];
        u64 residue = d % report.ord2;
        auto it = std::find_if(report.classes.begin(), report.classes.end(),
                               [&](const MersenneFitClass& c) { return c.residue == residue; });
        if (it == report.classes.end()) {
            report.classes.push_back(MersenneFitClass{});
            it = std::prev(report.classes.end());
            it->residue = residue;
            it->has_table = has_table;
        }
        it->sample_d.push_back(d);
        it->sample_n.push_back(n_values[i]);
    }
    for (MersenneFitClass& cls : report.classes) {
        if (cls.sample_d.size() >= 2) {
            Rational d1(static_cast<long>(cls.sample_d[0]), 1);
            Rational d2(static_cast<long>(cls.sample_d[1]), 1);
            cls.a1 = (cls.sample_n[1] - cls.sample_n[0]) / (d2 - d1);
            cls.a0 = cls.sample_n[0] - cls.a1 * d1;
            cls.fitted = true;
            for (std::size_t i = 2; i < cls.sample_d.size(); ++i) {
                Rational pred = cls.a1 * Rational(static_cast<long>(cls.sample_d[i]), 1) + cls.a0;
                if (pred != cls.sample_n[i]) cls.verified = false;
            }
        }
        if (cls.has_table) {
            for (std::size_t i = 0; i < cls.sample_d.size(); ++i) {
                if (mersenne_n_prime_closed(cls.sample_d[i], d0) != cls.sample_n[i])
                    cls.matches_table = false;
            }
        }
    }
    std::sort(report.classes.begin(), report.classes.end(),
              [](const MersenneFitClass& a, const MersenneFitClass& b) { return a.residue < b.residue; });
    return report;
}

} // namespace dedelab
