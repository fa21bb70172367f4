#include "dedelab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "dedelab/dedekind.hpp"
#include "dedelab/error.hpp"
#include "dedelab/moments.hpp"
#include "dedelab/oracle.hpp"
#include "dedelab/parallel.hpp"

namespace dedelab {

namespace {

constexpr double kPi2d = std::numbers::pi * std::numbers::pi;

struct Gate {
    std::atomic<unsigned long long> checked{0};
    std::mutex mu;
    bool ok = true;
    std::string note;

    void count(unsigned long long n = 1) { checked.fetch_add(n, std::memory_order_relaxed); }
    void flag(const std::string& msg) {
        std::lock_guard<std::mutex> lock(mu);
        if (ok) {
            ok = false;
            note = msg;
        }
    }
    CheckResult done(const std::string& name, const std::string& extra = "") {
        std::ostringstream d;
        d << checked.load() << " cases";
        if (!extra.empty()) d << "; " << extra;
        if (!ok) d << "; FIRST FAILURE: " << note;
        return {name, ok, d.str()};
    }
};

std::vector<u64> odd_divisors_geq(u64 n, u64 lo) {
    u64 odd = n;
    while (odd % 2 == 0) odd /= 2;
    std::vector<u64> out;
    for (u64 d : divisors(factorize(odd)))
        if (d >= lo) out.push_back(d);
    return out;
}

Rational reciprocity_rhs(long c, long d) {
    __int128 cc = c, dd = d;
    __int128 abs_cd = cc * dd < 0 ? -cc * dd : cc * dd;
    return Rational::ratio128(cc * cc + dd * dd - 3 * abs_cd + 1, 12 * cc * dd);
}

Rational three_term_rhs(long b, long c, long d) {
    __int128 bb = b, cc = c, dd = d;
    __int128 prod = bb * cc * dd;
    __int128 abs_prod = prod < 0 ? -prod : prod;
    return Rational::ratio128(bb * bb + cc * cc + dd * dd - 3 * abs_prod, 12 * prod);
}

} // namespace

CheckResult check_fast_naive_equivalence(u64 d_limit, unsigned threads) {
    Gate g;
    parallel_for(d_limit, threads, [&](std::size_t i) {
        long d = static_cast<long>(i) + 1;
        for (long c = 1; c <= d; ++c) {
            if (std::gcd(c, d) != 1) continue;
            g.count();
            if (dedekind_fast(c, d) != dedekind_naive(c, d)) {
                g.flag("s(" + std::to_string(c) + "," + std::to_string(d) + ") fast != naive");
                return;
            }
        }
    });
    return g.done("dedekind fast == naive, d <= " + std::to_string(d_limit));
}

CheckResult check_reciprocity(u64 d_limit, unsigned threads) {
    Gate g;
    parallel_for(d_limit + 1, threads, [&](std::size_t i) {
        long d = static_cast<long>(i);
        if (d < 2) return;
        for (long c = 1; c < d; ++c) {
            if (std::gcd(c, d) != 1) continue;
            g.count();
            if (dedekind_fast(c, d) + dedekind_fast(d, c) != reciprocity_rhs(c, d)) {
                g.flag("reciprocity fails at (" + std::to_string(c) + "," + std::to_string(d) + ")");
                return;
            }
        }
    });
    return g.done("two-term reciprocity, d <= " + std::to_string(d_limit));
}

CheckResult check_three_term(u64 triples, unsigned threads) {
    Gate g;
    parallel_for(triples, threads, [&](std::size_t i) {
        u64 s = splitmix64(0xded0 + i);
        auto draw = [&](u64 salt) {
            long v = static_cast<long>(splitmix64(s ^ salt) % 4000) - 2000;
            return v == 0 ? 1 : v;
        };
        long b = draw(1), c = draw(2), d = draw(3);
        // nudge to pairwise coprime
        for (u64 t = 0; t < 64; ++t) {
            if (std::gcd(std::labs(b), std::labs(c)) == 1 &&
                std::gcd(std::labs(c), std::labs(d)) == 1 &&
                std::gcd(std::labs(d), std::labs(b)) == 1)
                break;
            s = splitmix64(s);
            b = draw(5 + t);
            c = draw(11 + t);
            d = draw(17 + t);
        }
        if (std::gcd(std::labs(b), std::labs(c)) != 1 ||
            std::gcd(std::labs(c), std::labs(d)) != 1 || std::gcd(std::labs(d), std::labs(b)) != 1)
            return;
        g.count();
        Rational lhs = rademacher(b, c, d) + rademacher(d, b, c) + rademacher(c, d, b);
        if (lhs != three_term_rhs(b, c, d)) {
            g.flag("three-term reciprocity fails at (" + std::to_string(b) + "," +
                   std::to_string(c) + "," + std::to_string(d) + ")");
        }
    });
    return g.done("three-term reciprocity on random coprime triples");
}

CheckResult check_inversion(u64 d_limit) {
    Gate g;
    for (long d = 2; d <= static_cast<long>(d_limit); ++d) {
        for (long c = 1; c < d; ++c) {
            if (std::gcd(c, d) != 1) continue;
            long cstar = static_cast<long>(mod_inverse(static_cast<u64>(c), static_cast<u64>(d)));
            g.count();
            if (dedekind_fast(cstar, d) != dedekind_fast(c, d)) {
                g.flag("s(c*,d) != s(c,d) at (" + std::to_string(c) + "," + std::to_string(d) + ")");
                return g.done("inversion identity");
            }
        }
    }
    return g.done("inversion identity s(c*, d) = s(c, d), d <= " + std::to_string(d_limit));
}

CheckResult check_sign_rules(u64 d_limit) {
    Gate g;
    for (long d = 2; d <= static_cast<long>(d_limit); ++d) {
        for (long c = 1; c < d; ++c) {
            if (std::gcd(c, d) != 1) continue;
            g.count();
            Rational s = dedekind_fast(c, d);
            bool ok = dedekind_fast(-c, d) == -s && dedekind_fast(c, -d) == -s &&
                      dedekind_naive(-c, d) == -s && dedekind_naive(c, -d) == -s;
            if (!ok) {
                g.flag("sign rule fails at (" + std::to_string(c) + "," + std::to_string(d) + ")");
                return g.done("sign rules");
            }
        }
    }
    return g.done("oddness and negative-modulus sign rules, d <= " + std::to_string(d_limit));
}

CheckResult check_s_bound(u64 d_limit) {
    Gate g;
    for (long d = 1; d <= static_cast<long>(d_limit); ++d) {
        Rational cap = dedekind_s1(d);
        if (cap > Rational(d, 12)) {
            g.flag("s(1,d) > d/12 at d = " + std::to_string(d));
            break;
        }
        for (long c = 1; c < d; ++c) {
            if (std::gcd(c, d) != 1) continue;
            g.count();
            if (dedekind_fast(c, d).abs() > cap) {
                g.flag("|s(c,d)| > s(1,d) at (" + std::to_string(c) + "," + std::to_string(d) + ")");
                return g.done("bound");
            }
        }
    }
    return g.done("|s(c,d)| <= s(1,|d|) <= |d|/12, d <= " + std::to_string(d_limit));
}

CheckResult check_trivial_product_forms(u64 f_limit) {
    Gate g;
    for (u64 f = 3; f <= f_limit; ++f) {
        Subgroup one = trivial_subgroup(f);
        g.count();
        if (mean_square(f, one).coefficient != closed_form(f, TrivialH{}, 1).coefficient) {
            g.flag("M(f,1) product form fails at f = " + std::to_string(f));
            break;
        }
        if (f % 2 == 1) {
            g.count();
            if (mean_square_d0(f, one, 2).coefficient !=
                closed_form(f, TrivialH{}, 2).coefficient) {
                g.flag("M_2(f,1) form fails at f = " + std::to_string(f));
                break;
            }
        }
        for (u64 d0 : {3ull, 5ull, 6ull}) {
            if (std::gcd(d0, f) != 1) continue;
            bool admissible = true;
            for (const auto& [q, e] : factorize(f).factors) {
                (void)e;
                u64 r = q % d0;
                if (r != 1 % d0 && r != d0 - 1) admissible = false;
            }
            if (!admissible) continue;
            g.count();
            if (mean_square_d0(f, one, d0).coefficient !=
                closed_form(f, TrivialH{}, d0).coefficient) {
                g.flag("pm-one product form fails at f = " + std::to_string(f) +
                       ", d0 = " + std::to_string(d0));
                return g.done("trivial products");
            }
        }
    }
    return g.done("trivial-subgroup product formulas, f <= " + std::to_string(f_limit));
}

CheckResult check_two_path(u64 p_full, u64 p_sample_limit, u64 samples, unsigned threads) {
    std::vector<std::pair<u64, u64>> tasks;
    for_primes_in(3, p_full, [&](u64 p) {
        for (u64 d : odd_divisors_geq(p - 1, 1)) tasks.emplace_back(p, d);
    });
    if (p_sample_limit > p_full && samples > 0) {
        std::vector<std::pair<u64, u64>> pool;
        for_primes_in(p_full + 1, p_sample_limit, [&](u64 p) {
            for (u64 d : odd_divisors_geq(p - 1, 1)) pool.emplace_back(p, d);
        });
        for (u64 i = 0; i < samples && !pool.empty(); ++i)
            tasks.push_back(pool[splitmix64(0xab1e + i) % pool.size()]);
    }
    Gate g;
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        auto [p, d] = tasks[i];
        Subgroup H = subgroup_of_order(p, d);
        for (u64 d0 : {1ull, 2ull, 3ull, 6ull, 15ull}) {
            if (std::gcd(d0, p) != 1) continue;
            g.count();
            Rational a = mean_square_d0_prime(p, H, d0).coefficient;
            Rational b = mean_square_d0_lift(p, H, d0).coefficient;
            if (a != b) {
                g.flag("two-path mismatch at p=" + std::to_string(p) + " d=" + std::to_string(d) +
                       " d0=" + std::to_string(d0));
                return;
            }
        }
    });
    return g.done("prime-split vs lift path, p <= " + std::to_string(p_full) + " full, sampled to " +
                  std::to_string(p_sample_limit));
}

namespace {

std::vector<Subgroup> odd_order_subgroups(u64 f, std::size_t cap) {
    std::set<std::vector<u64>> seen;
    std::vector<Subgroup> out;
    out.push_back(trivial_subgroup(f));
    seen.insert(out.back().elements);
    for (u64 h = 2; h < f && out.size() < cap; ++h) {
        if (std::gcd(h, f) != 1) continue;
        if (mult_order(h, f) % 2 == 0) continue;
        Subgroup H = subgroup_from_generators(f, std::vector<u64>{h});
        if (seen.insert(H.elements).second) out.push_back(std::move(H));
    }
    return out;
}

} // namespace

CheckResult check_n_identities(unsigned threads) {
    struct Task {
        u64 f;
        Subgroup H;
    };
    std::vector<Task> tasks;
    for (u64 f : {5ull, 7ull, 11ull, 13ull, 19ull, 31ull, 37ull, 43ull, 35ull, 49ull, 91ull, 143ull}) {
        for (Subgroup& H : odd_order_subgroups(f, 6)) tasks.push_back({f, std::move(H)});
    }
    Gate g;
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        const auto& [f, H] = tasks[i];
        for (u64 d0 : {2ull, 3ull, 5ull, 6ull, 10ull, 15ull, 21ull, 105ull}) {
            if (std::gcd(d0, f) != 1) continue;
            g.count();
            Rational a = n_d0_primary(f, H, d0);
            Rational b = n_d0_bis(f, H, d0);
            Rational c = n_d0_ter(f, H, d0);
            if (a != b || b != c) {
                g.flag("N_d0 triple disagreement at f=" + std::to_string(f) +
                       " |H|=" + std::to_string(H.order()) + " d0=" + std::to_string(d0));
                return;
            }
            // Mean square relation at prime f: M_{d0} = kappa (1 + N/f).
            if (is_prime(f) && !H.contains_minus_one()) {
                Rational m = mean_square_d0(f, H, d0).coefficient;
                Rational k = kappa_coeff(d0) * (Rational(1L) + a / Rational::from_u64(f));
                if (m != k) {
                    g.flag("M = kappa(1 + N/p) fails at p=" + std::to_string(f) +
                           " d0=" + std::to_string(d0));
                    return;
                }
            }
            // N' = (N - 2f)/3 ties the two normalizations together.
            Rational np = n_prime_d0_value(f, H, d0).value;
            if (Rational(3L) * np + Rational(2L) * Rational::from_u64(f) != a) {
                g.flag("N' normalization mismatch at f=" + std::to_string(f));
                return;
            }
        }
    });
    return g.done("N_d0 identity triple + normalizations");
}

CheckResult check_n_integrality(u64 p_limit) {
    Gate g;
    for_primes_in(3, p_limit, [&](u64 p) {
        for (u64 d : odd_divisors_geq(p - 1, 3)) {
            g.count();
            NValue n = n_value(p, subgroup_of_order(p, d));
            if (!n.value.is_integer())
                g.flag("N(p,H) not integral at p=" + std::to_string(p) + " d=" + std::to_string(d));
        }
    });
    return g.done("N(p, H) integral for H != {1}, p <= " + std::to_string(p_limit));
}

CheckResult check_pi_formula(u64 f_limit, unsigned threads) {
    std::vector<u64> moduli;
    for_primes_in(5, f_limit, [&](u64 p) { moduli.push_back(p); });
    for (u64 f : {35ull, 49ull, 91ull, 121ull, 143ull, 341ull})
        if (f <= f_limit) moduli.push_back(f);
    Gate g;
    parallel_for(moduli.size(), threads, [&](std::size_t i) {
        u64 f = moduli[i];
        for (const Subgroup& H : odd_order_subgroups(f, 4)) {
            if (H.contains_minus_one()) continue;
            std::vector<Character> chars = characters_trivial_on(f, H, Parity::odd);
            for (u64 q : {2ull, 3ull, 5ull, 7ull}) {
                if (std::gcd(q, f) != 1) continue;
                g.count();
                EulerProduct ep = euler_product(f, H, q);
                if (ep.pi_value.sign() <= 0) {
                    g.flag("Pi not positive at f=" + std::to_string(f));
                    return;
                }
                std::complex<long double> direct{1.0L, 0.0L};
                for (const Character& chi : chars)
                    direct *= std::complex<long double>{1.0L, 0.0L} -
                              chi.value_ld(q % f) / static_cast<long double>(q);
                double want = ep.pi_value.to_double();
                if (std::fabs(static_cast<double>(direct.real()) - want) >
                        1e-9 * std::max(1.0, std::fabs(want)) ||
                    std::fabs(static_cast<double>(direct.imag())) > 1e-9) {
                    g.flag("Pi_q mismatch at f=" + std::to_string(f) + " q=" + std::to_string(q) +
                           " |H|=" + std::to_string(H.order()));
                    return;
                }
            }
        }
    });
    return g.done("order-formula Pi_q == direct character product, f <= " + std::to_string(f_limit));
}

CheckResult check_pi_bounds(u64 p_limit) {
    Gate g;
    for_primes_in(5, p_limit, [&](u64 p) {
        Subgroup one = trivial_subgroup(p);
        for (u64 d0 : {2ull, 3ull, 6ull, 15ull, 105ull}) {
            if (d0 % p == 0) continue;
            g.count();
            EulerProduct ep = euler_product(p, one, d0);
            double lower = pi_lower_bound(p, d0);
            if (ep.pi_value.sign() <= 0 || ep.pi_value.to_double() < lower - 1e-12) {
                g.flag("Pi lower bound fails at p=" + std::to_string(p) + " d0=" + std::to_string(d0));
                return;
            }
            if (d0 == 6 && ep.pi_value < Rational(2, 3)) {
                g.flag("Pi_6(p,{1}) < 2/3 at p=" + std::to_string(p));
                return;
            }
        }
    });
    return g.done("Pi positivity and lower bounds, p <= " + std::to_string(p_limit));
}

CheckResult check_a_values() {
    Gate g;
    auto expect = [&](u64 d0, u64 r, const Rational& want) {
        g.count();
        if (a_value(d0, r) != want)
            g.flag("A(" + std::to_string(d0) + "," + std::to_string(r) + ") wrong");
    };
    expect(2, 1, Rational(0L));
    expect(3, 1, Rational(4, 3));
    expect(6, 1, Rational(-4L));
    for (u64 d0 : {2ull, 3ull, 5ull, 6ull, 7ull, 10ull, 14ull, 15ull, 21ull, 30ull, 35ull, 105ull}) {
        // A(d0, 1) = phi(d0)^2 - (d0^2/3) prod (1 - 1/q^2)
        Rational prod(1L);
        for (const auto& [q, e] : factorize(d0).factors) {
            (void)e;
            long ql = static_cast<long>(q);
            prod *= Rational(ql * ql - 1, ql * ql);
        }
        u64 phi = euler_phi(d0);
        Rational want = Rational::from_u64(phi * phi) -
                        Rational::from_u64(d0 * d0) / Rational(3L) * prod;
        expect(d0, 1, want);
    }
    // High-precision cotangent evaluation of the defining double sum.
    const long double pi = std::numbers::pi_v<long double>;
    for (u64 d0 : {2ull, 3ull, 5ull, 6ull, 7ull, 10ull, 15ull, 21ull}) {
        for (u64 r = 1; r < d0; ++r) {
            if (std::gcd(r, d0) != 1) continue;
            long double acc = 0.0L;
            for (u64 a = 1; a < d0; ++a) {
                if (std::gcd(a, d0) != 1) continue;
                for (u64 b = 1; b < d0; ++b) {
                    if (b == a || std::gcd(b, d0) != 1) continue;
                    long double ca = 1.0L / std::tan(pi * static_cast<long double>(r * a % d0) / d0);
                    long double cb = 1.0L / std::tan(pi * static_cast<long double>(r * b % d0) / d0);
                    long double cd = 1.0L / std::tan(
                        pi * static_cast<long double>(((b + d0 - a) % d0)) / d0);
                    acc += cd * (ca - cb);
                }
            }
            g.count();
            double exact = a_value(d0, r).to_double();
            if (std::fabs(static_cast<double>(acc) - exact) > 1e-9 * std::max(1.0, std::fabs(exact))) {
                g.flag("cotangent cross-check fails at A(" + std::to_string(d0) + "," +
                       std::to_string(r) + ")");
                return g.done("A values");
            }
        }
    }
    return g.done("A(d0, f) closed values and cotangent cross-check");
}

CheckResult check_restriction_identity() {
    Gate g;
    for (auto [d, p] : std::vector<std::pair<unsigned, u64>>{{3, 7}, {5, 31}, {7, 127}, {13, 8191}}) {
        Subgroup H = subgroup_of_order(p, d);
        g.count();
        // 2 is in H, so M_2/D_2 must equal M_1/D_1 as real numbers.
        double m2 = mean_square_d0(p, H, 2).float_value;
        double d2 = euler_product(p, H, 2).d_value;
        double m1 = mean_square(p, H).float_value;
        if (std::fabs(m2 / d2 - m1) > 1e-9 * std::fabs(m1))
            g.flag("restriction identity fails at p=" + std::to_string(p));
    }
    return g.done("M_2/D_2 == M_1/D_1 on Mersenne subgroups (2 in H)");
}

CheckResult check_twisted_reductions(u64 p_limit) {
    Gate g;
    for_primes_in(3, p_limit, [&](u64 p) {
        g.count();
        if (twisted_moment(1, 1, p).coefficient != mean_square(p, trivial_subgroup(p)).coefficient) {
            g.flag("M_{1,1} != M(p,{1}) at p=" + std::to_string(p));
            return;
        }
        if (p > 2 && twisted_moment(2, 4, p).coefficient != twisted_moment(1, 2, p).coefficient) {
            g.flag("gcd reduction fails at p=" + std::to_string(p));
            return;
        }
        if (p > 3 && twisted_moment(3, 3, p).coefficient != twisted_moment(1, 1, p).coefficient) {
            g.flag("diagonal reduction fails at p=" + std::to_string(p));
        }
    });
    return g.done("twisted moment reductions, p <= " + std::to_string(p_limit));
}

CheckResult check_mersenne_tables(unsigned threads) {
    const std::vector<std::pair<unsigned, u64>> table = {
        {3, 7}, {5, 31}, {7, 127}, {13, 8191}, {17, 131071}, {19, 524287}, {31, 2147483647}};
    Gate g;
    parallel_for(table.size(), threads, [&](std::size_t i) {
        auto [d, p] = table[i];
        Subgroup H = subgroup_from_generators(p, std::vector<u64>{2});
        if (H.elements != subgroup_of_order(p, d).elements) {
            g.flag("<2> is not the canonical order-d subgroup at p=" + std::to_string(p));
            return;
        }
        long dl = static_cast<long>(d);
        g.count();
        // S(H, f) = (f - 2d + 1)/4 and its 2f companion (a = 2 even).
        Rational s_hf = subgroup_dedekind_sum(H.elements, p);
        Rational want = (Rational::from_u64(p) - Rational(2 * dl - 1, 1)) / Rational(4L);
        if (s_hf != want) {
            g.flag("S(H,f) closed form fails at p=" + std::to_string(p));
            return;
        }
        LiftedSubgroup H2 = lift_subgroup(H, 2);
        if (subgroup_dedekind_sum(H2.group.elements, 2 * p) != want) {
            g.flag("S(H_2,2f) closed form fails at p=" + std::to_string(p));
            return;
        }
        for (u64 d0 : {1ull, 3ull, 5ull, 15ull, 105ull}) {
            if (std::gcd(static_cast<u64>(d0), (1ull << d) - 1) != 1) continue;
            g.count();
            Rational np = n_prime_d0_value(p, H, d0).value;
            if (np != mersenne_n_prime_closed(d, d0)) {
                g.flag("N'_" + std::to_string(d0) + " fails at p=" + std::to_string(p));
                return;
            }
            if (closed_form(p, MersenneH{d}, d0).coefficient !=
                mean_square_d0(p, H, d0).coefficient) {
                g.flag("closed M_" + std::to_string(d0) + " != exact at p=" + std::to_string(p));
                return;
            }
        }
        // M_2 via the even-a power-family formula.
        g.count();
        if (closed_form(p, PowerH{2, d}, 2).coefficient != mean_square_d0(p, H, 2).coefficient) {
            g.flag("M_2 power-form fails at p=" + std::to_string(p));
            return;
        }
    });
    return g.done("Mersenne table: S, N', M, M_2, M_3, M_15, N'_105");
}

CheckResult check_power_family(unsigned threads) {
    struct Task {
        long a;
        unsigned d;
    };
    std::vector<Task> tasks;
    for (long a = -10; a <= 10; ++a) {
        if (a == -1 || a == 0 || a == 1) continue;
        for (unsigned d : {3u, 5u, 7u}) tasks.push_back({a, d});
    }
    Gate g;
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        auto [a, d] = tasks[i];
        __int128 f128 = 0, pw = 1;
        for (unsigned k = 0; k < d; ++k) {
            f128 += pw;
            pw *= a;
        }
        if (f128 < 3 || f128 > 10'000'000) return;
        u64 f = static_cast<u64>(f128);
        g.count();
        if (power_family_S_dedekind(a, d) != power_family_S_closed(a, d)) {
            g.flag("power-family S fails at a=" + std::to_string(a) + " d=" + std::to_string(d));
            return;
        }
        u64 am = static_cast<u64>(((a % static_cast<long>(f)) + static_cast<long>(f)) %
                                  static_cast<long>(f));
        if (is_prime(f) && mult_order(am, f) == d) {
            Subgroup H = subgroup_from_generators(f, std::vector<u64>{am});
            g.count();
            if (closed_form(f, PowerH{a, d}, 1).coefficient != mean_square(f, H).coefficient) {
                g.flag("power-family M fails at a=" + std::to_string(a) + " d=" + std::to_string(d));
                return;
            }
            if (f % 2 == 1 &&
                closed_form(f, PowerH{a, d}, 2).coefficient != mean_square_d0(f, H, 2).coefficient) {
                g.flag("power-family M_2 fails at a=" + std::to_string(a) + " d=" + std::to_string(d));
            }
        }
    });
    return g.done("power-form family S and mean squares, a in [-10,10], d in {3,5,7}");
}

CheckResult check_d3_family(u64 f_limit) {
    Gate g;
    for (long a = 1; static_cast<u64>(a) * a <= f_limit; ++a) {
        for (long b = 1; b <= a; ++b) {
            if (std::gcd(a, b) != 1) continue;
            u64 f = static_cast<u64>(a) * a + static_cast<u64>(a) * b + static_cast<u64>(b) * b;
            if (f > f_limit) break;
            if (f <= 3) continue;
            g.count();
            Rational s = rademacher(a, b, static_cast<long>(f));
            Rational want = (Rational::from_u64(f) - Rational(1L)) /
                            (Rational(12L) * Rational::from_u64(f));
            if (s != want) {
                g.flag("s(a,b,f) != (f-1)/12f at a=" + std::to_string(a) + " b=" + std::to_string(b));
                return g.done("d3 family");
            }
            u64 ab = mul_mod(static_cast<u64>(a % static_cast<long>(f)),
                             mod_inverse(static_cast<u64>(b), f), f);
            Subgroup H = subgroup_from_generators(f, std::vector<u64>{ab});
            if (H.order() != 3) {
                g.flag("a/b not of order 3 at f=" + std::to_string(f));
                return g.done("d3 family");
            }
            Rational shf = subgroup_dedekind_sum(H.elements, f);
            if (shf != (Rational::from_u64(f) - Rational(1L)) / Rational(12L) ||
                n_value(f, H).value != Rational(-1L)) {
                g.flag("S(H,f) or N(f,H) fails at f=" + std::to_string(f));
                return g.done("d3 family");
            }
        }
    }
    return g.done("f = a^2+ab+b^2 family: s(a,b,f), S(H,f), N(f,H) = -1, f <= " +
                  std::to_string(f_limit));
}

CheckResult check_d3_tables(long a_limit, unsigned threads) {
    std::vector<long> as;
    for (long a = 2; a <= a_limit; ++a) as.push_back(a);
    for (long a = -a_limit; a <= -3; ++a) as.push_back(a);
    Gate g;
    parallel_for(as.size(), threads, [&](std::size_t i) {
        long a = as[i];
        u64 f = static_cast<u64>(a * a + a + 1);
        if (f <= 3) return;
        u64 am = static_cast<u64>(((a % static_cast<long>(f)) + static_cast<long>(f)) %
                                  static_cast<long>(f));
        Subgroup H = subgroup_from_generators(f, std::vector<u64>{am});
        g.count();
        if (n_d0_primary(f, H, 2) != d3_n_closed(a, 2)) {
            g.flag("N_2 table fails at a=" + std::to_string(a));
            return;
        }
        if (f % 3 != 0) {
            if (n_d0_primary(f, H, 3) != d3_n_closed(a, 3) ||
                n_d0_primary(f, H, 6) != d3_n_closed(a, 6)) {
                g.flag("N_3/N_6 table fails at a=" + std::to_string(a));
                return;
            }
        }
        if (is_prime(f)) {
            if (closed_form(f, D3H{a, 1}, 2).coefficient != mean_square_d0(f, H, 2).coefficient) {
                g.flag("M_2 d3 closed form fails at a=" + std::to_string(a));
                return;
            }
            if (f % 3 != 0 &&
                closed_form(f, D3H{a, 1}, 6).coefficient != mean_square_d0(f, H, 6).coefficient) {
                g.flag("M_6 d3 closed form fails at a=" + std::to_string(a));
            }
        }
    });
    return g.done("a^2+a+1 family N_2/N_3/N_6 tables, |a| <= " + std::to_string(a_limit));
}

CheckResult check_d3_growth(long a_limit, unsigned threads) {
    std::mutex mu;
    double worst = 0;
    Gate g;
    std::vector<long> as;
    for (long a = 2; a <= a_limit; ++a) as.push_back(a);
    parallel_for(as.size(), threads, [&](std::size_t i) {
        long a = as[i];
        u64 f = static_cast<u64>(a * a + a + 1);
        u64 am = static_cast<u64>(a) % f;
        Subgroup H = subgroup_from_generators(f, std::vector<u64>{am});
        double sq = std::sqrt(static_cast<double>(f));
        for (u64 d0 : {1ull, 2ull, 3ull, 6ull}) {
            if (d0 % 3 == 0 && f % 3 == 0) continue;
            g.count();
            double ratio = std::fabs(n_d0_primary(f, H, d0).to_double()) / sq;
            std::lock_guard<std::mutex> lock(mu);
            worst = std::max(worst, ratio);
        }
    });
    if (worst > 2.5) g.flag("|N_d0(f,H)|/sqrt(f) exceeded 2.5: " + std::to_string(worst));
    std::ostringstream extra;
    extra << "max |N_d0|/sqrt(f) = " << worst;
    return g.done("N_d0 = O(sqrt f) monitor over a^2+a+1, a <= " + std::to_string(a_limit),
                  extra.str());
}

CheckResult check_orthogonality(u64 p_limit) {
    Gate g;
    for_primes_in(3, p_limit, [&](u64 p) {
        for (u64 t = 0; t < 8; ++t) {
            u64 a = 1 + splitmix64(p * 131 + t) % (p - 1);
            u64 b = 1 + splitmix64(p * 733 + t) % (p - 1);
            double eps = oracle::epsilon_bruteforce(p, a, b);
            double want = a == b ? 1.0 : (a == p - b ? -1.0 : 0.0);
            g.count();
            if (std::fabs(eps - want) > 1e-9) {
                g.flag("epsilon(a,b) fails at p=" + std::to_string(p));
                return;
            }
        }
        for (u64 d : odd_divisors_geq(p - 1, 3)) {
            if (d > 15) continue;
            Subgroup H = subgroup_of_order(p, d);
            for (u64 t = 0; t < 4; ++t) {
                u64 a = 1 + splitmix64(p * 389 + t) % (p - 1);
                u64 b = 1 + splitmix64(p * 947 + t) % (p - 1);
                double eps = oracle::epsilon_subgroup_bruteforce(p, H, a, b);
                u64 binv = mod_inverse(b, p);
                u64 ab = mul_mod(a, binv, p);
                double want = H.contains(ab) ? 1.0 : (H.contains(p - ab) ? -1.0 : 0.0);
                g.count();
                if (std::fabs(eps - want) > 1e-9) {
                    g.flag("epsilon_H fails at p=" + std::to_string(p) + " d=" + std::to_string(d));
                    return;
                }
            }
        }
    });
    return g.done("orthogonality epsilon and epsilon_H, p <= " + std::to_string(p_limit));
}

CheckResult check_kernel_recovery(u64 p_limit) {
    Gate g;
    for_primes_in(3, p_limit, [&](u64 p) {
        for (u64 d : odd_divisors_geq(p - 1, 1)) {
            Subgroup H = subgroup_of_order(p, d);
            std::vector<Character> odd = characters_trivial_on(p, H, Parity::odd);
            std::vector<Character> all = characters_trivial_on(p, H, Parity::any);
            u64 m = (p - 1) / d;
            g.count();
            if (all.size() != m || odd.size() != m / 2) {
                g.flag("character counts fail at p=" + std::to_string(p) + " d=" + std::to_string(d));
                return;
            }
            if (common_kernel(p, odd) != H.elements) {
                g.flag("kernel recovery fails at p=" + std::to_string(p) + " d=" + std::to_string(d));
                return;
            }
        }
    });
    return g.done("H = common kernel of X_p^-(H), p <= " + std::to_string(p_limit));
}

CheckResult check_meansquare_oracle(u64 p_limit, const std::vector<u64>& d0s, double rel_tol,
                                    unsigned threads) {
    std::vector<u64> primes;
    for_primes_in(3, p_limit, [&](u64 p) { primes.push_back(p); });
    Gate g;
    std::mutex mu;
    double worst = 0;
    parallel_for(primes.size(), threads, [&](std::size_t i) {
        u64 p = primes[i];
        for (u64 d : odd_divisors_geq(p - 1, 1)) {
            Subgroup H = subgroup_of_order(p, d);
            for (u64 d0 : d0s) {
                if (std::gcd(d0, p) != 1) continue;
                g.count();
                double exact = mean_square_d0(p, H, d0).coefficient.to_double() * kPi2d;
                double brute = oracle::mean_square_bruteforce(p, H, d0, oracle::auto_prec(d0 * p));
                double rel = std::fabs(exact - brute) / std::fabs(exact);
                {
                    std::lock_guard<std::mutex> lock(mu);
                    worst = std::max(worst, rel);
                }
                if (rel > rel_tol) {
                    g.flag("oracle mismatch at p=" + std::to_string(p) + " d=" + std::to_string(d) +
                           " d0=" + std::to_string(d0) + " rel=" + std::to_string(rel));
                    return;
                }
            }
        }
    });
    std::ostringstream extra;
    extra << "max rel err = " << worst;
    return g.done("exact vs brute-force mean squares, p <= " + std::to_string(p_limit), extra.str());
}

CheckResult check_l1_two_ways(u64 f_limit) {
    Gate g;
    for (u64 f = 3; f <= f_limit; ++f) {
        for (const Character& chi : characters(f)) {
            if (!chi.is_odd() || !chi.is_primitive()) continue;
            g.count();
            oracle::ComplexVal cot = oracle::l1_cotangent(chi, oracle::FloatPrec{64});
            double tail = 0;
            oracle::ComplexVal ser = oracle::l1_dirichlet_series(chi, 1'000'000, &tail);
            double tol = std::max(1e-8, 4.0 * tail);
            if (std::abs(cot - ser) > tol) {
                g.flag("cotangent vs series fails at f=" + std::to_string(f));
                return g.done("L(1,chi) two ways");
            }
            for (u64 d0 : {2ull, 3ull}) {
                if (std::gcd(d0, f) != 1) continue;
                g.count();
                oracle::ComplexVal a = oracle::l1_induced_direct(chi, d0, oracle::FloatPrec{64});
                oracle::ComplexVal b = oracle::l1_euler_adjusted(chi, d0, oracle::FloatPrec{64});
                if (std::abs(a - b) > 1e-9) {
                    g.flag("induced vs Euler-adjusted fails at f=" + std::to_string(f));
                    return g.done("L(1,chi) two ways");
                }
            }
        }
    }
    return g.done("L(1,chi): cotangent vs series vs Euler factors, f <= " + std::to_string(f_limit));
}

CheckResult check_charsum(u64 f_limit, unsigned threads) {
    std::vector<u64> moduli;
    for (u64 f = 3; f <= f_limit; ++f) moduli.push_back(f);
    Gate g;
    parallel_for(moduli.size(), threads, [&](std::size_t i) {
        u64 f = moduli[i];
        for (const Character& chi : characters(f)) {
            if (!chi.is_primitive()) continue;
            g.count();
            oracle::CheckPair pr = oracle::charsum_identity(chi, oracle::FloatPrec{64});
            if (std::fabs(pr.lhs - pr.rhs) > 1e-6 * static_cast<double>(f) * static_cast<double>(f)) {
                g.flag("charsum identity fails at f=" + std::to_string(f));
                return;
            }
        }
    });
    return g.done("partial-character-sum identity, primitive chi, f <= " + std::to_string(f_limit));
}

CheckResult check_u_fa() {
    Gate g;
    for (u64 d0 : {2ull, 3ull, 6ull}) {
        for (u64 f = 3; f <= 50; ++f) {
            if (std::gcd(d0, f) != 1) continue;
            g.count();
            oracle::CheckPair pr = oracle::u_equals_fa(d0, f);
            if (std::fabs(pr.lhs - pr.rhs) > 1e-6 * std::max(1.0, std::fabs(pr.rhs))) {
                g.flag("U = fA fails at d0=" + std::to_string(d0) + " f=" + std::to_string(f));
                return g.done("U = fA");
            }
        }
    }
    return g.done("U(d0, f) = f A(d0, f), d0 in {2,3,6}, f <= 50");
}

CheckResult check_maxsum(u64 big_p) {
    Gate g;
    g.count();
    if (oracle::sum_of_maxima(1, 2, 5) != 18) g.flag("Ma(1,2,5) != 18");
    for (u64 p : {7ull, 31ull, 101ull}) {
        g.count();
        if (oracle::sum_of_maxima(1, 1, p) != p * (p - 1) / 2 + p)
            g.flag("Ma(1,1,p) formula fails at p=" + std::to_string(p));
    }
    for (auto [q1, q2] : std::vector<std::pair<u64, u64>>{{1, 2}, {2, 3}, {2, 4}, {3, 5}}) {
        g.count();
        double ratio = static_cast<double>(oracle::sum_of_maxima(q1, q2, big_p)) /
                       (static_cast<double>(big_p) * static_cast<double>(big_p));
        u64 gc = std::gcd(q1, q2);
        double want = 2.0 / 3.0 - static_cast<double>(gc * gc) / (12.0 * q1 * q2);
        if (std::fabs(ratio / want - 1.0) > 0.01)
            g.flag("Ma asymptotic off by >1% at (" + std::to_string(q1) + "," + std::to_string(q2) +
                   ")");
    }
    return g.done("sums of maxima: exact values and asymptotic at p = " + std::to_string(big_p));
}

CheckResult check_twisted_oracle(u64 p_limit) {
    Gate g;
    for_primes_in(5, p_limit, [&](u64 p) {
        for (auto [q1, q2] : std::vector<std::pair<u64, u64>>{{1, 2}, {2, 3}, {3, 5}, {2, 6}}) {
            if (q1 % p == 0 || q2 % p == 0) continue;
            g.count();
            double exact = twisted_moment(q1, q2, p).float_value;
            double brute = oracle::twisted_moment_bruteforce(p, q1, q2, oracle::FloatPrec{64});
            if (std::fabs(exact - brute) > 1e-8 * std::max(1.0, std::fabs(exact)))
                g.flag("twisted oracle fails at p=" + std::to_string(p));
        }
    });
    return g.done("twisted moment vs character average, p <= " + std::to_string(p_limit));
}

std::vector<CheckResult> verify_suite(const std::string& suite, const VerifyOptions& opts) {
    const bool ext = opts.extended;
    const unsigned th = opts.threads;
    std::vector<CheckResult> out;
    auto add = [&](CheckResult r) { out.push_back(std::move(r)); };
    bool all = suite == "all";
    if (suite == "reciprocity" || all) {
        add(check_fast_naive_equivalence(ext ? 1000 : 400, th));
        add(check_reciprocity(ext ? 2000 : 600, th));
        add(check_three_term(ext ? 10'000 : 3000, th));
        add(check_inversion(ext ? 400 : 150));
        add(check_sign_rules(ext ? 300 : 120));
        add(check_s_bound(ext ? 500 : 200));
    }
    if (suite == "formulas" || all) {
        add(check_trivial_product_forms(ext ? 300 : 150));
        add(check_two_path(ext ? 5000 : 300, ext ? 0 : 2000, ext ? 0 : 60, th));
        add(check_n_identities(th));
        add(check_n_integrality(ext ? 300 : 150));
        add(check_pi_formula(ext ? 500 : 200, th));
        add(check_pi_bounds(ext ? 500 : 200));
        add(check_a_values());
        add(check_restriction_identity());
        add(check_twisted_reductions(ext ? 500 : 150));
    }
    if (suite == "mersenne" || all) {
        add(check_mersenne_tables(th));
        add(check_power_family(th));
    }
    if (suite == "d3" || all) {
        add(check_d3_family(ext ? 100'000 : 20'000));
        add(check_d3_tables(ext ? 300 : 120, th));
        add(check_d3_growth(ext ? 300 : 120, th));
    }
    if (suite == "oracle" || all) {
        add(check_orthogonality(ext ? 200 : 80));
        add(check_kernel_recovery(ext ? 200 : 100));
        add(check_meansquare_oracle(ext ? 500 : 100, {1, 2, 3, 6, 15}, 1e-8, th));
        add(check_l1_two_ways(ext ? 40 : 20));
        add(check_charsum(ext ? 200 : 80, th));
        add(check_u_fa());
        add(check_maxsum(ext ? 99'991 : 9973));
        add(check_twisted_oracle(ext ? 100 : 50));
    }
    if (out.empty()) fail(errc::bad_argument, "unknown verify suite: " + suite);
    return out;
}

} // namespace dedelab
