#include "dedelab/oracle.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "dedelab/error.hpp"
#include "dedelab/moments.hpp"

namespace dedelab {
namespace oracle {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

std::vector<long double> cot_table(u64 modulus) {
    std::vector<long double> cot(modulus, 0.0L);
    for (u64 a = 1; a < modulus; ++a)
        cot[a] = 1.0L / std::tan(kPi * static_cast<long double>(a) / static_cast<long double>(modulus));
    return cot;
}

// chi' values along a in [1, F), F = d0 * f: chi(a mod f), zeroed on
// gcd(a, d0) > 1.  Summed against cot(pi a / F).
template <class Real>
std::complex<Real> l1_induced_sum(const Character& chi, u64 d0) {
    const u64 f = chi.modulus();
    const u64 F = d0 * f;
    const CharacterGroup& g = chi.group();
    std::complex<Real> sum{};
    for (u64 a = 1; a < F; ++a) {
        if (d0 > 1 && std::gcd(a % d0, d0) != 1) continue;
        auto k = g.chi_exponent(chi.exponents(), a % f);
        if (!k) continue;
        Real cot = static_cast<Real>(
            1.0L / std::tan(kPi * static_cast<long double>(a) / static_cast<long double>(F)));
        if constexpr (std::is_same_v<Real, long double>) {
            sum += chi.group().root_ld(*k) * cot;
        } else {
            std::complex<double> r = chi.group().root(*k);
            sum += std::complex<Real>(static_cast<Real>(r.real()), static_cast<Real>(r.imag())) * cot;
        }
    }
    const Real scale = static_cast<Real>(kPi / (2.0L * static_cast<long double>(F)));
    return sum * scale;
}

ComplexVal to_double(std::complex<long double> z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

void require_odd(const Character& chi) {
    if (!chi.is_odd()) fail(errc::even_character, "L(1, chi) evaluators need an odd character");
}

} // namespace

ComplexVal l1_cotangent(const Character& chi, FloatPrec prec) {
    require_odd(chi);
    if (prec.extended()) return to_double(l1_induced_sum<long double>(chi, 1));
    return l1_induced_sum<double>(chi, 1);
}

ComplexVal l1_induced_direct(const Character& chi, u64 d0, FloatPrec prec) {
    require_odd(chi);
    if (std::gcd(d0, chi.modulus()) != 1)
        fail(errc::not_coprime_moduli, "induced character needs gcd(d0, f) = 1");
    if (prec.extended()) return to_double(l1_induced_sum<long double>(chi, d0));
    return l1_induced_sum<double>(chi, d0);
}

ComplexVal l1_euler_adjusted(const Character& chi, u64 d0, FloatPrec prec) {
    require_odd(chi);
    if (std::gcd(d0, chi.modulus()) != 1)
        fail(errc::not_coprime_moduli, "induced character needs gcd(d0, f) = 1");
    ComplexVal value = l1_cotangent(chi, prec);
    for (const auto& [q, e] : factorize(d0).factors) {
        (void)e;
        value *= 1.0 - chi.value(q % chi.modulus()) / static_cast<double>(q);
    }
    return value;
}

ComplexVal l1_dirichlet_series(const Character& chi, u64 terms, double* tail_bound) {
    require_odd(chi);
    const u64 f = chi.modulus();
    // Whole periods only, so the zeroth-order tail term cancels exactly.
    u64 periods = std::max<u64>(terms / f, 2);
    const u64 N = periods * f;
    std::complex<long double> sum{};
    for (u64 n = 1; n <= N; ++n) {
        auto k = chi.value_exponent(n % f);
        if (!k) continue;
        sum += chi.group().root_ld(*k) / static_cast<long double>(n);
    }
    // First-order tail: sum_{k>=K} sum_a chi(a)/(kf+a)
    //   = -sigma/f^2 sum_{k>=K} 1/k^2 + E, |E| <= sum_{k>=K} 1/k^3,
    // with sigma = sum_a chi(a) a.
    std::complex<long double> sigma{};
    for (u64 a = 1; a < f; ++a) {
        auto k = chi.value_exponent(a);
        if (k) sigma += chi.group().root_ld(*k) * static_cast<long double>(a);
    }
    const long double K = static_cast<long double>(periods);
    const long double sum_k2 = 1.0L / K + 1.0L / (2.0L * K * K) + 1.0L / (6.0L * K * K * K);
    sum -= sigma / static_cast<long double>(f) / static_cast<long double>(f) * sum_k2;
    if (tail_bound) {
        long double e_cubic = 1.0L / (2.0L * (K - 1.0L) * (K - 1.0L));
        long double e_sumk2 = std::abs(sigma) / (static_cast<long double>(f) * f) / (K * K * K);
        *tail_bound = static_cast<double>(e_cubic + e_sumk2);
    }
    return to_double(sum);
}

double mean_square_bruteforce(u64 f, const Subgroup& H, u64 d0, FloatPrec prec) {
    if (f > 20'000) fail(errc::modulus_too_large_for_oracle, "brute-force mean square capped at f <= 20000");
    if (H.contains_minus_one()) fail(errc::minus_one_in_subgroup, "mean square needs -1 not in H");
    if (std::gcd(d0, f) != 1) fail(errc::not_coprime_moduli, "mean square needs gcd(d0, f) = 1");
    std::vector<Character> chars = characters_trivial_on(f, H, Parity::odd);
    const u64 F = d0 * f;
    std::vector<long double> cot = cot_table(F);
    // Only units mod d0*f contribute; cache their chi-exponent inputs.
    std::vector<u64> units;
    units.reserve(F);
    for (u64 a = 1; a < F; ++a)
        if (std::gcd(a, F) == 1) units.push_back(a);
    const CharacterGroup& g = chars.front().group();
    long double acc = 0.0L;
    const long double scale = kPi / (2.0L * static_cast<long double>(F));
    for (const Character& chi : chars) {
        if (prec.extended()) {
            std::complex<long double> sum{};
            for (u64 a : units) sum += g.root_ld(*g.chi_exponent(chi.exponents(), a % f)) * cot[a];
            sum *= scale;
            acc += sum.real() * sum.real() + sum.imag() * sum.imag();
        } else {
            std::complex<double> sum{};
            for (u64 a : units)
                sum += g.root(*g.chi_exponent(chi.exponents(), a % f)) * static_cast<double>(cot[a]);
            sum *= static_cast<double>(scale);
            acc += static_cast<long double>(sum.real()) * sum.real() +
                   static_cast<long double>(sum.imag()) * sum.imag();
        }
    }
    return static_cast<double>(acc / static_cast<long double>(chars.size()));
}

CheckPair charsum_identity(const Character& chi, FloatPrec prec) {
    if (!chi.is_primitive()) fail(errc::not_primitive, "identity applies to primitive characters");
    const u64 f = chi.modulus();
    if (f <= 2) fail(errc::bad_argument, "identity needs modulus > 2");
    std::complex<long double> partial{};
    long double lhs = 0.0L;
    for (u64 k = 1; k <= f - 1; ++k) {
        auto e = chi.value_exponent(k % f);
        if (e) partial += chi.group().root_ld(*e);
        lhs += partial.real() * partial.real() + partial.imag() * partial.imag();
    }
    long double prod = 1.0L;
    for (const auto& [p, e] : factorize(f).factors) {
        (void)e;
        prod *= 1.0L - 1.0L / (static_cast<long double>(p) * p);
    }
    long double rhs = static_cast<long double>(f) * f / 12.0L * prod;
    if (chi.is_odd()) {
        ComplexVal l1 = l1_cotangent(chi, prec);
        long double l1sq = static_cast<long double>(l1.real()) * l1.real() +
                           static_cast<long double>(l1.imag()) * l1.imag();
        rhs += static_cast<long double>(f) * f / (kPi * kPi) * l1sq;
    }
    return {static_cast<double>(lhs), static_cast<double>(rhs)};
}

u64 sum_of_maxima(u64 q1, u64 q2, u64 p) {
    if (!is_prime(p)) fail(errc::not_prime, "sum of maxima is defined over a prime modulus");
    // Representative of 0 is p itself (range [1, p]).
    auto rep = [p](u64 v) { return v == 0 ? p : v; };
    u64 r1 = 0, r2 = 0, total = 0;
    const u64 s1 = q1 % p, s2 = q2 % p;
    for (u64 x = 1; x <= p; ++x) {
        r1 += s1;
        if (r1 >= p) r1 -= p;
        r2 += s2;
        if (r2 >= p) r2 -= p;
        total += std::max(rep(r1), rep(r2));
    }
    return total;
}

CheckPair u_equals_fa(u64 d0, u64 f) {
    if (d0 < 2 || !is_squarefree(d0)) fail(errc::not_square_free, "d0 must be squarefree and > 1");
    if (std::gcd(d0, f) != 1) fail(errc::not_coprime_moduli, "U(d0, f) needs gcd(d0, f) = 1");
    const u64 F = d0 * f;
    if (F > 100'000) fail(errc::modulus_too_large_for_oracle, "U check capped at d0*f <= 1e5");
    std::vector<long double> cot = cot_table(F);
    std::vector<u64> fibre = lift_residues(f, d0, std::vector<u64>{1});
    long double u = 0.0L;
    for (u64 h : fibre) {
        if (h == 1) continue;
        for (u64 n = 1; n < F; ++n) {
            if (std::gcd(n % d0, d0) != 1) continue;
            u += 1.0L + cot[n] * cot[mul_mod(n, h, F)];
        }
    }
    Rational fa = Rational::from_u64(f) * a_value(d0, f % d0);
    return {static_cast<double>(u), fa.to_double()};
}

double epsilon_bruteforce(u64 p, u64 a, u64 b) {
    std::vector<Character> chars = characters_trivial_on(p, trivial_subgroup(p), Parity::odd);
    std::complex<long double> sum{};
    for (const Character& chi : chars) sum += chi.value_ld(a % p) * std::conj(chi.value_ld(b % p));
    return static_cast<double>(sum.real() * 2.0L / static_cast<long double>(p - 1));
}

double epsilon_subgroup_bruteforce(u64 p, const Subgroup& H, u64 a, u64 b) {
    std::vector<Character> chars = characters_trivial_on(p, H, Parity::odd);
    std::complex<long double> sum{};
    for (const Character& chi : chars) sum += chi.value_ld(a % p) * std::conj(chi.value_ld(b % p));
    return static_cast<double>(sum.real() / static_cast<long double>(chars.size()));
}

double twisted_moment_bruteforce(u64 p, u64 q1, u64 q2, FloatPrec prec) {
    std::vector<Character> chars = characters_trivial_on(p, trivial_subgroup(p), Parity::odd);
    std::complex<long double> acc{};
    for (const Character& chi : chars) {
        ComplexVal v = l1_cotangent(chi, prec);
        long double l1sq = static_cast<long double>(v.real()) * v.real() +
                           static_cast<long double>(v.imag()) * v.imag();
        acc += chi.value_ld(q1 % p) * std::conj(chi.value_ld(q2 % p)) * l1sq;
    }
    return static_cast<double>(acc.real() * 2.0L / static_cast<long double>(p - 1));
}

} // namespace oracle
} // namespace dedelab
