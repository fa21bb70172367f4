#include "dedelab/moments.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include "dedelab/dedekind.hpp"
#include "dedelab/error.hpp"

namespace dedelab {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

long as_long(u64 v, const char* what) {
    if (v > static_cast<u64>(std::numeric_limits<long>::max())) fail(errc::input_too_large, what);
    return static_cast<long>(v);
}

u64 checked_mul(u64 a, u64 b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    if (p > ~0ull) fail(errc::input_too_large, "modulus product exceeds 64 bits");
    return static_cast<u64>(p);
}

void require_squarefree_coprime(u64 d0, u64 f) {
    if (d0 == 0 || !is_squarefree(d0)) fail(errc::not_square_free, "d0 must be squarefree");
    if (std::gcd(d0, f) != 1) fail(errc::not_coprime_moduli, "need gcd(d0, f) = 1");
}

} // namespace

MomentResult make_moment(Rational coeff, Formula source) {
    MomentResult r;
    r.float_value = coeff.to_double() * kPi2;
    r.coefficient = std::move(coeff);
    r.provenance = source;
    return r;
}

Rational subgroup_dedekind_sum(std::span<const u64> elements, u64 f) {
    Rational acc;
    long fl = as_long(f, "subgroup sum modulus");
    for (u64 h : elements) acc += dedekind_fast(static_cast<long>(h % f), fl);
    return acc;
}

Rational subgroup_dedekind_sum_prime(std::span<const u64> elements, u64 f, u64 excluded_unit_mod) {
    Rational acc;
    long fl = as_long(f, "subgroup sum modulus");
    for (u64 h : elements) {
        if (h % excluded_unit_mod == 1) continue;
        acc += dedekind_fast(static_cast<long>(h % f), fl);
    }
    return acc;
}

MomentResult mean_square(u64 f, const Subgroup& H) {
    if (f < 3) fail(errc::bad_argument, "mean square needs modulus > 2");
    if (H.modulus != f) fail(errc::bad_argument, "subgroup modulus mismatch");
    if (H.contains_minus_one()) fail(errc::minus_one_in_subgroup, "mean square needs -1 not in H");
    Rational sum;
    for (const auto& [delta, mu] : squarefree_divisors_mu(factorize(f))) {
        Rational part = subgroup_dedekind_sum(H.elements, f / delta);
        sum += Rational(2 * mu, as_long(delta, "divisor")) * part;
    }
    return make_moment(sum / Rational::from_u64(f), Formula::general_lift);
}

MomentResult mean_square_d0_lift(u64 f, const Subgroup& H, u64 d0) {
    require_squarefree_coprime(d0, f);
    LiftedSubgroup L = lift_subgroup(H, d0);
    MomentResult m = mean_square(checked_mul(d0, f), L.group);
    m.provenance = Formula::general_lift;
    return m;
}

MomentResult mean_square_d0_prime(u64 p, const Subgroup& H, u64 d0) {
    require_squarefree_coprime(d0, p);
    if (!is_prime(p)) fail(errc::not_prime, "prime-split path needs a prime modulus");
    if (H.contains_minus_one()) fail(errc::minus_one_in_subgroup, "mean square needs -1 not in H");
    // (2 mu(d0) phi(d0) / (d0^2 p)) sum_{delta | d0} delta mu(delta)/phi(delta) S(H_delta, delta p)
    Rational sum;
    for (const auto& [delta, mu] : squarefree_divisors_mu(factorize(d0))) {
        LiftedSubgroup L = lift_subgroup(H, delta);
        Rational s = subgroup_dedekind_sum(L.group.elements, checked_mul(delta, p));
        sum += Rational(static_cast<long>(delta) * mu, static_cast<long>(euler_phi(delta))) * s;
    }
    long mu0 = moebius(d0);
    Rational front(2 * mu0 * static_cast<long>(euler_phi(d0)), 1);
    front /= Rational::from_u64(d0) * Rational::from_u64(d0) * Rational::from_u64(p);
    MomentResult r = make_moment(front * sum, Formula::prime_split);
    return r;
}

MomentResult mean_square_d0(u64 f, const Subgroup& H, u64 d0) {
    if (d0 == 1) {
        return mean_square(f, H);
    }
    if (is_prime(f)) {
        MomentResult a = mean_square_d0_prime(f, H, d0);
        MomentResult b = mean_square_d0_lift(f, H, d0);
        if (a.coefficient != b.coefficient)
            throw std::logic_error("mean square: prime-split and lift paths disagree");
        return a;
    }
    return mean_square_d0_lift(f, H, d0);
}

NValue n_value(u64 f, const Subgroup& H) {
    Rational sp = subgroup_dedekind_sum_prime(H.elements, f, f);
    Rational n = Rational(-3L) + Rational(2, as_long(f, "modulus")) + Rational(12L) * sp;
    return {std::move(n), NKind::n};
}

Rational n_d0_primary(u64 f, const Subgroup& H, u64 d0) {
    require_squarefree_coprime(d0, f);
    LiftedSubgroup L = lift_subgroup(H, d0);
    Rational sum;
    Rational b(1L);
    for (const auto& [q, e] : factorize(d0).factors) {
        (void)e;
        b *= Rational(static_cast<long>(q) * static_cast<long>(q) - 1, 1);
    }
    for (const auto& [delta, mu] : squarefree_divisors_mu(factorize(d0))) {
        Rational s = subgroup_dedekind_sum(L.group.elements, checked_mul(delta, f));
        sum += Rational(static_cast<long>(delta) * mu, 1) * s;
    }
    return Rational(-as_long(f, "modulus"), 1) +
           Rational(12 * moebius(d0), 1) / b * sum;
}

namespace {

Rational plus_one_product(u64 d0) {
    Rational prod(1L);
    for (const auto& [q, e] : factorize(d0).factors) {
        (void)e;
        prod *= Rational(static_cast<long>(q) + 1, 1);
    }
    return prod;
}

} // namespace

Rational n_d0_bis(u64 f, const Subgroup& H, u64 d0) {
    require_squarefree_coprime(d0, f);
    Rational sum;
    for (const auto& [delta, mu] : squarefree_divisors_mu(factorize(d0))) {
        LiftedSubgroup L = lift_subgroup(H, delta);
        Rational s = subgroup_dedekind_sum(L.group.elements, checked_mul(delta, f));
        sum += Rational(static_cast<long>(delta) * mu, static_cast<long>(euler_phi(delta))) * s;
    }
    return Rational(-as_long(f, "modulus"), 1) +
           Rational(12 * moebius(d0), 1) / plus_one_product(d0) * sum;
}

Rational n_d0_ter(u64 f, const Subgroup& H, u64 d0) {
    require_squarefree_coprime(d0, f);
    Rational sum;
    for (const auto& [delta, mu] : squarefree_divisors_mu(factorize(d0))) {
        LiftedSubgroup L = lift_subgroup(H, delta);
        Rational s = subgroup_dedekind_sum_prime(L.group.elements, checked_mul(delta, f), f);
        sum += Rational(static_cast<long>(delta) * mu, static_cast<long>(euler_phi(delta))) * s;
    }
    return n_d0_primary(f, trivial_subgroup(f), d0) +
           Rational(12 * moebius(d0), 1) / plus_one_product(d0) * sum;
}

NValue n_d0_value(u64 f, const Subgroup& H, u64 d0) {
    return {n_d0_primary(f, H, d0), NKind::n_d0};
}

NValue n_prime_d0_value(u64 f, const Subgroup& H, u64 d0) {
    Rational n = n_d0_primary(f, H, d0);
    Rational np = (n - Rational(2L) * Rational::from_u64(f)) / Rational(3L);
    return {std::move(np), NKind::n_prime_d0};
}

Rational kappa_coeff(u64 d0) {
    Rational prod(1, 6);
    for (const auto& [q, e] : factorize(d0).factors) {
        (void)e;
        long ql = static_cast<long>(q);
        prod *= Rational(ql * ql - 1, ql * ql);
    }
    return prod;
}

// --- closed forms -------------------------------------------------------

namespace {

Rational product_over_primes(u64 n, const std::function<Rational(u64)>& factor) {
    Rational prod(1L);
    for (const auto& [q, e] : factorize(n).factors) {
        (void)e;
        prod *= factor(q);
    }
    return prod;
}

// M(f, {1}): (1/6) { prod (1 - 1/q^2) - (3/f) prod (1 - 1/q) }.
Rational trivial_m1_coeff(u64 f) {
    Rational p2 = product_over_primes(f, [](u64 q) {
        long ql = static_cast<long>(q);
        return Rational(ql * ql - 1, ql * ql);
    });
    Rational p1 = product_over_primes(f, [](u64 q) {
        long ql = static_cast<long>(q);
        return Rational(ql - 1, ql);
    });
    return (p2 - Rational(3L) / Rational::from_u64(f) * p1) / Rational(6L);
}

// M_2(f, {1}) for odd f: (1/8) { prod (1 - 1/q^2) - (1/f) prod (1 - 1/q) }.
Rational trivial_m2_coeff(u64 f) {
    Rational p2 = product_over_primes(f, [](u64 q) {
        long ql = static_cast<long>(q);
        return Rational(ql * ql - 1, ql * ql);
    });
    Rational p1 = product_over_primes(f, [](u64 q) {
        long ql = static_cast<long>(q);
        return Rational(ql - 1, ql);
    });
    return (p2 - p1 / Rational::from_u64(f)) / Rational(8L);
}

int pm_one_sign(u64 n, u64 d0) {
    u64 r = n % d0;
    if (r == 1 % d0) return 1;
    if (r == d0 - 1) return -1;
    return 0;
}

// Requires every q | f to be +-1 (mod d0); d0 > 2 squarefree, gcd(d0,f)=1.
Rational pm_one_coeff(u64 f, u64 d0) {
    int ef = pm_one_sign(f, d0);
    if (ef == 0) fail(errc::family_not_covered, "f is not +-1 mod d0");
    Rational c(3L);
    for (const auto& [q, e] : factorize(d0).factors) {
        (void)e;
        c *= Rational(static_cast<long>(q) - 1, static_cast<long>(q) + 1);
    }
    Rational p2(1L), p1(1L), pe(1L);
    for (const auto& [q, e] : factorize(f).factors) {
        (void)e;
        int eq = pm_one_sign(q, d0);
        if (eq == 0) fail(errc::family_not_covered, "prime divisor of f is not +-1 mod d0");
        long ql = static_cast<long>(q);
        p2 *= Rational(ql * ql - 1, ql * ql);
        p1 *= Rational(ql - 1, ql);
        pe *= Rational(ql - eq, ql);
    }
    Rational inner = p2 - c / Rational::from_u64(f) * p1 +
                     Rational(ef, 1) * (c - Rational(1L)) / Rational::from_u64(f) * pe;
    return kappa_coeff(d0) * inner;
}

bool power_form_modulus(long a, unsigned d, u64& f_out) {
    // f = (a^d - 1)/(a - 1) for odd d >= 3, a not in {-1, 0, 1}
    if (a == -1 || a == 0 || a == 1 || d < 3 || d % 2 == 0) return false;
    __int128 f = 0, pw = 1;
    for (unsigned k = 0; k < d; ++k) {
        f += pw;
        pw *= a;
        if (f > static_cast<__int128>(~0ull) || f < -static_cast<__int128>(~0ull)) return false;
    }
    if (f < 3) return false;
    f_out = static_cast<u64>(f);
    return true;
}

} // namespace

Rational mersenne_n_prime_closed(unsigned d, u64 d0) {
    if (d < 2 || d % 2 == 0) fail(errc::family_not_covered, "Mersenne family needs odd d > 1");
    u64 f = (1ull << d) - 1;
    if (std::gcd(f, d0) != 1) fail(errc::family_not_covered, "gcd(2^d - 1, d0) > 1");
    long dl = static_cast<long>(d);
    long eps = (d % 4 == 1) ? 1 : -1;
    switch (d0) {
        case 1:
            return Rational(-2 * dl + 1, 1);
        case 3:
            return Rational(-dl, 1);
        case 5:
            return Rational(-4 * dl, 3) + Rational(1 + eps, 6);
        case 15:
            return Rational(-(32 + 15 * eps) * dl, 48) + Rational(1 - 2 * eps, 48);
        case 105:
            switch (d % 12) {
                case 1: return Rational(-(437 * dl + 139), 576);
                case 5: return Rational(-(535 * dl - 644), 576);
                case 7: return Rational(-(97 * dl - 324), 576);
                case 11: return Rational(-(195 * dl + 13), 576);
                default: fail(errc::family_not_covered, "d mod 12 incompatible with d0 = 105");
            }
        default:
            fail(errc::family_not_covered, "no tabulated Mersenne formula for this d0");
    }
}

Rational d3_n_closed(long a, u64 d0) {
    __int128 f128 = static_cast<__int128>(a) * a + a + 1;
    if (f128 <= 3) fail(errc::family_not_covered, "need f = a^2 + a + 1 > 3");
    u64 f = static_cast<u64>(f128);
    long am6 = ((a % 6) + 6) % 6;
    switch (d0) {
        case 1:
            return Rational(-1L);
        case 2:
            return a % 2 == 0 ? Rational(-(2 * a + 1), 1) : Rational(2 * a + 1, 1);
        case 3:
            if (f % 3 == 0) fail(errc::family_not_covered, "3 divides f");
            return am6 % 3 == 0 ? Rational(-(2 * a + 1), 1) : Rational(2 * a + 1, 1);
        case 6:
            if (f % 3 == 0) fail(errc::family_not_covered, "3 divides f");
            switch (am6) {
                case 0: return Rational(-(2 * a + 1), 1);
                case 2:
                case 3: return Rational(-3L);
                case 5: return Rational(2 * a + 1, 1);
                default: fail(errc::family_not_covered, "a mod 6 incompatible");
            }
        default:
            fail(errc::family_not_covered, "d3 family tabulated for d0 in {1, 2, 3, 6}");
    }
}

Rational power_family_S_closed(long a, unsigned d) {
    u64 f;
    if (!power_form_modulus(a, d, f)) fail(errc::family_not_covered, "not a power-form modulus");
    Rational front(a + 1, a - 1);
    return front * (Rational::from_u64(f) - Rational((static_cast<long>(d) - 1) * a + 1, 1)) / Rational(12L);
}

Rational power_family_S_dedekind(long a, unsigned d) {
    u64 f;
    if (!power_form_modulus(a, d, f)) fail(errc::family_not_covered, "not a power-form modulus");
    long fl = as_long(f, "power-form modulus");
    Rational acc;
    long x = 1;
    for (unsigned k = 0; k < d; ++k) {
        acc += dedekind_fast(x, fl);
        __int128 nx = static_cast<__int128>(x) * a % fl;
        x = static_cast<long>(nx < 0 ? nx + fl : nx);
    }
    return acc;
}

MomentResult closed_form(u64 f, const HKind& kind, u64 d0) {
    if (f < 3) fail(errc::bad_argument, "closed forms need modulus > 2");
    if (std::holds_alternative<TrivialH>(kind)) {
        if (d0 == 1) return make_moment(trivial_m1_coeff(f), Formula::trivial_product);
        require_squarefree_coprime(d0, f);
        if (d0 == 2) {
            if (f % 2 == 0) fail(errc::family_not_covered, "M_2 formula needs odd f");
            return make_moment(trivial_m2_coeff(f), Formula::trivial_product_2);
        }
        return make_moment(pm_one_coeff(f, d0), Formula::pm_one_product);
    }
    if (const auto* mh = std::get_if<MersenneH>(&kind)) {
        if (mh->d >= 64) fail(errc::input_too_large, "2^d - 1 exceeds 64 bits");
        u64 expect = (1ull << mh->d) - 1;
        if (expect != f || !is_prime(f)) fail(errc::family_not_covered, "modulus is not this Mersenne prime");
        Rational np = mersenne_n_prime_closed(mh->d, d0);
        Rational coeff = kappa_coeff(d0) * Rational(3L) *
                         (Rational(1L) + np / Rational::from_u64(f));
        return make_moment(coeff, Formula::mersenne_table);
    }
    if (const auto* ph = std::get_if<PowerH>(&kind)) {
        u64 expect;
        if (!power_form_modulus(ph->a, ph->d, expect) || expect != f || !is_prime(f))
            fail(errc::family_not_covered, "modulus is not this prime power-form value");
        long a = ph->a;
        long dl = static_cast<long>(ph->d);
        if (d0 == 1) {
            Rational coeff = Rational(1, 6) * Rational(a + 1, a - 1) *
                             (Rational(1L) - Rational((dl - 1) * a + 1, 1) / Rational::from_u64(f));
            return make_moment(coeff, Formula::power_family);
        }
        if (d0 == 2) {
            Rational coeff;
            if (a % 2 != 0) {
                coeff = Rational(1, 8) * Rational(a + 1, a - 1) *
                        (Rational(1L) - Rational(dl, 1) / Rational::from_u64(f));
            } else {
                coeff = Rational(1, 8) *
                        (Rational(1L) - Rational((dl - 1) * a + 1, 1) / Rational::from_u64(f));
            }
            return make_moment(coeff, Formula::power_family);
        }
        fail(errc::family_not_covered, "power family tabulated for d0 in {1, 2}");
    }
    const auto& d3 = std::get<D3H>(kind);
    __int128 expect = static_cast<__int128>(d3.a) * d3.a +
                      static_cast<__int128>(d3.a) * d3.b + static_cast<__int128>(d3.b) * d3.b;
    if (expect <= 3 || static_cast<u64>(expect) != f || std::gcd(d3.a, d3.b) != 1)
        fail(errc::family_not_covered, "modulus is not a^2 + ab + b^2 with coprime a, b");
    if (!is_prime(f)) fail(errc::family_not_covered, "d3 mean square formulas need a prime modulus");
    if (d0 == 1)
        return make_moment(Rational(1, 6) * (Rational(1L) - Rational(1L) / Rational::from_u64(f)),
                           Formula::d3_family);
    long a = d3.a;
    if (d3.b != 1) {
        if (d3.a == 1)
            a = d3.b;
        else
            fail(errc::family_not_covered, "d0 > 1 closed forms cover the b = 1 family");
    }
    Rational n = d3_n_closed(a, d0);
    Rational coeff = kappa_coeff(d0) * (Rational(1L) + n / Rational::from_u64(f));
    return make_moment(coeff, Formula::d3_family);
}

MomentResult twisted_moment(u64 q1, u64 q2, u64 p) {
    if (!is_prime(p)) fail(errc::not_prime, "twisted moment needs a prime modulus");
    if (q1 % p == 0 || q2 % p == 0) fail(errc::not_coprime, "twist residues must be units");
    Rational s = rademacher(as_long(q1, "q1"), as_long(q2, "q2"), as_long(p, "p"));
    return make_moment(Rational(2, as_long(p, "p")) * s, Formula::twisted);
}

EulerProduct euler_product(u64 f, const Subgroup& H, u64 d0) {
    require_squarefree_coprime(d0, f);
    if (H.contains_minus_one()) fail(errc::minus_one_in_subgroup, "Euler product needs -1 not in H");
    const u64 d = H.order();
    const u64 phi = euler_phi(f);
    const u64 m = phi / d;
    Rational pi(1L);
    for (const auto& [q, e] : factorize(d0).factors) {
        (void)e;
        u64 qm = q % f;
        u64 g = 1;
        u64 x = qm;
        while (!H.contains(x)) {
            x = mul_mod(x, qm, f);
            ++g;
        }
        bool split_case = false;
        if (g % 2 == 0) {
            u64 qg2 = pow_mod(qm, g / 2, f);
            split_case = H.contains(f - qg2);
        }
        if (split_case) {
            // (1 + q^{-g/2})^{phi/(d g)}
            if (phi % (d * g) != 0) throw std::logic_error("euler_product: exponent not integral");
            Rational base = Rational(1L) + Rational(1L) / Rational::int_pow(q, g / 2);
            pi *= Rational::pow(base, static_cast<long>(phi / (d * g)));
        } else {
            // (1 - q^{-g})^{phi/(2 d g)}
            if (phi % (2 * d * g) != 0) throw std::logic_error("euler_product: exponent not integral");
            Rational base = Rational(1L) - Rational(1L) / Rational::int_pow(q, g);
            pi *= Rational::pow(base, static_cast<long>(phi / (2 * d * g)));
        }
    }
    EulerProduct out;
    out.d_value = std::exp(4.0 / static_cast<double>(m) * pi.log_abs());
    out.pi_value = std::move(pi);
    return out;
}

double pi_lower_bound(u64 p, u64 d0) {
    if (!is_prime(p) || d0 % p == 0) fail(errc::not_prime, "bound needs a prime p not dividing d0");
    double x = static_cast<double>(p) + 1.0;
    double F = (x - 2.0) * std::log1p(-1.0 / x) / std::log(x);
    return std::exp(0.5 * std::log(static_cast<double>(d0)) * F);
}

namespace {

std::string decimal_from_log(double natural_log) {
    double log10v = natural_log / std::numbers::ln10;
    double ip = std::floor(log10v);
    double mant = std::pow(10.0, log10v - ip);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4fe%+d", mant, static_cast<int>(ip));
    return buf;
}

} // namespace

ClassNumberBound class_number_bound(u64 p, u64 d, u64 d0, BoundMode mode, oracle::FloatPrec prec) {
    if (!is_prime(p)) fail(errc::not_prime, "class number bound needs a prime conductor");
    if (d % 2 == 0) fail(errc::degree_parity, "subgroup order d must be odd");
    if ((p - 1) % d != 0) fail(errc::order_does_not_divide, "d must divide p - 1");
    Subgroup H = subgroup_of_order(p, d);
    ClassNumberBound out;
    out.m = (p - 1) / d;
    out.w_k = d == 1 ? 2 * p : 2;
    const double quarter_m = static_cast<double>(out.m) / 4.0;
    const double log_w = std::log(static_cast<double>(out.w_k));
    switch (mode) {
        case BoundMode::plain: {
            MomentResult m1 = mean_square(p, H);
            out.bound_log = log_w + quarter_m * (std::log(static_cast<double>(p)) +
                                                 m1.coefficient.log_abs() - std::log(4.0));
            break;
        }
        case BoundMode::euler: {
            MomentResult md0 = mean_square_d0(p, H, d0);
            EulerProduct ep = euler_product(p, H, d0);
            out.bound_log = log_w + quarter_m * (std::log(static_cast<double>(p)) +
                                                 md0.coefficient.log_abs() - std::log(4.0)) -
                            ep.pi_value.log_abs();
            break;
        }
        case BoundMode::exact_product: {
            EulerProduct ep = euler_product(p, H, d0);
            double sum_log_l = 0;
            for (const Character& chi : characters_trivial_on(p, H, Parity::odd)) {
                oracle::ComplexVal l = oracle::l1_euler_adjusted(chi, d0, prec);
                sum_log_l += std::log(std::abs(l));
            }
            out.bound_log = log_w - ep.pi_value.log_abs() +
                            quarter_m * std::log(static_cast<double>(p) / (4.0 * kPi2)) + sum_log_l;
            break;
        }
    }
    out.bound = decimal_from_log(out.bound_log);
    return out;
}

Rational trivial_n_closed(u64 d0, u64 f_residue) {
    if (d0 < 2 || !is_squarefree(d0)) fail(errc::not_square_free, "d0 must be squarefree and > 1");
    if (std::gcd(f_residue % d0, d0) != 1) fail(errc::not_coprime, "residue must be a unit mod d0");
    u64 f = f_residue % d0;
    while (f <= 2) f += d0;
    return n_d0_primary(f, trivial_subgroup(f), d0);
}

Rational a_value(u64 d0, u64 f_residue) {
    Rational n = trivial_n_closed(d0, f_residue);
    u64 phi = euler_phi(d0);
    Rational b(1L);
    for (const auto& [q, e] : factorize(d0).factors) {
        (void)e;
        b *= Rational(static_cast<long>(q) * static_cast<long>(q) - 1, 1);
    }
    return Rational::from_u64(phi * phi) + b / Rational(3L) * n;
}

} // namespace dedelab
