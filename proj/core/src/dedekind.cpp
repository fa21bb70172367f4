#include "dedelab/dedekind.hpp"

#include <cstdlib>
#include <numeric>

#include "dedelab/error.hpp"
#include "dedelab/numt.hpp"

namespace dedelab {

namespace {

// Reduce (c, d) to (r, a) with a = |d| and r = c mod a in [0, a); the
// result then carries sign(d).
struct Reduced {
    u64 r;
    u64 a;
    bool negate;
};

Reduced reduce_args(long c, long d) {
    if (d == 0) fail(errc::zero_modulus, "Dedekind sum needs a nonzero modulus");
    u64 a = d < 0 ? -static_cast<u64>(d) : static_cast<u64>(d);
    long cm = c % static_cast<long>(a);
    u64 r = cm < 0 ? static_cast<u64>(cm + static_cast<long>(a)) : static_cast<u64>(cm);
    if (a > 1 && std::gcd(r, a) != 1)
        fail(errc::not_coprime, "Dedekind sum needs gcd(c, d) = 1");
    return {r, a, d < 0};
}

void mpz_set_i128(mpz_t z, __int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_set_ui(z, static_cast<unsigned long>(u >> 64));
    mpz_mul_2exp(z, z, 64);
    mpz_add_ui(z, z, static_cast<unsigned long>(u));
    if (neg) mpz_neg(z, z);
}

// s(h, k) for 0 <= h < k, gcd(h, k) = 1: peel one reciprocity step per
// Euclid division, s(h,k) = (h^2 + k^2 - 3hk + 1)/(12hk) - s(k mod h, h),
// down to s(0, 1) = 0.
Rational fast_core(u64 h, u64 k) {
    Rational acc;
    mpq_t term;
    mpq_init(term);
    mpz_t num;
    mpz_init(num);
    int sign = 1;
    while (h > 0) {
        __int128 diff = static_cast<__int128>(k - h);
        __int128 n = diff * diff - static_cast<__int128>(h) * k + 1; // h^2+k^2-3hk+1
        mpz_set_i128(num, n);
        mpz_set(mpq_numref(term), num);
        mpz_set_ui(mpq_denref(term), 12);
        mpz_mul_ui(mpq_denref(term), mpq_denref(term), h);
        mpz_mul_ui(mpq_denref(term), mpq_denref(term), k);
        mpq_canonicalize(term);
        if (sign > 0)
            mpq_add(acc.raw(), acc.raw(), term);
        else
            mpq_sub(acc.raw(), acc.raw(), term);
        u64 next = k % h;
        k = h;
        h = next;
        sign = -sign;
    }
    mpz_clear(num);
    mpq_clear(term);
    return acc;
}

} // namespace

Rational dedekind_fast(long c, long d) {
    Reduced rd = reduce_args(c, d);
    if (rd.a == 1) return Rational(0L);
    Rational s = fast_core(rd.r, rd.a);
    return rd.negate ? -s : s;
}

Rational dedekind_naive(long c, long d) {
    Reduced rd = reduce_args(c, d);
    if (rd.a > static_cast<u64>(kNaiveModulusLimit))
        fail(errc::modulus_too_large_for_oracle, "sawtooth oracle capped at |d| <= 1e7");
    if (rd.a == 1) return Rational(0L);
    const u64 a = rd.a;
    const u64 cr = rd.r;
    // s = sum_x ((x/a))((x c/a)) = sum_x (2x - a)(2 r_x - a) / (4 a^2),
    // r_x = x c mod a, never 0 for 0 < x < a.
    __int128 sum = 0;
    u64 r = 0;
    for (u64 x = 1; x < a; ++x) {
        r += cr;
        if (r >= a) r -= a;
        __int128 t1 = 2 * static_cast<__int128>(x) - static_cast<__int128>(a);
        __int128 t2 = 2 * static_cast<__int128>(r) - static_cast<__int128>(a);
        sum += t1 * t2;
    }
    Rational s = Rational::ratio128(sum, 4 * static_cast<__int128>(a) * a);
    return rd.negate ? -s : s;
}

Rational rademacher(long b, long c, long d) {
    if (d == 0) fail(errc::zero_modulus, "Rademacher sum needs a nonzero modulus");
    u64 a = d < 0 ? -static_cast<u64>(d) : static_cast<u64>(d);
    if (a == 1) return Rational(0L);
    auto residue = [&](long v) {
        long m = v % static_cast<long>(a);
        return m < 0 ? static_cast<u64>(m + static_cast<long>(a)) : static_cast<u64>(m);
    };
    u64 br = residue(b), cr = residue(c);
    if (std::gcd(br, a) != 1 || std::gcd(cr, a) != 1)
        fail(errc::not_coprime, "Rademacher sum needs gcd(b, d) = gcd(c, d) = 1");
    u64 alpha = mul_mod(br, mod_inverse(cr, a), a);
    Rational s = fast_core(alpha, a);
    return d < 0 ? -s : s;
}

Rational dedekind_s1(long d) {
    if (d == 0) fail(errc::zero_modulus, "s(1, d) needs d != 0");
    long ad = std::labs(d);
    return Rational::ratio128(
        static_cast<__int128>(ad) * ad - 3 * static_cast<__int128>(ad) + 2,
        12 * static_cast<__int128>(d));
}

} // namespace dedelab
