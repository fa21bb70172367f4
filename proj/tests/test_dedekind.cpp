#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "dedelab/dedekind.hpp"
#include "dedelab/error.hpp"
#include "dedelab/numt.hpp"
#include "dedelab/verify.hpp"

using namespace dedelab;

namespace {

// Definitional oracle straight from the cotangent sum, usable for small d.
long double dedekind_cotangent(long c, long d) {
    const long double pi = std::numbers::pi_v<long double>;
    long ad = std::labs(d);
    long double acc = 0.0L;
    for (long n = 1; n < ad; ++n)
        acc += 1.0L / std::tan(pi * n / static_cast<long double>(d)) /
               std::tan(pi * n * c / static_cast<long double>(d));
    return acc / (4.0L * static_cast<long double>(d));
}

} // namespace

TEST_CASE("closed forms s(1, d) and s(2, d)") {
    CHECK(dedekind_fast(1, 5) == Rational(1, 5));
    CHECK(dedekind_fast(2, 7) == Rational(1, 14));
    CHECK(dedekind_fast(2, 127) == Rational(1281, 254));
    for (long d = 1; d <= 200; ++d) {
        CHECK(dedekind_fast(1, d) == dedekind_s1(d));
        if (d % 2 == 1)
            CHECK(dedekind_fast(2, d) ==
                  Rational::ratio128(static_cast<__int128>(d) * d - 6 * d + 5, 24 * d));
    }
}

TEST_CASE("conventions and edge cases") {
    CHECK(dedekind_fast(17, 1) == Rational(0L));
    CHECK(dedekind_fast(-9, 1) == Rational(0L));
    CHECK(dedekind_fast(3, -1) == Rational(0L));
    CHECK(dedekind_naive(1, 1) == Rational(0L));
    CHECK(dedekind_fast(1, 2) == Rational(0L));
    CHECK_THROWS_AS(dedekind_fast(2, 0), Error);
    CHECK_THROWS_AS(dedekind_fast(2, 4), Error);
    CHECK_THROWS_AS(dedekind_naive(3, 20'000'001), Error);
}

TEST_CASE("naive sawtooth oracle values") {
    CHECK(dedekind_naive(1, 3) == Rational(1, 18));
    CHECK(dedekind_naive(2, 7) == Rational(1, 14));
    CHECK(dedekind_naive(5, 7) == Rational(-1, 14));
    CHECK(dedekind_fast(5, 7) == Rational(-1, 14));
}

TEST_CASE("fast and naive agree with the cotangent definition") {
    for (long d = 1; d <= 60; ++d) {
        for (long c = -d; c <= d; ++c) {
            if (std::gcd(std::labs(c), d) != 1) continue;
            long double want = dedekind_cotangent(c, d);
            CHECK(std::fabs(static_cast<double>(dedekind_naive(c, d).to_double() - want)) < 1e-12);
            CHECK(dedekind_fast(c, d) == dedekind_naive(c, d));
            CHECK(dedekind_fast(c, -d) == -dedekind_fast(c, d));
        }
    }
}

TEST_CASE("depends only on c mod d, inversion, oddness") {
    for (long d : {5L, 12L, 49L, 101L}) {
        for (long c = 1; c < d; ++c) {
            if (std::gcd(c, d) != 1) continue;
            Rational s = dedekind_fast(c, d);
            CHECK(dedekind_fast(c + 7 * d, d) == s);
            CHECK(dedekind_fast(c - 3 * d, d) == s);
            CHECK(dedekind_fast(-c, d) == -s);
            long cstar = static_cast<long>(mod_inverse(static_cast<u64>(c), static_cast<u64>(d)));
            CHECK(dedekind_fast(cstar, d) == s);
        }
    }
}

TEST_CASE("rademacher sums") {
    CHECK(rademacher(2, 1, 7) == Rational(1, 14));
    CHECK(rademacher(2, 1, 7) == Rational(6, 84)); // (f-1)/(12f) with f = 7 = 2^2+2+1
    CHECK(rademacher(3, 3, 5) == Rational(1, 5));
    CHECK(rademacher(1, 1, 1) == Rational(0L));
    CHECK_THROWS_AS(rademacher(2, 7, 14), Error);
    // scale invariance s(ab, ac, d) = s(b, c, d)
    for (long d : {7L, 11L, 25L}) {
        for (long a = 2; a < d; ++a) {
            if (std::gcd(a, d) != 1) continue;
            CHECK(rademacher(3 * a % d, 2 * a % d, d) == rademacher(3, 2, d));
        }
    }
    // s(b, c, d) equals the cotangent definition
    for (long d : {5L, 9L, 14L}) {
        for (long b = 1; b < d; ++b) {
            for (long c = 1; c < d; ++c) {
                if (std::gcd(b, d) != 1 || std::gcd(c, d) != 1) continue;
                const long double pi = std::numbers::pi_v<long double>;
                long double want = 0.0L;
                for (long n = 1; n < d; ++n)
                    want += 1.0L / std::tan(pi * n * b / static_cast<long double>(d)) /
                            std::tan(pi * n * c / static_cast<long double>(d));
                want /= 4.0L * static_cast<long double>(d);
                CHECK(std::fabs(static_cast<double>(rademacher(b, c, d).to_double() - want)) < 1e-12);
            }
        }
    }
}

TEST_CASE("reciprocity suites at unit-test scale") {
    CHECK(check_reciprocity(300, 0).pass);
    CHECK(check_three_term(2000, 0).pass);
    CHECK(check_fast_naive_equivalence(250, 0).pass);
    CHECK(check_sign_rules(80).pass);
    CHECK(check_s_bound(150).pass);
}

TEST_CASE("large moduli stay exact") {
    // s(2, 2^31 - 1) from the s(2, d) closed form.
    long p = 2147483647L;
    CHECK(dedekind_fast(2, p) ==
          Rational::ratio128(static_cast<__int128>(p) * p - 6 * p + 5, 24 * static_cast<__int128>(p)));
    // reciprocity at a 2^61-scale modulus
    long d = 2305843009213693951L;
    Rational lhs = dedekind_fast(12345, d) + dedekind_fast(d, 12345);
    __int128 cc = 12345, dd = d;
    CHECK(lhs == Rational::ratio128(cc * cc + dd * dd - 3 * cc * dd + 1, 12 * cc * dd));
}
