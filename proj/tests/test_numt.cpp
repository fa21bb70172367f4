#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "dedelab/error.hpp"
#include "dedelab/numt.hpp"
#include "dedelab/rational.hpp"

using namespace dedelab;

namespace {

// Independent oracles for the frozen expectations below.
u64 order_by_powering(u64 a, u64 f) {
    u64 x = a % f;
    for (u64 k = 1;; ++k) {
        if (x == 1) return k;
        x = mul_mod(x, a, f);
    }
}

u64 inverse_by_search(u64 a, u64 f) {
    for (u64 b = 1; b < f; ++b)
        if (mul_mod(a, b, f) == 1) return b;
    return 0;
}

bool prime_by_trial(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

TEST_CASE("factorize basic values") {
    CHECK(factorize(1).factors.empty());
    auto m = factorize(8191);
    REQUIRE(m.factors.size() == 1);
    CHECK(m.factors[0] == std::pair<u64, int>{8191, 1});
    auto f105 = factorize(105);
    REQUIRE(f105.factors.size() == 3);
    CHECK(f105.factors[0] == std::pair<u64, int>{3, 1});
    CHECK(f105.factors[1] == std::pair<u64, int>{5, 1});
    CHECK(f105.factors[2] == std::pair<u64, int>{7, 1});
    CHECK_THROWS_AS(factorize(0), Error);
}

TEST_CASE("factorize reconstructs random 64-bit inputs") {
    for (u64 i = 0; i < 200; ++i) {
        u64 n = splitmix64(i) | 1;
        if (i % 3 == 0) n >>= 20;
        if (n == 0) continue;
        Factorization f = factorize(n);
        u64 prod = 1;
        u64 last = 0;
        for (auto [p, e] : f.factors) {
            CHECK(p > last);
            last = p;
            CHECK(is_prime(p));
            for (int k = 0; k < e; ++k) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("is_prime matches trial division and known values") {
    CHECK(is_prime(2));
    CHECK(is_prime(8191));
    CHECK_FALSE(is_prime(2047)); // 23 * 89
    CHECK(is_prime(2305843009213693951ull)); // 2^61 - 1
    CHECK_FALSE(is_prime((1ull << 29) - 1));
    for (u64 n = 0; n < 2000; ++n) CHECK(is_prime(n) == prime_by_trial(n));
}

TEST_CASE("mult_order examples and properties") {
    CHECK(mult_order(2, 7) == 3);
    CHECK(mult_order(2, 127) == 7);
    CHECK(mult_order(3, 7) == order_by_powering(3, 7));
    CHECK(mult_order(3, 7) == 6);
    CHECK_THROWS_AS(mult_order(3, 9), Error);
    for (u64 f : {9ull, 10ull, 21ull, 36ull, 97ull, 100ull}) {
        u64 lambda = carmichael(f);
        for (u64 a = 2; a < f; ++a) {
            if (std::gcd(a, f) != 1) continue;
            u64 k = mult_order(a, f);
            CHECK(k == order_by_powering(a, f));
            CHECK(lambda % k == 0);
        }
    }
}

TEST_CASE("mod_inverse examples and property") {
    CHECK(mod_inverse(1, 10) == 1);
    CHECK(mod_inverse(2, 7) == 4);
    CHECK(mod_inverse(5, 21) == inverse_by_search(5, 21));
    CHECK(mod_inverse(5, 21) == 17);
    CHECK_THROWS_AS(mod_inverse(6, 21), Error);
    for (u64 i = 0; i < 500; ++i) {
        u64 f = 2 + splitmix64(i) % 100000;
        u64 a = 1 + splitmix64(i ^ 0xabcd) % (f - 1);
        if (std::gcd(a, f) != 1) continue;
        CHECK(mul_mod(a, mod_inverse(a, f), f) == 1);
    }
}

TEST_CASE("divisors and moebius") {
    auto divs = divisors(factorize(60));
    CHECK(divs == std::vector<u64>{1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60});
    CHECK(moebius(1) == 1);
    CHECK(moebius(6) == 1);
    CHECK(moebius(30) == -1);
    CHECK(moebius(12) == 0);
    int sum = 0;
    for (auto [d, mu] : squarefree_divisors_mu(factorize(30))) {
        CHECK(moebius(d) == mu);
        sum += mu;
    }
    CHECK(sum == 0);
}

TEST_CASE("primitive roots and sieve") {
    CHECK(smallest_primitive_root(7) == 3);
    CHECK(smallest_primitive_root(2147483647) == 7);
    for (u64 p : {5ull, 13ull, 127ull, 8191ull}) {
        u64 g = smallest_primitive_root(p);
        CHECK(mult_order(g, p) == p - 1);
    }
    std::vector<u64> got;
    for_primes_in(90, 130, [&](u64 p) { got.push_back(p); });
    CHECK(got == std::vector<u64>{97, 101, 103, 107, 109, 113, 127});
    u64 count = 0;
    for_primes_in(2, 100000, [&](u64) { ++count; });
    CHECK(count == 9592);
}

TEST_CASE("rational canonical form and arithmetic") {
    Rational r(6, -4);
    CHECK(r.num_str() == "-3");
    CHECK(r.den_str() == "2");
    CHECK(r == Rational(-3, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 7) * Rational(7, 2) == Rational(1L));
    CHECK(Rational(1, 2) / Rational(-1, 4) == Rational(-2L));
    CHECK(Rational(5, 1).is_integer());
    CHECK_FALSE(Rational(5, 3).is_integer());
    CHECK(Rational(22, 7).to_double() == doctest::Approx(22.0 / 7.0));
    CHECK(Rational::int_pow(2, 20) == Rational(1 << 20, 1));
    CHECK(Rational::pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(Rational(1281, 254).frac_str() == "1281/254");
    CHECK(Rational(0L).str() == "0");
    Rational big = Rational::int_pow(10, 40);
    CHECK(big.log_abs() == doctest::Approx(40.0 * 2.302585092994046).epsilon(1e-12));
}
