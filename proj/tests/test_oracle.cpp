#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dedelab/error.hpp"
#include "dedelab/moments.hpp"
#include "dedelab/oracle.hpp"
#include "dedelab/verify.hpp"

using namespace dedelab;
using oracle::FloatPrec;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
} // namespace

TEST_CASE("L(1, chi) classical values") {
    // quadratic character mod 7: |L(1,chi)|^2 = pi^2 / 7 (class number 1)
    auto odd7 = characters_trivial_on(7, subgroup_of_order(7, 3), Parity::odd);
    REQUIRE(odd7.size() == 1);
    auto l = oracle::l1_cotangent(odd7[0], FloatPrec{64});
    CHECK(std::norm(l) == doctest::Approx(kPi2 / 7.0).epsilon(1e-12));
    CHECK(l.real() == doctest::Approx(kPi / std::sqrt(7.0)).epsilon(1e-12));
    CHECK_THROWS_AS(oracle::l1_cotangent(characters(5)[0]), Error); // principal is even
}

TEST_CASE("cotangent formula vs truncated Dirichlet series") {
    for (u64 f : {3ull, 5ull, 7ull, 11ull, 12ull}) {
        for (const Character& chi : characters(f)) {
            if (!chi.is_odd() || !chi.is_primitive()) continue;
            double tail = 0;
            auto a = oracle::l1_cotangent(chi, FloatPrec{64});
            auto b = oracle::l1_dirichlet_series(chi, 1'000'000, &tail);
            CHECK(tail < 1e-8);
            CHECK(std::abs(a - b) < std::max(1e-8, 4.0 * tail));
        }
    }
}

TEST_CASE("conjugate character gives conjugate L-value") {
    for (const Character& chi : characters(13)) {
        if (!chi.is_odd()) continue;
        for (const Character& psi : characters(13)) {
            if (!psi.is_odd()) continue;
            bool conj = true;
            for (u64 a = 1; a < 13; ++a)
                if (std::abs(chi.value(a) - std::conj(psi.value(a))) > 1e-12) conj = false;
            if (!conj) continue;
            auto lc = oracle::l1_cotangent(chi, FloatPrec{64});
            auto lp = oracle::l1_cotangent(psi, FloatPrec{64});
            CHECK(std::abs(lc - std::conj(lp)) < 1e-12);
        }
    }
}

TEST_CASE("induced L-values: direct sum vs Euler factors") {
    auto odd7 = characters_trivial_on(7, subgroup_of_order(7, 3), Parity::odd);
    const Character& quad = odd7[0];
    // chi(3) = -1 since 3 is a non-residue mod 7: factor 1 + 1/3 = 4/3
    auto plain = oracle::l1_cotangent(quad, FloatPrec{64});
    auto adjusted = oracle::l1_euler_adjusted(quad, 3, FloatPrec{64});
    CHECK(std::abs(adjusted - plain * (4.0 / 3.0)) < 1e-12);
    auto direct = oracle::l1_induced_direct(quad, 3, FloatPrec{64});
    CHECK(std::abs(direct - adjusted) < 1e-10);
    CHECK(std::abs(oracle::l1_euler_adjusted(quad, 1, FloatPrec{64}) - plain) == 0.0);
}

TEST_CASE("mean square brute force matches paper values") {
    CHECK(oracle::mean_square_bruteforce(5, trivial_subgroup(5), 1) ==
          doctest::Approx(2.0 * kPi2 / 25.0).epsilon(1e-9));
    Subgroup H7 = subgroup_of_order(7, 3);
    CHECK(oracle::mean_square_bruteforce(7, H7, 1) == doctest::Approx(kPi2 / 7.0).epsilon(1e-9));
    CHECK(oracle::mean_square_bruteforce(7, H7, 15) ==
          doctest::Approx(32.0 * kPi2 / 75.0 * 6.0 / 7.0).epsilon(1e-8));
    CHECK_THROWS_AS(oracle::mean_square_bruteforce(30'000, trivial_subgroup(30'000), 1), Error);
}

TEST_CASE("the |L(1,chi')|^2 average equals the exact formula") {
    Subgroup H7 = subgroup_of_order(7, 3);
    double brute = oracle::mean_square_bruteforce(7, H7, 3, FloatPrec{64});
    double exact = mean_square_d0(7, H7, 3).float_value;
    CHECK(brute == doctest::Approx(exact).epsilon(1e-10));
    CHECK(exact == doctest::Approx(16.0 / 63.0 * kPi2).epsilon(1e-12));
}

TEST_CASE("partial character sum identity") {
    // quadratic (even) character mod 5: lhs = 2 = (25/12)(24/25)
    for (const Character& chi : characters(5)) {
        if (chi.is_principal() || chi.is_odd()) continue;
        bool real_valued = true;
        for (u64 a = 1; a < 5; ++a)
            if (std::abs(chi.value(a).imag()) > 1e-12) real_valued = false;
        if (!real_valued) continue;
        auto pr = oracle::charsum_identity(chi);
        CHECK(pr.lhs == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(pr.rhs == doctest::Approx(2.0).epsilon(1e-12));
    }
    // odd character mod 3: lhs = 1
    for (const Character& chi : characters(3)) {
        if (!chi.is_odd()) continue;
        auto pr = oracle::charsum_identity(chi, FloatPrec{64});
        CHECK(pr.lhs == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::fabs(pr.lhs - pr.rhs) < 1e-9);
    }
    CHECK_THROWS_AS(oracle::charsum_identity(characters(5)[0]), Error); // principal is imprimitive
}

TEST_CASE("sums of maxima") {
    CHECK(oracle::sum_of_maxima(1, 2, 5) == 18);
    for (u64 p : {5ull, 7ull, 97ull}) CHECK(oracle::sum_of_maxima(1, 1, p) == p * (p - 1) / 2 + p);
    CHECK(oracle::sum_of_maxima(2, 4, 5) == oracle::sum_of_maxima(1, 2, 5));
    CHECK(check_maxsum(99'991).pass);
}

TEST_CASE("orthogonality and kernels") {
    CHECK(check_orthogonality(60).pass);
    CHECK(check_kernel_recovery(60).pass);
}

TEST_CASE("U(d0, f) = f A(d0, f)") {
    auto z = oracle::u_equals_fa(2, 9);
    CHECK(std::fabs(z.lhs) < 1e-9);
    CHECK(z.rhs == 0.0);
    auto a37 = oracle::u_equals_fa(3, 7);
    CHECK(a37.rhs == doctest::Approx(7.0 * 4.0 / 3.0).epsilon(1e-12));
    CHECK(std::fabs(a37.lhs - a37.rhs) < 1e-8);
    CHECK(check_u_fa().pass);
}

TEST_CASE("twisted averages reduce to Dedekind sums") {
    CHECK(check_twisted_oracle(40).pass);
    double lhs = oracle::twisted_moment_bruteforce(7, 1, 2, FloatPrec{64});
    CHECK(lhs == doctest::Approx(kPi2 / 49.0).epsilon(1e-10));
}
