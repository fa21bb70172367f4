#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <numeric>

#include "dedelab/characters.hpp"
#include "dedelab/error.hpp"

using namespace dedelab;

TEST_CASE("character counts") {
    CHECK(characters(5).size() == 4);
    auto c7 = characters(7);
    CHECK(c7.size() == 6);
    int odd = 0;
    for (const auto& chi : c7) odd += chi.is_odd();
    CHECK(odd == 3);
    CHECK(characters(21).size() == 12); // C2 x C6
    CHECK(characters(16).size() == 8);  // <-1> x <5>
    CHECK(characters(2).size() == 1);
}

TEST_CASE("multiplicativity and zero off units") {
    for (u64 f : {5ull, 12ull, 21ull, 16ull, 45ull}) {
        for (const Character& chi : characters(f)) {
            for (u64 a = 1; a < f; ++a) {
                if (std::gcd(a, f) != 1) {
                    CHECK(std::abs(chi.value(a)) == 0.0);
                    continue;
                }
                for (u64 b = a; b < f; b += 3) {
                    if (std::gcd(b, f) != 1) continue;
                    std::complex<double> lhs = chi.value(a * b % f);
                    std::complex<double> rhs = chi.value(a) * chi.value(b);
                    CHECK(std::abs(lhs - rhs) < 1e-12);
                }
            }
            CHECK(std::abs(chi.value(f - 1) - std::complex<double>(chi.parity(), 0)) < 1e-12);
        }
    }
}

TEST_CASE("characters trivial on a subgroup") {
    Subgroup H = subgroup_of_order(7, 3);
    auto odd = characters_trivial_on(7, H, Parity::odd);
    REQUIRE(odd.size() == 1);
    // the quadratic character mod 7
    for (u64 a = 1; a < 7; ++a) {
        double want = pow_mod(a, 3, 7) == 1 ? 1.0 : -1.0;
        CHECK(std::abs(odd[0].value(a) - std::complex<double>(want, 0)) < 1e-12);
    }
    CHECK(characters_trivial_on(7, trivial_subgroup(7), Parity::odd).size() == 3);
    CHECK(characters_trivial_on(13, subgroup_of_order(13, 3), Parity::odd).size() == 2);
    CHECK_THROWS_AS(
        characters_trivial_on(7, subgroup_from_generators(7, std::vector<u64>{6}), Parity::odd),
        Error);
}

TEST_CASE("conductor and primitivity") {
    // prime modulus: every non-principal character is primitive
    for (const Character& chi : characters(11))
        CHECK(chi.conductor() == (chi.is_principal() ? 1 : 11));
    // mod 9: conductor 1, 3 or 9
    int primitive9 = 0;
    for (const Character& chi : characters(9)) {
        u64 c = chi.conductor();
        CHECK((c == 1 || c == 3 || c == 9));
        primitive9 += chi.is_primitive();
    }
    CHECK(primitive9 == 4); // phi(9) - phi(3) - ... = 6 - 2 = 4
    // mod 12 = 4*3: the only primitive character has conductor 12
    int primitive12 = 0;
    for (const Character& chi : characters(12)) primitive12 += chi.is_primitive();
    CHECK(primitive12 == 1);
}

TEST_CASE("kernel recovery at composite modulus") {
    Subgroup H = subgroup_from_generators(91, std::vector<u64>{9});
    auto all = characters_trivial_on(91, H, Parity::any);
    CHECK(all.size() == euler_phi(91) / H.order());
    auto odd = characters_trivial_on(91, H, Parity::odd);
    CHECK(odd.size() == all.size() / 2);
    CHECK(common_kernel(91, odd) == H.elements);
}
