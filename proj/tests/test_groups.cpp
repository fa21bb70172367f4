#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "dedelab/error.hpp"
#include "dedelab/groups.hpp"

using namespace dedelab;

TEST_CASE("subgroup_of_order canonical subgroups") {
    CHECK(subgroup_of_order(7, 3).elements == std::vector<u64>{1, 2, 4});
    CHECK(subgroup_of_order(7, 1).elements == std::vector<u64>{1});
    // powers of 3 (= 2^4) of order 3 mod 13: brute closure oracle
    std::vector<u64> cubes;
    for (u64 x = 1; x < 13; ++x)
        if (mul_mod(mul_mod(x, x, 13), x, 13) == 1) cubes.push_back(x);
    CHECK(subgroup_of_order(13, 3).elements == cubes);
    CHECK(subgroup_of_order(13, 3).elements == std::vector<u64>{1, 3, 9});
    CHECK_THROWS_AS(subgroup_of_order(10, 3), Error);
    CHECK_THROWS_AS(subgroup_of_order(7, 4), Error);
}

TEST_CASE("subgroup_from_generators closure") {
    CHECK(subgroup_from_generators(7, std::vector<u64>{2}).elements == std::vector<u64>{1, 2, 4});
    CHECK(subgroup_from_generators(7, std::vector<u64>{3}).elements ==
          std::vector<u64>{1, 2, 3, 4, 5, 6});
    u64 ab = mul_mod(9, mod_inverse(1, 91), 91);
    CHECK(subgroup_from_generators(91, std::vector<u64>{ab}).elements == std::vector<u64>{1, 9, 81});
    CHECK_THROWS_AS(subgroup_from_generators(91, std::vector<u64>{7}), Error);
}

TEST_CASE("subgroup invariants") {
    for (u64 p : {7ull, 13ull, 31ull, 127ull}) {
        for (u64 d = 1; d <= p - 1; ++d) {
            if ((p - 1) % d != 0) continue;
            Subgroup H = subgroup_of_order(p, d);
            CHECK(H.order() == d);
            CHECK((p - 1) % H.order() == 0);
            for (u64 h : H.elements) {
                CHECK(std::gcd(h, p) == 1);
                CHECK(H.contains(mul_mod(h, H.elements.back(), p)));
            }
            if (d % 2 == 1) CHECK(minus_one_free(H));
        }
    }
    CHECK_FALSE(minus_one_free(subgroup_from_generators(7, std::vector<u64>{6})));
    CHECK(minus_one_free(trivial_subgroup(5)));
}

TEST_CASE("lift_subgroup CRT enumeration") {
    Subgroup H = subgroup_of_order(7, 3);
    LiftedSubgroup L = lift_subgroup(H, 3);
    CHECK(L.group.modulus == 21);
    CHECK(L.group.elements == std::vector<u64>{1, 2, 4, 8, 11, 16});
    LiftedSubgroup one = lift_subgroup(trivial_subgroup(7), 2);
    CHECK(one.group.elements == std::vector<u64>{1});
    CHECK(one.group.modulus == 14);
    CHECK(lift_subgroup(H, 1).group.elements == H.elements);
    CHECK_THROWS_AS(lift_subgroup(H, 7), Error);  // gcd(delta, f) != 1
    CHECK_THROWS_AS(lift_subgroup(H, 4), Error);  // not squarefree
}

TEST_CASE("lift properties") {
    for (u64 p : {7ull, 13ull, 31ull}) {
        for (u64 d : {1ull, 3ull}) {
            if ((p - 1) % d != 0) continue;
            Subgroup H = subgroup_of_order(p, d);
            for (u64 delta : {2ull, 3ull, 6ull, 15ull}) {
                LiftedSubgroup L = lift_subgroup(H, delta);
                CHECK(L.group.order() == euler_phi(delta) * H.order());
                // reduction maps onto H with phi(delta) preimages each
                for (u64 h : H.elements) {
                    u64 count = 0;
                    for (u64 x : L.group.elements)
                        if (x % p == h) ++count;
                    CHECK(count == euler_phi(delta));
                }
                // closed under multiplication mod delta*p
                u64 M = L.group.modulus;
                for (std::size_t i = 0; i < L.group.elements.size(); ++i)
                    CHECK(L.group.contains(
                        mul_mod(L.group.elements[i], L.group.elements.back(), M)));
            }
            // lift by delta1*delta2 reduced mod delta1*p equals lift by delta1
            LiftedSubgroup L6 = lift_subgroup(H, 6);
            LiftedSubgroup L2 = lift_subgroup(H, 2);
            std::vector<u64> reduced;
            for (u64 x : L6.group.elements) reduced.push_back(x % (2 * p));
            std::sort(reduced.begin(), reduced.end());
            reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
            CHECK(reduced == L2.group.elements);
        }
    }
}
