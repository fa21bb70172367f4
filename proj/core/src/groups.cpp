#include "dedelab/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "dedelab/error.hpp"

namespace dedelab {

bool Subgroup::contains(u64 r) const {
    return std::binary_search(elements.begin(), elements.end(), r % modulus);
}

namespace {

void check_subgroup(const Subgroup& H) {
    if (H.elements.empty() || H.elements.front() != 1 || !std::is_sorted(H.elements.begin(), H.elements.end()))
        fail(errc::bad_argument, "malformed subgroup element list");
    for (u64 h : H.elements)
        if (h == 0 || h >= H.modulus || std::gcd(h, H.modulus) != 1)
            fail(errc::not_coprime, "subgroup element not a unit");
    // Closure; sampled for large groups, complete otherwise.
    const std::size_t n = H.elements.size();
    const bool full = n <= 512;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t count = full ? n : 16;
        for (std::size_t t = 0; t < count; ++t) {
            std::size_t j = full ? t : splitmix64(i * 0x9e37u + t) % n;
            if (!H.contains(mul_mod(H.elements[i], H.elements[j], H.modulus)))
                fail(errc::bad_argument, "subgroup not closed under multiplication");
        }
    }
}

} // namespace

Subgroup subgroup_of_order(u64 p, u64 d) {
    if (!is_prime(p)) fail(errc::not_prime, "subgroup_of_order requires a prime modulus");
    if (d == 0 || (p - 1) % d != 0) fail(errc::order_does_not_divide, "order must divide p - 1");
    u64 g = smallest_primitive_root(p);
    u64 step = pow_mod(g, (p - 1) / d, p);
    Subgroup H;
    H.modulus = p;
    u64 x = 1;
    for (u64 k = 0; k < d; ++k) {
        H.elements.push_back(x);
        x = mul_mod(x, step, p);
    }
    std::sort(H.elements.begin(), H.elements.end());
    check_subgroup(H);
    return H;
}

Subgroup subgroup_from_generators(u64 f, std::span<const u64> gens) {
    if (f < 3) fail(errc::bad_argument, "subgroup modulus must be >= 3");
    for (u64 g : gens)
        if (std::gcd(g % f, f) != 1) fail(errc::not_coprime, "generator not coprime to the modulus");
    std::set<u64> seen{1};
    std::vector<u64> frontier{1};
    while (!frontier.empty()) {
        u64 x = frontier.back();
        frontier.pop_back();
        for (u64 g : gens) {
            u64 y = mul_mod(x, g % f, f);
            if (seen.insert(y).second) frontier.push_back(y);
        }
    }
    Subgroup H;
    H.modulus = f;
    H.elements.assign(seen.begin(), seen.end());
    check_subgroup(H);
    return H;
}

Subgroup trivial_subgroup(u64 f) {
    if (f < 3) fail(errc::bad_argument, "subgroup modulus must be >= 3");
    return Subgroup{f, {1}};
}

std::vector<u64> lift_residues(u64 f, u64 delta, std::span<const u64> residues) {
    std::vector<u64> out;
    out.reserve(residues.size() * delta);
    for (u64 h : residues)
        for (u64 k = 0; k < delta; ++k) {
            u64 x = h + k * f;
            if (std::gcd(x % delta, delta) == 1) out.push_back(x);
        }
    std::sort(out.begin(), out.end());
    return out;
}

LiftedSubgroup lift_subgroup(const Subgroup& H, u64 delta) {
    if (delta == 0 || std::gcd(delta, H.modulus) != 1)
        fail(errc::not_coprime_moduli, "lift requires gcd(delta, f) = 1");
    if (!is_squarefree(delta)) fail(errc::not_square_free, "lift delta must be squarefree");
    unsigned __int128 prod = static_cast<unsigned __int128>(delta) * H.modulus;
    if (prod > ~0ull) fail(errc::input_too_large, "lifted modulus exceeds 64 bits");
    LiftedSubgroup L;
    L.base = H;
    L.delta = delta;
    L.group.modulus = delta * H.modulus;
    L.group.elements = lift_residues(H.modulus, delta, H.elements);
    if (L.group.elements.size() != euler_phi(delta) * H.elements.size())
        fail(errc::bad_argument, "lift cardinality mismatch");
    return L;
}

} // namespace dedelab
