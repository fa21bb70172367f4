#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace dedelab {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i64 = std::int64_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m);

u64 gcd_u64(u64 a, u64 b);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

struct Factorization {
    u64 value = 1;
    std::vector<std::pair<u64, int>> factors; // (prime, exponent), primes increasing

    int exponent_of(u64 p) const;
    std::size_t omega() const { return factors.size(); }
};

/// Exact factorization for n >= 1: trial division below 1e6, then
/// Brent-cycle rho splitting with Miller-Rabin certification.
Factorization factorize(u64 n);

u64 euler_phi(const Factorization& f);
u64 euler_phi(u64 n);
/// Carmichael function: exponent of (Z/nZ)*.
u64 carmichael(u64 n);
/// Moebius mu(n) in {-1, 0, 1}.
int moebius(u64 n);
bool is_squarefree(u64 n);

/// All divisors, sorted increasing.
std::vector<u64> divisors(const Factorization& f);
/// Squarefree divisors with their Moebius signs, in subset order.
std::vector<std::pair<u64, int>> squarefree_divisors_mu(const Factorization& f);

/// Smallest k >= 1 with a^k = 1 (mod f).  Requires gcd(a, f) = 1, f >= 2.
u64 mult_order(u64 a, u64 f);

/// b in [1, f) with a*b = 1 (mod f).  Requires gcd(a, f) = 1.
u64 mod_inverse(u64 a, u64 f);

/// Smallest primitive root mod an odd prime p (also handles p = 2).
u64 smallest_primitive_root(u64 p);

/// Primes in [2, limit] via plain sieve.
std::vector<u32> primes_up_to(u32 limit);

/// Calls fn(p) for each prime p in [lo, hi], ascending (segmented sieve).
void for_primes_in(u64 lo, u64 hi, const std::function<void(u64)>& fn);

/// splitmix64, used for deterministic sampling decisions.
u64 splitmix64(u64 x);

} // namespace dedelab
