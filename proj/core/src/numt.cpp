#include "dedelab/numt.hpp"

#include <algorithm>
#include <numeric>

#include "dedelab/error.hpp"

namespace dedelab {

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This base set is a proven deterministic witness set for n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

int Factorization::exponent_of(u64 p) const {
    for (const auto& [q, e] : factors)
        if (q == p) return e;
    return 0;
}

namespace {

u64 pollard_brent(u64 n, u64 seed) {
    // n odd composite, no factor below the trial-division bound.
    const u64 c = 1 + splitmix64(seed) % (n - 2);
    const u64 x0 = 2 + splitmix64(seed ^ 0x5eedull) % (n - 2);
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    u64 x = x0, y = 0, q = 1, g = 1, xs = 0;
    const u64 batch = 128;
    for (u64 l = 1; g == 1; l <<= 1) {
        y = x;
        for (u64 i = 1; i < l; ++i) x = f(x);
        for (u64 k = 0; k < l && g == 1; k += batch) {
            xs = x;
            u64 lim = std::min(batch, l - k);
            for (u64 i = 0; i < lim; ++i) {
                x = f(x);
                q = mul_mod(q, y > x ? y - x : x - y, n);
            }
            g = gcd_u64(q, n);
        }
    }
    if (g == n) {
        // The batched gcd collapsed; redo the last batch one step at a time.
        do {
            xs = f(xs);
            g = gcd_u64(y > xs ? y - xs : xs - y, n);
        } while (g == 1);
    }
    return g;
}

void factor_rec(u64 n, std::vector<u64>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    u64 d = n;
    for (u64 seed = 1; d == n; ++seed) d = pollard_brent(n, seed);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

} // namespace

Factorization factorize(u64 n) {
    if (n < 1) fail(errc::bad_argument, "factorize requires n >= 1");
    Factorization f;
    f.value = n;
    u64 m = n;
    auto push = [&](u64 p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) f.factors.emplace_back(p, e);
    };
    static const std::vector<u32> small_primes = primes_up_to(1'000'000);
    for (u32 p : small_primes) {
        if (static_cast<u64>(p) * p > m) break;
        push(p);
    }
    if (m > 1) {
        if (is_prime(m)) {
            f.factors.emplace_back(m, 1);
        } else {
            std::vector<u64> rest;
            factor_rec(m, rest);
            std::sort(rest.begin(), rest.end());
            for (std::size_t i = 0; i < rest.size();) {
                std::size_t j = i;
                while (j < rest.size() && rest[j] == rest[i]) ++j;
                f.factors.emplace_back(rest[i], static_cast<int>(j - i));
                i = j;
            }
        }
    }
    std::sort(f.factors.begin(), f.factors.end());
    return f;
}

u64 euler_phi(const Factorization& f) {
    u64 phi = 1;
    for (const auto& [p, e] : f.factors) {
        phi *= p - 1;
        for (int i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

u64 carmichael(u64 n) {
    Factorization f = factorize(n);
    u64 lambda = 1;
    for (const auto& [p, e] : f.factors) {
        u64 comp;
        if (p == 2) {
            comp = e <= 2 ? (e == 2 ? 2 : 1) : (1ull << (e - 2));
        } else {
            comp = p - 1;
            for (int i = 1; i < e; ++i) comp *= p;
        }
        lambda = std::lcm(lambda, comp);
    }
    return lambda;
}

int moebius(u64 n) {
    Factorization f = factorize(n);
    for (const auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

bool is_squarefree(u64 n) { return moebius(n) != 0; }

std::vector<u64> divisors(const Factorization& f) {
    std::vector<u64> divs{1};
    for (const auto& [p, e] : f.factors) {
        std::size_t base = divs.size();
        u64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::vector<std::pair<u64, int>> squarefree_divisors_mu(const Factorization& f) {
    std::vector<std::pair<u64, int>> out{{1, 1}};
    for (const auto& [p, e] : f.factors) {
        (void)e;
        std::size_t base = out.size();
        for (std::size_t j = 0; j < base; ++j) out.emplace_back(out[j].first * p, -out[j].second);
    }
    return out;
}

u64 mult_order(u64 a, u64 f) {
    if (f < 2) fail(errc::bad_argument, "mult_order requires f >= 2");
    a %= f;
    if (gcd_u64(a, f) != 1) fail(errc::not_coprime, "mult_order requires gcd(a, f) = 1");
    u64 k = carmichael(f);
    Factorization kf = factorize(k);
    for (const auto& [q, e] : kf.factors) {
        (void)e;
        while (k % q == 0 && pow_mod(a, k / q, f) == 1) k /= q;
    }
    return k;
}

u64 mod_inverse(u64 a, u64 f) {
    if (f < 1) fail(errc::bad_argument, "mod_inverse requires f >= 1");
    if (f == 1) return 0;
    a %= f;
    i64 t = 0, nt = 1;
    u64 r = f, nr = a;
    while (nr != 0) {
        u64 quo = r / nr;
        t = std::exchange(nt, t - static_cast<i64>(quo) * nt);
        r = std::exchange(nr, r - quo * nr);
    }
    if (r != 1) fail(errc::not_coprime, "mod_inverse requires gcd(a, f) = 1");
    return t < 0 ? static_cast<u64>(t + static_cast<i64>(f)) : static_cast<u64>(t);
}

u64 smallest_primitive_root(u64 p) {
    if (!is_prime(p)) fail(errc::not_prime, "primitive root requires a prime modulus");
    if (p == 2) return 1;
    Factorization f = factorize(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& [q, e] : f.factors) {
            (void)e;
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    fail(errc::not_prime, "no primitive root found");
}

std::vector<u32> primes_up_to(u32 limit) {
    std::vector<u32> primes;
    if (limit < 2) return primes;
    std::vector<bool> comp(limit + 1, false);
    for (u32 i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            primes.push_back(i);
            for (u64 j = static_cast<u64>(i) * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return primes;
}

void for_primes_in(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
    if (hi < 2 || hi < lo) return;
    lo = std::max<u64>(lo, 2);
    u64 root = 2;
    while (root * root < hi) ++root;
    std::vector<u32> base = primes_up_to(static_cast<u32>(root));
    const u64 seg = 1 << 20;
    std::vector<bool> comp;
    for (u64 start = lo; start <= hi; start += seg) {
        u64 end = std::min(hi, start + seg - 1);
        comp.assign(end - start + 1, false);
        for (u32 p : base) {
            u64 p2 = static_cast<u64>(p) * p;
            if (p2 > end) break;
            u64 first = std::max(p2, ((start + p - 1) / p) * p);
            for (u64 j = first; j <= end; j += p) comp[j - start] = true;
        }
        for (u64 n = start; n <= end; ++n)
            if (!comp[n - start]) fn(n);
    }
}

u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace dedelab
