#pragma once

#include <complex>

#include "dedelab/characters.hpp"
#include "dedelab/groups.hpp"
#include "dedelab/numt.hpp"

namespace dedelab {
namespace oracle {

using ComplexVal = std::complex<double>;

/// Floating-point precision for the brute-force sums: 53 bits -> double,
/// anything larger -> 80-bit extended.
struct FloatPrec {
    int bits = 53;
    bool extended() const { return bits > 53; }
};

inline FloatPrec auto_prec(u64 modulus) { return FloatPrec{modulus > 10'000 ? 64 : 53}; }

/// L(1, chi) for odd chi by direct cotangent summation:
/// (pi / 2f) * sum_a chi(a) cot(pi a / f).
ComplexVal l1_cotangent(const Character& chi, FloatPrec prec = {});

/// L(1, chi') for the character mod d0*f induced by chi, again by direct
/// cotangent summation at modulus d0*f.  Requires gcd(d0, f) = 1.
ComplexVal l1_induced_direct(const Character& chi, u64 d0, FloatPrec prec = {});

/// L(1, chi') via the Euler-factor identity
/// L(1, chi') = L(1, chi) * prod_{q | d0} (1 - chi(q)/q).
ComplexVal l1_euler_adjusted(const Character& chi, u64 d0, FloatPrec prec = {});

/// Truncated Dirichlet series sum_{n<=N} chi(n)/n with a first-order tail
/// correction; `tail_bound` receives a rigorous bound on the residual
/// error after correction.
ComplexVal l1_dirichlet_series(const Character& chi, u64 terms, double* tail_bound);

/// Definitional mean square: average of |L(1, chi')|^2 over the odd
/// characters mod f trivial on H, each L-value a direct cotangent sum at
/// modulus d0*f.  Guard: f <= 20000.
double mean_square_bruteforce(u64 f, const Subgroup& H, u64 d0, FloatPrec prec = {});

struct CheckPair {
    double lhs = 0;
    double rhs = 0;
};

/// Both sides of the partial-character-sum identity
/// sum_k |S(k, chi)|^2 = (f^2/12) prod (1 - 1/p^2) + a_chi (f^2/pi^2) |L(1,chi)|^2
/// for primitive chi; lhs by direct enumeration.
CheckPair charsum_identity(const Character& chi, FloatPrec prec = {});

/// Exact sum over x mod p of max(q1 x, q2 x) with representatives in [1, p].
u64 sum_of_maxima(u64 q1, u64 q2, u64 p);

/// U(d0, f) by direct double cotangent summation vs f * A(d0, f).
CheckPair u_equals_fa(u64 d0, u64 f);

/// (2/phi(p)) sum over odd chi mod p of chi(a) conj(chi(b)).
double epsilon_bruteforce(u64 p, u64 a, u64 b);

/// Subgroup version over X_p^-(H), normalized by #X_p^-(H).
double epsilon_subgroup_bruteforce(u64 p, const Subgroup& H, u64 a, u64 b);

/// (2/phi(p)) sum over odd chi of chi(q1) conj(chi(q2)) |L(1,chi)|^2.
double twisted_moment_bruteforce(u64 p, u64 q1, u64 q2, FloatPrec prec = {});

} // namespace oracle
} // namespace dedelab
