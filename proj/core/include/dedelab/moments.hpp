#pragma once

#include <string>
#include <variant>

#include "dedelab/groups.hpp"
#include "dedelab/oracle.hpp"
#include "dedelab/rational.hpp"

namespace dedelab {

/// Which identity produced a mean square value.
enum class Formula {
    general_lift,      // lift to modulus d0*f and run the divisor sum
    prime_split,       // prime-modulus divisor split over delta | d0
    trivial_product,   // product formula for H = {1}, d0 = 1
    trivial_product_2, // product formula for H = {1}, d0 = 2
    pm_one_product,    // d0 > 2 with every q | f = +-1 (mod d0)
    mersenne_table,    // f = 2^d - 1, H = <2>
    power_family,      // f = (a^d - 1)/(a - 1), H = <a>
    d3_family,         // f = a^2 + ab + b^2, H of order 3
    twisted,
};

/// A mean square value, stored exactly as the coefficient c of pi^2.
struct MomentResult {
    Rational coefficient;
    double float_value = 0; // coefficient * pi^2
    Formula provenance = Formula::general_lift;
};

MomentResult make_moment(Rational coeff, Formula source);

enum class NKind { n, n_d0, n_prime_d0 };

struct NValue {
    Rational value;
    NKind kind = NKind::n;
};

struct EulerProduct {
    Rational pi_value;  // Pi_{d0}(f, H)
    double d_value = 1; // Pi^{4/m}, m = phi(f)/d
};

struct ClassNumberBound {
    u64 w_k = 2;
    u64 m = 2;
    double bound_log = 0;  // natural log of the bound
    std::string bound;     // decimal rendering "1.234e+56"
};

enum class BoundMode { plain, euler, exact_product };

/// sum_{h in elements} s(h, f).
Rational subgroup_dedekind_sum(std::span<const u64> elements, u64 f);
/// Same, skipping residues congruent to 1 mod `excluded_unit_mod`
/// (the identity fibre of a lifted subgroup).
Rational subgroup_dedekind_sum_prime(std::span<const u64> elements, u64 f, u64 excluded_unit_mod);

/// M(f, H) = (2 pi^2 / f) sum_{delta | f} mu(delta)/delta sum_h s(h, f/delta),
/// exact coefficient of pi^2.  Requires f > 2 and -1 not in H.
MomentResult mean_square(u64 f, const Subgroup& H);

/// M_{d0}(f, H) = M(d0 f, H_{d0}) through the lift.
MomentResult mean_square_d0_lift(u64 f, const Subgroup& H, u64 d0);
/// Prime-modulus path: divisor split over delta | d0.  Requires f prime.
MomentResult mean_square_d0_prime(u64 p, const Subgroup& H, u64 d0);
/// Dispatch: prime moduli evaluate both paths and insist they agree.
MomentResult mean_square_d0(u64 f, const Subgroup& H, u64 d0);

/// N(f, H) = -3 + 2/f + 12 S'(H, f).
NValue n_value(u64 f, const Subgroup& H);

/// N_{d0}(f, H), three algebraically equal routes kept separate so tests
/// can pin their agreement.
Rational n_d0_primary(u64 f, const Subgroup& H, u64 d0);
Rational n_d0_bis(u64 f, const Subgroup& H, u64 d0);
Rational n_d0_ter(u64 f, const Subgroup& H, u64 d0);
NValue n_d0_value(u64 f, const Subgroup& H, u64 d0);

/// N'_{d0}(f, H) = (N_{d0}(f, H) - 2f) / 3, the pi^2/2-normalized variant.
NValue n_prime_d0_value(u64 f, const Subgroup& H, u64 d0);

/// prod_{q | d0} (1 - 1/q^2) / 6: the coefficient kappa_{d0} of pi^2.
Rational kappa_coeff(u64 d0);

// --- closed-form families ---------------------------------------------

struct TrivialH {};
struct MersenneH {
    unsigned d; // f = 2^d - 1, H = powers of 2
};
struct PowerH {
    long a;
    unsigned d; // f = (a^d - 1)/(a - 1), H = powers of a
};
struct D3H {
    long a;
    long b; // f = a^2 + ab + b^2, H = {1, a/b, b/a}
};
using HKind = std::variant<TrivialH, MersenneH, PowerH, D3H>;

/// Closed-form mean square for a covered (f, H, d0) family, computed
/// without any Dedekind sums.  Throws family_not_covered otherwise.
MomentResult closed_form(u64 f, const HKind& kind, u64 d0);

/// N'_{d0}(2^d - 1, <2>) from the tabulated Mersenne formulas,
/// d0 in {1, 3, 5, 15, 105}.
Rational mersenne_n_prime_closed(unsigned d, u64 d0);

/// N_{d0}(a^2 + a + 1, {1, a, a^2}) for d0 in {1, 2, 3, 6}.
Rational d3_n_closed(long a, u64 d0);

/// S(H, f) closed form (a+1)/(a-1) * (f - (d-1)a - 1)/12 for the power
/// family, and the matching power-multiset sum of Dedekind sums.
Rational power_family_S_closed(long a, unsigned d);
Rational power_family_S_dedekind(long a, unsigned d);

/// M_{q1,q2}(p) = (2 pi^2 / p) s(q1, q2, p), exact coefficient.
MomentResult twisted_moment(u64 q1, u64 q2, u64 p);

/// Pi_{d0}(f, H) over the two-case order formula, with D = Pi^{4/m}.
EulerProduct euler_product(u64 f, const Subgroup& H, u64 d0);

/// exp((log d0 / 2) F(p+1)) with F(x) = (x-2) log(1 - 1/x) / log x;
/// lower bound for Pi_{d0}(p, {1}).
double pi_lower_bound(u64 p, u64 d0);

/// Relative class number bound for the degree-(p-1)/d subfield.
/// plain: w (p M / 4pi^2)^{m/4};  euler: same with M_{d0} and D_{d0};
/// exact_product: w / Pi * (p / 4pi^2)^{m/4} * prod |L(1, chi')|.
ClassNumberBound class_number_bound(u64 p, u64 d, u64 d0, BoundMode mode,
                                    oracle::FloatPrec prec = {});

/// N_{d0}(f, {1}) depends only on f mod d0; computed from the smallest
/// representative modulus.
Rational trivial_n_closed(u64 d0, u64 f_residue);

/// A(d0, f) = phi(d0)^2 + (B/3) N_{d0}(f, {1}), B = prod (q^2 - 1).
Rational a_value(u64 d0, u64 f_residue);

} // namespace dedelab
