#pragma once

#include "dedelab/rational.hpp"

namespace dedelab {

/// Largest |d| accepted by the O(|d|) sawtooth evaluator.
inline constexpr long kNaiveModulusLimit = 10'000'000;

/// Exact Dedekind sum s(c, d) in O(log |d|) arithmetic steps via the
/// reciprocity law with exact rational accumulation.  Convention
/// s(c, 1) = s(c, -1) = 0; signs follow the cotangent definition:
/// s(-c, d) = -s(c, d) and s(c, -d) = -s(c, d).
/// Requires d != 0 and gcd(c, |d|) = 1.
Rational dedekind_fast(long c, long d);

/// Same value through the sawtooth definition, term by term over the
/// common denominator 4d^2.  Independent of the reciprocity path.
/// Requires |d| <= kNaiveModulusLimit on top of the preconditions above.
Rational dedekind_naive(long c, long d);

/// Dedekind-Rademacher sum s(b, c, d) = s(b c^{-1} mod |d|, d).
/// Requires d != 0, gcd(b, |d|) = gcd(c, |d|) = 1.
Rational rademacher(long b, long c, long d);

/// Closed form s(1, d) = (d^2 - 3|d| + 2) / (12 d).
Rational dedekind_s1(long d);

} // namespace dedelab
