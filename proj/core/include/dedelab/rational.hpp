#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

namespace dedelab {

/// Arbitrary-precision rational, always kept canonical: gcd(num, den) = 1
/// and den > 0.  Equality is therefore structural.
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long v) {
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    Rational(int v) : Rational(static_cast<long>(v)) {}
    Rational(long num, long den);
    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    static Rational from_u64(std::uint64_t v);
    static Rational from_int128(__int128 v);
    /// num/den reduced; den must be nonzero.
    static Rational ratio128(__int128 num, __int128 den);
    /// base^exp as an exact integer (base, exp >= 0).
    static Rational int_pow(std::uint64_t base, std::uint64_t exp);
    /// r^exp; negative exp inverts (r must be nonzero then).
    static Rational pow(const Rational& r, long exp);

    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const {
        Rational r(*this);
        mpq_neg(r.q_, r.q_);
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.q_, b.q_) != 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return mpq_cmp(a.q_, b.q_) < 0;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return mpq_cmp(a.q_, b.q_) <= 0;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    Rational abs() const {
        Rational r(*this);
        mpq_abs(r.q_, r.q_);
        return r;
    }

    double to_double() const { return mpq_get_d(q_); }
    /// Natural log of |value|; value must be nonzero.  Exact enough for
    /// bound arithmetic even when num/den overflow double.
    double log_abs() const;

    std::string num_str() const;
    std::string den_str() const;
    /// Always "num/den", e.g. "0/1", "-5/1", "1281/254".
    std::string frac_str() const { return num_str() + "/" + den_str(); }
    /// Human form: no "/1" suffix for integers.
    std::string str() const;

    /// Numerator as long; only valid when it fits.
    long num_as_long() const { return mpz_get_si(mpq_numref(q_)); }
    bool num_fits_long() const { return mpz_fits_slong_p(mpq_numref(q_)) != 0; }

    const mpq_t& raw() const { return q_; }
    mpq_t& raw() { return q_; }

private:
    mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace dedelab
