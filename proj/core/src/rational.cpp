#include "dedelab/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace dedelab {

namespace {

void mpz_set_int128(mpz_t z, __int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_set_ui(z, static_cast<unsigned long>(u >> 64));
    mpz_mul_2exp(z, z, 64);
    mpz_add_ui(z, z, static_cast<unsigned long>(u));
    if (neg) mpz_neg(z, z);
}

} // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    mpq_init(q_);
    mpq_set_si(q_, num, 1);
    mpz_set_si(mpq_denref(q_), den);
    if (den < 0) {
        mpz_neg(mpq_numref(q_), mpq_numref(q_));
        mpz_neg(mpq_denref(q_), mpq_denref(q_));
    }
    mpq_canonicalize(q_);
}

Rational Rational::from_u64(std::uint64_t v) {
    Rational r;
    mpq_set_ui(r.q_, v, 1);
    return r;
}

Rational Rational::from_int128(__int128 v) {
    Rational r;
    mpz_set_int128(mpq_numref(r.q_), v);
    return r;
}

Rational Rational::ratio128(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    Rational r;
    mpz_set_int128(mpq_numref(r.q_), num);
    mpz_set_int128(mpq_denref(r.q_), den);
    if (mpz_sgn(mpq_denref(r.q_)) < 0) {
        mpz_neg(mpq_numref(r.q_), mpq_numref(r.q_));
        mpz_neg(mpq_denref(r.q_), mpq_denref(r.q_));
    }
    mpq_canonicalize(r.q_);
    return r;
}

Rational Rational::int_pow(std::uint64_t base, std::uint64_t exp) {
    Rational r;
    mpz_ui_pow_ui(mpq_numref(r.q_), base, exp);
    return r;
}

Rational Rational::pow(const Rational& r, long exp) {
    Rational out(1L);
    unsigned long e = exp < 0 ? -static_cast<unsigned long>(exp) : static_cast<unsigned long>(exp);
    mpz_pow_ui(mpq_numref(out.q_), mpq_numref(r.q_), e);
    mpz_pow_ui(mpq_denref(out.q_), mpq_denref(r.q_), e);
    if (exp < 0) {
        if (mpz_sgn(mpq_numref(out.q_)) == 0)
            throw std::domain_error("Rational::pow: zero to negative power");
        mpq_inv(out.q_, out.q_);
    }
    // num/den stay coprime under powering; sign fix only.
    if (mpz_sgn(mpq_denref(out.q_)) < 0) {
        mpz_neg(mpq_numref(out.q_), mpq_numref(out.q_));
        mpz_neg(mpq_denref(out.q_), mpq_denref(out.q_));
    }
    return out;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    mpq_div(q_, q_, o.q_);
    return *this;
}

double Rational::log_abs() const {
    if (is_zero()) throw std::domain_error("Rational::log_abs of zero");
    long en, ed;
    double mn = mpz_get_d_2exp(&en, mpq_numref(q_));
    double md = mpz_get_d_2exp(&ed, mpq_denref(q_));
    return std::log(std::fabs(mn)) - std::log(md) + (en - ed) * std::log(2.0);
}

namespace {
std::string mpz_str(const mpz_t z) {
    std::vector<char> buf(mpz_sizeinbase(z, 10) + 2);
    mpz_get_str(buf.data(), 10, z);
    return std::string(buf.data());
}
} // namespace

std::string Rational::num_str() const { return mpz_str(mpq_numref(q_)); }
std::string Rational::den_str() const { return mpz_str(mpq_denref(q_)); }

std::string Rational::str() const {
    if (is_integer()) return num_str();
    return frac_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace dedelab
