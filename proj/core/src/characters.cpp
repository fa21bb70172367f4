#include "dedelab/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "dedelab/error.hpp"

namespace dedelab {

namespace {

CyclicComponent odd_prime_power_component(u64 p, int e) {
    u64 piece = p;
    for (int i = 1; i < e; ++i) piece *= p;
    u64 g = smallest_primitive_root(p);
    if (e >= 2 && pow_mod(g, p - 1, p * p) == 1) g += p;
    CyclicComponent c;
    c.piece = piece;
    c.order = piece / p * (p - 1);
    c.generator = g;
    c.dlog.assign(piece, kNoLog);
    u64 x = 1;
    for (u64 j = 0; j < c.order; ++j) {
        c.dlog[x] = static_cast<u32>(j);
        x = mul_mod(x, g, piece);
    }
    return c;
}

} // namespace

CharacterGroup::CharacterGroup(u64 f) : modulus_(f) {
    if (f < 2) fail(errc::bad_argument, "character modulus must be >= 2");
    even_modulus_ = f % 2 == 0;
    Factorization fac = factorize(f);
    for (const auto& [p, e] : fac.factors) {
        if (p == 2) {
            if (e == 1) continue; // (Z/2Z)* is trivial
            u64 piece = 1ull << e;
            if (e == 2) {
                CyclicComponent c;
                c.piece = 4;
                c.order = 2;
                c.generator = 3;
                c.dlog.assign(4, kNoLog);
                c.dlog[1] = 0;
                c.dlog[3] = 1;
                components_.push_back(std::move(c));
            } else {
                CyclicComponent sign;
                sign.piece = piece;
                sign.order = 2;
                sign.generator = piece - 1;
                sign.dlog.assign(piece, kNoLog);
                CyclicComponent five;
                five.piece = piece;
                five.order = piece / 4;
                five.generator = 5;
                five.dlog.assign(piece, kNoLog);
                u64 x = 1;
                for (u64 j = 0; j < five.order; ++j) {
                    sign.dlog[x] = 0;
                    five.dlog[x] = static_cast<u32>(j);
                    sign.dlog[piece - x] = 1;
                    five.dlog[piece - x] = static_cast<u32>(j);
                    x = mul_mod(x, 5, piece);
                }
                components_.push_back(std::move(sign));
                components_.push_back(std::move(five));
            }
        } else {
            components_.push_back(odd_prime_power_component(p, e));
        }
    }
    for (const auto& c : components_) {
        phi_ *= c.order;
        exponent_ = std::lcm(exponent_, c.order);
    }
    roots_.resize(exponent_);
    roots_ld_.resize(exponent_);
    const long double tau = 2.0L * std::numbers::pi_v<long double>;
    for (u64 k = 0; k < exponent_; ++k) {
        long double ang = tau * static_cast<long double>(k) / static_cast<long double>(exponent_);
        roots_ld_[k] = {std::cos(ang), std::sin(ang)};
        roots_[k] = {static_cast<double>(roots_ld_[k].real()), static_cast<double>(roots_ld_[k].imag())};
    }
}

std::optional<u64> CharacterGroup::chi_exponent(std::span<const u32> exps, u64 a) const {
    a %= modulus_;
    if (even_modulus_ && a % 2 == 0) return std::nullopt;
    u64 k = 0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const CyclicComponent& c = components_[i];
        u32 dl = c.dlog[a % c.piece];
        if (dl == kNoLog) return std::nullopt;
        k = (k + static_cast<u64>(exps[i]) * dl % c.order * (exponent_ / c.order)) % exponent_;
    }
    return k;
}

Character::Character(std::shared_ptr<const CharacterGroup> group, std::vector<u32> exps)
    : group_(std::move(group)), exps_(std::move(exps)) {
    auto k = group_->chi_exponent(exps_, group_->modulus() - 1);
    if (!k) fail(errc::bad_argument, "-1 must be a unit");
    parity_ = *k == 0 ? 1 : -1;
}

bool Character::is_principal() const {
    for (u32 e : exps_)
        if (e != 0) return false;
    return true;
}

std::complex<double> Character::value(u64 a) const {
    auto k = value_exponent(a);
    return k ? group_->root(*k) : std::complex<double>{};
}

std::complex<long double> Character::value_ld(u64 a) const {
    auto k = value_exponent(a);
    return k ? group_->root_ld(*k) : std::complex<long double>{};
}

bool Character::is_trivial_on(std::span<const u64> residues) const {
    for (u64 r : residues) {
        auto k = value_exponent(r);
        if (!k || *k != 0) return false;
    }
    return true;
}

u64 Character::conductor() const {
    const u64 f = modulus();
    for (u64 d : divisors(factorize(f))) {
        // chi is induced from modulus d iff it is trivial on units = 1 (mod d).
        bool trivial = true;
        for (u64 a = 1 + d; a < f && trivial; a += d) {
            auto k = value_exponent(a);
            if (k && *k != 0) trivial = false;
        }
        if (trivial) return d;
    }
    return f;
}

std::vector<Character> characters(u64 f) {
    auto group = std::make_shared<const CharacterGroup>(f);
    const auto& comps = group->components();
    std::vector<Character> out;
    out.reserve(group->num_characters());
    std::vector<u32> exps(comps.size(), 0);
    while (true) {
        out.emplace_back(group, exps);
        std::size_t i = 0;
        for (; i < comps.size(); ++i) {
            if (++exps[i] < comps[i].order) break;
            exps[i] = 0;
        }
        if (i == comps.size()) break;
    }
    return out;
}

std::vector<Character> characters_trivial_on(u64 f, const Subgroup& H, Parity parity) {
    if (H.modulus != f) fail(errc::bad_argument, "subgroup modulus mismatch");
    if (parity == Parity::odd && H.contains_minus_one())
        fail(errc::minus_one_in_subgroup, "no odd characters are trivial on H when -1 is in H");
    std::vector<Character> out;
    for (Character& chi : characters(f)) {
        if (parity == Parity::odd && !chi.is_odd()) continue;
        if (parity == Parity::even && chi.is_odd()) continue;
        if (chi.is_trivial_on(H.elements)) out.push_back(std::move(chi));
    }
    return out;
}

std::vector<u64> common_kernel(u64 f, std::span<const Character> chars) {
    std::vector<u64> out;
    for (u64 a = 1; a < f; ++a) {
        if (std::gcd(a, f) != 1) continue;
        bool in = true;
        for (const Character& chi : chars) {
            auto k = chi.value_exponent(a);
            if (!k || *k != 0) {
                in = false;
                break;
            }
        }
        if (in) out.push_back(a);
    }
    return out;
}

} // namespace dedelab
