#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dedelab/groups.hpp"
#include "dedelab/numt.hpp"

namespace dedelab {

/// One cyclic factor of (Z/fZ)*: reads a residue mod `piece` and maps it
/// to the discrete log of its projection, kNoLog for non-units.
struct CyclicComponent {
    u64 piece = 1;
    u64 order = 1;
    u64 generator = 1;
    std::vector<u32> dlog;
};

inline constexpr u32 kNoLog = 0xffffffffu;

/// Structure of (Z/fZ)* as a product of cyclic groups (CRT over prime
/// powers; <-1> x <5> at powers of two).  Shared by all characters mod f.
class CharacterGroup {
public:
    explicit CharacterGroup(u64 f);

    u64 modulus() const { return modulus_; }
    u64 num_characters() const { return phi_; }
    /// lcm of the component orders (group exponent).
    u64 exponent() const { return exponent_; }
    const std::vector<CyclicComponent>& components() const { return components_; }

    /// k with chi(a) = zeta_exponent^k for the character with the given
    /// component exponents; nullopt when gcd(a, f) > 1.
    std::optional<u64> chi_exponent(std::span<const u32> exps, u64 a) const;

    std::complex<double> root(u64 k) const { return roots_[k % exponent_]; }
    std::complex<long double> root_ld(u64 k) const { return roots_ld_[k % exponent_]; }

private:
    u64 modulus_;
    u64 phi_ = 1;
    u64 exponent_ = 1;
    bool even_modulus_ = false;
    std::vector<CyclicComponent> components_;
    std::vector<std::complex<double>> roots_;
    std::vector<std::complex<long double>> roots_ld_;
};

/// Dirichlet character mod f as an exponent vector on the cyclic
/// components, extended by zero off the units.
class Character {
public:
    Character(std::shared_ptr<const CharacterGroup> group, std::vector<u32> exps);

    u64 modulus() const { return group_->modulus(); }
    const CharacterGroup& group() const { return *group_; }
    const std::vector<u32>& exponents() const { return exps_; }

    /// +1 or -1 = chi(-1).
    int parity() const { return parity_; }
    bool is_odd() const { return parity_ == -1; }
    bool is_principal() const;

    std::optional<u64> value_exponent(u64 a) const { return group_->chi_exponent(exps_, a); }
    std::complex<double> value(u64 a) const;
    std::complex<long double> value_ld(u64 a) const;

    bool is_trivial_on(std::span<const u64> residues) const;

    /// Smallest modulus the character is induced from.
    u64 conductor() const;
    bool is_primitive() const { return conductor() == modulus(); }

private:
    std::shared_ptr<const CharacterGroup> group_;
    std::vector<u32> exps_;
    int parity_;
};

/// All phi(f) Dirichlet characters mod f.
std::vector<Character> characters(u64 f);

enum class Parity { even, odd, any };

/// Characters mod f trivial on H with the given parity.  Requires
/// -1 not in H when asking for the odd ones.
std::vector<Character> characters_trivial_on(u64 f, const Subgroup& H, Parity parity);

/// Residues a mod f on which every listed character equals 1.
std::vector<u64> common_kernel(u64 f, std::span<const Character> chars);

} // namespace dedelab
