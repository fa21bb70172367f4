#pragma once

#include <stdexcept>
#include <string>

namespace dedelab {

enum class errc {
    not_coprime,
    zero_modulus,
    modulus_too_large_for_oracle,
    input_too_large,
    not_prime,
    order_does_not_divide,
    not_square_free,
    not_coprime_moduli,
    minus_one_in_subgroup,
    family_not_covered,
    degree_parity,
    even_character,
    not_primitive,
    bad_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_coprime: return "NotCoprime";
        case errc::zero_modulus: return "ZeroModulus";
        case errc::modulus_too_large_for_oracle: return "ModulusTooLargeForOracle";
        case errc::input_too_large: return "InputTooLarge";
        case errc::not_prime: return "NotPrime";
        case errc::order_does_not_divide: return "OrderDoesNotDivide";
        case errc::not_square_free: return "NotSquareFree";
        case errc::not_coprime_moduli: return "NotCoprimeModuli";
        case errc::minus_one_in_subgroup: return "MinusOneInSubgroup";
        case errc::family_not_covered: return "FamilyNotCovered";
        case errc::degree_parity: return "DegreeParityError";
        case errc::even_character: return "EvenCharacter";
        case errc::not_primitive: return "NotPrimitive";
        case errc::bad_argument: return "BadArgument";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace dedelab
