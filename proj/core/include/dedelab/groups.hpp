#pragma once

#include <span>
#include <vector>

#include "dedelab/numt.hpp"

namespace dedelab {

/// Subgroup of (Z/fZ)*, stored as the full sorted element list.
struct Subgroup {
    u64 modulus = 0;
    std::vector<u64> elements; // sorted, residues in [1, modulus)

    u64 order() const { return elements.size(); }
    bool contains(u64 r) const;
    bool contains_minus_one() const { return contains(modulus - 1); }
};

/// Preimage of a subgroup of (Z/fZ)* under (Z/(delta f)Z)* -> (Z/fZ)*.
struct LiftedSubgroup {
    Subgroup base;
    u64 delta = 1;
    Subgroup group; // modulus = delta * base.modulus

    u64 modulus() const { return group.modulus; }
    const std::vector<u64>& elements() const { return group.elements; }
};

/// The unique subgroup of order d of the cyclic group (Z/pZ)*,
/// generated from the smallest primitive root.  Requires p prime, d | p-1.
Subgroup subgroup_of_order(u64 p, u64 d);

/// Multiplicative closure of the given generators mod f (f >= 3).
Subgroup subgroup_from_generators(u64 f, std::span<const u64> gens);

Subgroup trivial_subgroup(u64 f);

/// CRT lift: all residues mod delta*f that reduce into H mod f and are
/// coprime to delta.  Requires gcd(delta, f) = 1 and delta squarefree.
LiftedSubgroup lift_subgroup(const Subgroup& H, u64 delta);

/// Same lift restricted to preimages of a residue subset of H
/// (used for sums over H_delta minus the identity fibre).
std::vector<u64> lift_residues(u64 f, u64 delta, std::span<const u64> residues);

inline bool minus_one_free(const Subgroup& H) { return !H.contains_minus_one(); }

} // namespace dedelab
