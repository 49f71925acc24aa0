#pragma once

// Concatenation with a finite stabilizer group as a lattice isogeny:
// Λ ⊂ Λ_S ⊂ Λ^⊥ with the extended semicharacter ν_S.

#include "gkp/code.hpp"

#include <vector>

namespace gkp {

struct StabilizerSpec {
    std::vector<PauliElement> generators;
};

struct IsogenyReport {
    GkpCode new_code;
    BigInt index;                      // |Λ_S/Λ|
    std::vector<BigInt> kernel_divisors; // elementary divisors of Λ_S/Λ (>1)
    LatticeType old_type;
    LatticeType new_type;
};

// Verifies Pauli membership, exact pairwise commutation (E ∈ Z), and global
// phase consistency by closing the generated group; returns the spec with
// all generators in reduced canonical form.
// Throws NotPauli, NotCommuting, InconsistentPhases.
StabilizerSpec validate_stabilizer(const GkpCode &code,
                                   const StabilizerSpec &spec);

// Builds Λ_S = Λ + Σ Z·μ_j (Hermite normal form over exact integers in the
// canonical dual coordinates) with ν_S(μ) = α^{-1} for [μ, α] ∈ S, and
// returns the fully validated new code plus the isogeny bookkeeping.
IsogenyReport concatenate(const GkpCode &code, const StabilizerSpec &spec);

} // namespace gkp
