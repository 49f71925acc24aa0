#pragma once

// Passive lattice automorphisms (simultaneously orthogonal, symplectic, and
// lattice-preserving maps) and their induced action on K = Λ^⊥/Λ, together
// with the semicharacter twist vector u_M of each automorphism.

#include "gkp/code.hpp"

#include <Eigen/Dense>

#include <vector>

namespace gkp {

struct PassiveAutomorphism {
    IMat u_matrix;           // action on lattice coordinates, UᵀGU = G exactly
    Eigen::MatrixXd ambient; // M = basis·U·basis⁻¹, orthogonal and symplectic
};

struct SpKAction {
    // Per input automorphism: action on canonical dual coordinates of K
    // (integer matrix, well defined modulo diag(D,D)).
    std::vector<IMat> matrices;
    long long image_order = 0;
    long long kernel_order = 0;
};

inline constexpr long long kDefaultAutNodeBudget = 50000000;

// The full finite group of passive automorphisms by backtracking over short
// vectors of matching S-norm with exact E-inner-product constraints.
// Deterministic order (lexicographic in U). Requires 2n ≤ 8.
std::vector<PassiveAutomorphism>
passive_automorphisms(const GkpCode &code,
                      long long node_budget = kDefaultAutNodeBudget);

// Induced action of each automorphism on K, its image order after
// deduplication, and the order of the pointwise-fixing kernel.
SpKAction sp_k_image(const GkpCode &code,
                     const std::vector<PassiveAutomorphism> &autos);

// The vector u_M with ν(Mλ)/ν(λ) = e^{2πi E(u_M, Mλ)}, as the canonical
// representative in the fundamental parallelepiped of Λ^⊥.
Eigen::VectorXd u_shift(const GkpCode &code, const PassiveAutomorphism &aut);

} // namespace gkp
