#pragma once

// Symplectically integral lattices in R^{2n}: validation, Frobenius normal
// form, type, symplectic dual, membership.
//
// Coordinate convention (the single wire convention of this library):
// interleaved real coordinates (x_1, y_1, ..., x_n, y_n), symplectic form
// E(u,v) = Σ_i (x_i ỹ_i − y_i x̃_i), complex identification z_j = x_j − i y_j,
// Hermitian form H(z,w) = z·w̄ with E = Im H.

#include "gkp/exact.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace gkp {

struct LatticeType {
    std::vector<BigInt> divisors; // d_1 | d_2 | ... | d_n
    BigInt product() const {
        BigInt p(1);
        for (const auto &d : divisors) p *= d;
        return p;
    }
    bool is_principal() const {
        for (const auto &d : divisors)
            if (d != 1) return false;
        return true;
    }
};

struct SymplecticBasis {
    IMat transform; // unimodular U; new generators are basis·U
    LatticeType type;
};

struct GkpLattice {
    int n = 0;              // number of modes; ambient dimension 2n
    Eigen::MatrixXd basis;  // columns are generators
    IMat gram_e;            // exact antisymmetric symplectic Gram
    Eigen::MatrixXd gram_s; // Euclidean Gram basisᵀ·basis

    int dim() const { return 2 * n; }
    double covolume() const { return std::sqrt(gram_s.determinant()); }
};

// The standard symplectic matrix J of the interleaved layout, so that
// E(u,v) = uᵀ J v.
Eigen::MatrixXd symplectic_j(int n);

// Validate a raw basis: gram_E is the rounding of basisᵀJbasis, which must
// be integral within tol (scaled by the largest squared column norm).
GkpLattice lattice_from_basis(const Eigen::MatrixXd &basis, double tol = 1e-9);

// Lattice C·(ΩZⁿ + DZⁿ) in interleaved coordinates, CᵀC = (Im Ω)^{-1}.
GkpLattice lattice_from_period_matrix(const Eigen::MatrixXcd &omega,
                                      const LatticeType &type,
                                      double tol = 1e-9);

// Frobenius normal form of gram_E (exact integer arithmetic).
SymplecticBasis frobenius_basis(const GkpLattice &lat);

// Basis of Λ^⊥ = basis·gram_E^{-1} (exact rational inverse, then floats).
Eigen::MatrixXd symplectic_dual(const GkpLattice &lat);

// Integer coordinates of v in the lattice basis, if v ∈ Λ within tol.
std::optional<std::vector<long long>>
member(const GkpLattice &lat, const Eigen::VectorXd &v, double tol = 1e-9);

// Helper shared with svp/theta: complexify an interleaved real vector,
// z_j = v[2j] − i·v[2j+1].
Eigen::VectorXcd complexify(const Eigen::VectorXd &v);
Eigen::VectorXd realify(const Eigen::VectorXcd &z);

} // namespace gkp
