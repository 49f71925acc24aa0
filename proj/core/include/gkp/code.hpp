#pragma once

// The full code datum (Λ, ν): semicharacter algebra, the finite symplectic
// group K = Λ^⊥/Λ, and exact Pauli element arithmetic.
//
// All phases are exact rational turns; complex numbers appear only at the
// numeric boundary.

#include "gkp/exact.hpp"
#include "gkp/lattice.hpp"

#include <vector>

namespace gkp {

struct Semicharacter {
    // ν(s_i) = e^{2πi·base_phases[i]} on the lattice generators (basis order).
    std::vector<Turn> base_phases;
};

// ν ≡ 1 on all generators (base phases zero).
Semicharacter semicharacter_standard(const GkpLattice &lat);

struct GkpCode {
    GkpLattice lattice;
    Semicharacter nu;
    SymplecticBasis sympl; // cached Frobenius data

    // Derived caches (filled by make_code):
    IMat gram_frob;                  // UᵀGU, the standard-form E-Gram
    std::vector<Turn> nu_frob;       // ν on the Frobenius generators
    Eigen::MatrixXd frob_basis;      // basis·U, columns λ_1..λ_n, μ_1..μ_n
    Eigen::MatrixXd dual_basis;      // (λ_i/d_i, μ_i/d_i): Λ = diag(D,D)Z^{2n}
    std::vector<long long> divisors; // type as machine integers
    long long exponent = 1;          // m = d_n
    BigInt k_order;                  // |K| = (Πd_i)²

    int n() const { return lattice.n; }
    int dim() const { return lattice.dim(); }
};

GkpCode make_code(const GkpLattice &lat, const Semicharacter &nu);
GkpCode make_code_standard(const GkpLattice &lat);

// ν(λ) for λ = Σ coords_i·s_i via the closed form
// ν(Σ m_i s_i) = Π ν(s_i)^{m_i} · e^{iπ Σ_{i<j} m_i m_j gram_E[i][j]}.
Turn semicharacter_eval(const GkpCode &code, const std::vector<BigInt> &coords);

// Same, but coords are in the Frobenius generator basis.
Turn semicharacter_eval_frob(const GkpCode &code,
                             const std::vector<BigInt> &coords);

struct QuotientGroup {
    std::vector<long long> divisors;
    // Coset representatives (a_1..a_n, b_1..b_n), 0 ≤ a_i,b_i < d_i, as
    // integer coordinates in the canonical dual basis (λ_i/d_i, μ_i/d_i).
    std::vector<std::vector<long long>> reps;
    long long exponent;
};

QuotientGroup quotient_group(const GkpCode &code);

// Exact value of E(x, y) for x, y given in canonical dual coordinates:
// E = Σ_i (a_i v_i − b_i u_i)/d_i.
Rat dual_e(const GkpCode &code, const std::vector<BigInt> &x,
           const std::vector<BigInt> &y);

// ω([x],[y]) = e^{−2πi E(x,y)} on K, exact turns.
Turn commutator(const GkpCode &code, const std::vector<long long> &x,
                const std::vector<long long> &y);

// ω_D on the standard group K_D: exp(2πi Σ_j (b_j u_j − a_j v_j)/d_j) for
// x = (a,b), y = (u,v).
Turn omega_standard(const std::vector<long long> &divisors,
                    const std::vector<long long> &x,
                    const std::vector<long long> &y);

// Pauli element [μ, α]: μ ∈ Λ^⊥ stored by its integer coordinates in the
// canonical dual basis, α = e^{2πi·alpha}.
struct PauliElement {
    std::vector<BigInt> dual_coords;
    Turn alpha;

    bool operator==(const PauliElement &o) const {
        return dual_coords == o.dual_coords && alpha == o.alpha;
    }
};

PauliElement pauli_identity(const GkpCode &code);

// Ambient vector of p.mu.
Eigen::VectorXd pauli_vector(const GkpCode &code, const PauliElement &p);

// Build from an ambient vector; throws NotInDual if mu ∉ Λ^⊥.
PauliElement pauli_from_vector(const GkpCode &code, const Eigen::VectorXd &mu,
                               const Turn &alpha, double tol = 1e-9);

// Canonical coset representative form: dual coords reduced mod diag(D,D)
// into [0, d_i) per axis, phase twisted through the Λ_ν quotient.
PauliElement pauli_reduce(const GkpCode &code, const PauliElement &p);

// Lemma condition α^{2m} = ν(mμ)^{-2}, exact turn arithmetic.
bool pauli_check(const GkpCode &code, const PauliElement &p);

PauliElement pauli_mul(const GkpCode &code, const PauliElement &p,
                       const PauliElement &q);
PauliElement pauli_inverse(const GkpCode &code, const PauliElement &p);

// φ preserves the group structure of K_D and ω_D (exhaustive check; the
// groups involved here are small).
bool sp_k_check(const std::vector<long long> &divisors, const IMat &phi);

} // namespace gkp
