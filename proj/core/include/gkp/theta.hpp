#pragma once

// Numerical canonical theta functions: basis construction from the Frobenius
// period matrix, automorphy verification, theta inner products, Gaussian
// envelope regularization, and the displacement (logical Pauli) action.
//
// Construction: with Frobenius vectors λ_i, μ_i and their complex forms
// L, M (columns), set A = M·D^{-1} and Ω = A^{-1}L (Siegel: symmetric with
// Im Ω ≻ 0 by the Riemann relations; A†A = (Im Ω)^{-1}). The basis element
// with label b is
//   f_b(z) = exp((π/2) zᵀRz) · Σ_k exp(iπ tᵀΩt + 2πi tᵀw),
//   t = k + D^{-1}b,  w = A^{-1}z,  R = conj(A)·A^{-1},
// which satisfies the canonical automorphy law for the standard
// semicharacter ν₀ exactly; a general ν is realized by displacing by the
// shift c solving ν = ν₀·e^{2πiE(c,·)}. The automorphy law itself is the
// constructor's postcondition and is re-verified numerically.

#include "gkp/code.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace gkp {

struct HermitianGram {
    Eigen::MatrixXcd entries;
    int grid = 0;
};

class ThetaBasis {
  public:
    GkpCode code;
    Eigen::MatrixXcd omega;     // n×n Siegel period matrix
    Eigen::VectorXd char_shift; // ambient c with ν = ν₀·e^{2πiE(c,·)}
    int trunc_radius = 0;
    std::vector<std::vector<long long>> labels; // b ∈ Zⁿ/DZⁿ

    int dim() const { return static_cast<int>(labels.size()); }

    // f_b at an ambient interleaved point (normalized to unit theta norm).
    std::complex<double> eval(int label, const Eigen::VectorXd &v) const;
    // Convenience overload taking the complex coordinates directly.
    std::complex<double> eval(int label, const Eigen::VectorXcd &z) const;

    // Implementation caches (filled by theta_basis).
    Eigen::MatrixXcd a_inv;  // w = a_inv·z
    Eigen::MatrixXcd r_form; // prefactor quadratic form
    Eigen::MatrixXd y_inv;   // (Im Ω)^{-1}
    std::vector<Eigen::VectorXd> label_shift; // D^{-1}b per label
    std::vector<double> norm_scale;
    std::vector<std::complex<double>> box_quad; // e^{iπδᵀΩδ} over the δ-box

  private:
    std::complex<double> eval_raw(int label, const Eigen::VectorXd &v) const;
};

ThetaBasis theta_basis(const GkpCode &code, double tol = 1e-8);

// Max sampled automorphy residual over `samples` seeded points and all
// Frobenius generators.
double automorphy_residual(const ThetaBasis &basis, int samples,
                           std::uint64_t seed);

// ⟨f_b, f_b'⟩_Θ by the periodic midpoint rule over a fundamental
// parallelepiped of Λ; throws GridTooCoarse if halving the grid moves any
// entry by more than tol (relative to the largest diagonal entry).
HermitianGram theta_gram(const ThetaBasis &basis, int grid, double tol = 1e-6);

// ⟨E_β f_b, E_β f_b'⟩_F via the compact-domain kernel identity with
// K_β(z) = Σ_λ e^{−πα|z+λ|²}, α = e^{2β} − 1.
HermitianGram envelope_gram(const ThetaBasis &basis, double beta, int grid,
                            double tol = 1e-6);

// For each β: deviation = max|c(β)·envelope_gram − theta_gram| / max|theta_gram|
// with c(β) = (1 − e^{−2β})ⁿ·det(Λ).
std::vector<std::pair<double, double>>
isometry_sweep(const GkpCode &code, const std::vector<double> &betas, int grid);

double isometry_conformal_factor(const GkpCode &code, double beta);

// Matrix M with p·f_b = Σ_b' M_{b'b} f_b', by Gram-weighted projection.
Eigen::MatrixXcd displacement_action(const ThetaBasis &basis,
                                     const PauliElement &p, int grid);

// Default per-axis quadrature resolution (256 for n=1, 48 for n=2).
int default_theta_grid(int n);

} // namespace gkp
