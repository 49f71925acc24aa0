#pragma once

// Displacement-noise models, maximum-likelihood (MLD) and maximum-energy
// (MED) decoding, robustness/fragility estimation by Monte Carlo and by
// deterministic quadrature, the analytic union bound, and the systolic
// small-noise asymptotic.

#include "gkp/code.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>

namespace gkp {

struct NoiseModel {
    enum class Kind { gaussian, uniform };
    Kind kind = Kind::gaussian;
    double sigma = 0.0; // gaussian only

    static NoiseModel gaussian(double sigma);
    static NoiseModel uniform();
};

struct DecoderReport {
    double estimate = 0.0;
    double ci_low = 0.0;  // 95% Wilson interval (== estimate for quadrature)
    double ci_high = 0.0;
    long long samples_or_grid = 0;
    std::string decoder; // "mld" | "med"
    std::optional<double> analytic_bound; // union-bound fragility (gaussian)
    std::optional<double> leading_term;   // systolic asymptotic (gaussian)
};

// Λ-periodized Gaussian density F_σ(v) = Σ_{λ∈Λ} f_σ(v+λ), truncated to
// |v+λ| ≤ |v+λ*| + σ·(√(2 ln 1/eps) + 6) with λ* the closest lattice point
// to −v; relative truncation error < eps.
double periodized_density(const GkpCode &code, const Eigen::VectorXd &v,
                          double sigma, double eps);

// True iff the Λ-coset of v wins the likelihood comparison against all
// other cosets of K = Λ^⊥/Λ. Ties (relative difference < 1e-12) go to the
// candidate whose minimal-norm coset representative is smaller in norm,
// then lexicographically smaller.
bool mld_success(const GkpCode &code, const Eigen::VectorXd &v, double sigma);

// True iff the closest vector of Λ^⊥ to v lies in Λ.
bool med_success(const GkpCode &code, const Eigen::VectorXd &v);

// Monte Carlo robustness: i.i.d. displacements, success counting, Wilson
// 95% interval. Deterministic for fixed seed regardless of thread count
// (counter-based per-sample randomness, integer success totals).
DecoderReport robustness_mc(const GkpCode &code, const NoiseModel &noise,
                            const std::string &decoder, long long samples,
                            std::uint64_t seed, int threads = 1);

// Deterministic midpoint quadrature of ∫_{V/Λ^⊥} max_k F_σ(y+μ_k) dy over a
// fundamental parallelepiped of Λ^⊥ (per-axis resolution `grid`); throws
// GridTooCoarse when halving the grid moves the value by > 1e-4 relative.
DecoderReport robustness_quadrature(const GkpCode &code, double sigma,
                                    int grid, int threads = 1);
// Noise-model overload; for uniform noise the integrand is exactly constant
// and the value covol(Λ^⊥)/covol(Λ) = 1/|K| is returned.
DecoderReport robustness_quadrature(const GkpCode &code,
                                    const NoiseModel &noise, int grid,
                                    int threads = 1);

// Union bound ℱ_σ(Λ) ≤ (2σ/√(2π)) Σ_{μ∈Λ^⊥∖Λ} |μ|^{-1} e^{−|μ|²/8σ²},
// truncated at cutoff_radius with a rigorous integral-comparison tail added.
double fragility_bound(const GkpCode &code, double sigma,
                       double cutoff_radius);

// Systolic leading term (2N(Λ)σ)/(ℓ(Λ)√(2π)) · e^{−ℓ(Λ)²/8σ²}.
double fragility_leading(const GkpCode &code, double sigma);

} // namespace gkp
