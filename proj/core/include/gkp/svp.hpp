#pragma once

// Lattice enumeration: LLL preprocessing, shortest/closest vector
// enumeration (Fincke–Pohst), and the systolic invariants ℓ(Λ), N(Λ).

#include "gkp/code.hpp"
#include "gkp/lattice.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

namespace gkp {

struct ShortVectorList {
    // (integer coordinates, squared norm), sorted by norm ascending, both
    // signs included; complete for the stated radius.
    std::vector<std::pair<std::vector<long long>, double>> entries;
    double radius = 0.0;
};

inline constexpr long long kDefaultNodeCap = 100000000;

// Unimodular transform to a Lovász-reduced basis (δ = 0.99) of the lattice
// with the given Euclidean Gram.
IMat lll_reduce(const Eigen::MatrixXd &gram);

// All nonzero lattice vectors with |v| ≤ radius, as coordinates w.r.t. the
// Gram's basis.
ShortVectorList enumerate_short(const Eigen::MatrixXd &gram, double radius,
                                long long node_cap = kDefaultNodeCap);
ShortVectorList enumerate_short(const GkpLattice &lat, double radius,
                                long long node_cap = kDefaultNodeCap);

// Norm of a shortest nonzero vector of the Gram's lattice.
double lambda1(const Eigen::MatrixXd &gram,
               long long node_cap = kDefaultNodeCap);

// Closest lattice point to `target_coords` (real coordinates in the Gram's
// basis). Ties (relative squared-distance difference < 1e-12) are broken by
// lexicographic order on the integer coordinates.
std::pair<std::vector<long long>, double>
closest_coords(const Eigen::MatrixXd &gram, const Eigen::VectorXd &target_coords,
               long long node_cap = kDefaultNodeCap);

// Same, with an ambient target; returns (lattice vector, squared distance).
std::pair<Eigen::VectorXd, double>
closest_vector(const GkpLattice &lat, const Eigen::VectorXd &target,
               long long node_cap = kDefaultNodeCap);

struct SystoleReport {
    double ell = 0.0;          // ℓ(Λ) = min{|μ| : μ ∈ Λ^⊥∖Λ}
    long long count = 0;       // N(Λ), both signs counted
    double lambda1_lattice = 0.0;
    double lambda1_dual = 0.0;
    std::vector<Eigen::VectorXd> minimizers;
    // Minimizers as integer coordinates in the canonical dual basis.
    std::vector<std::vector<long long>> minimizer_dual_coords;
};

SystoleReport systole_report(const GkpCode &code,
                             long long node_cap = kDefaultNodeCap);

} // namespace gkp
