#include "gkp/lattice.hpp"

#include "gkp/errors.hpp"

#include <cmath>

namespace gkp {

Eigen::MatrixXd symplectic_j(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        j(2 * k, 2 * k + 1) = 1.0;
        j(2 * k + 1, 2 * k) = -1.0;
    }
    return j;
}

GkpLattice lattice_from_basis(const Eigen::MatrixXd &basis, double tol) {
    if (basis.rows() != basis.cols() || basis.rows() % 2 != 0)
        throw InputError("basis must be square with even dimension");
    const int dim = static_cast<int>(basis.rows());
    const int n = dim / 2;

    GkpLattice lat;
    lat.n = n;
    lat.basis = basis;
    lat.gram_s = basis.transpose() * basis;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    if (!lu.isInvertible()) throw Singular("basis is rank-deficient");

    // Tolerance is relative to the largest squared column norm, so large
    // well-conditioned bases are not rejected for benign roundoff.
    double scale = 1.0;
    for (int j = 0; j < dim; ++j)
        scale = std::max(scale, basis.col(j).squaredNorm());
    const double eff_tol = tol * scale;

    Eigen::MatrixXd ge = basis.transpose() * symplectic_j(n) * basis;
    lat.gram_e = IMat(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double r = std::round(ge(i, j));
            if (std::abs(ge(i, j) - r) > eff_tol)
                throw NotSymplecticallyIntegral(
                    "E(b_" + std::to_string(i) + ", b_" + std::to_string(j) +
                    ") = " + std::to_string(ge(i, j)) + " is not integral");
            lat.gram_e(i, j) = BigInt(static_cast<long long>(r));
        }
    if (det(lat.gram_e) == 0)
        throw Singular("symplectic Gram is degenerate");
    return lat;
}

GkpLattice lattice_from_period_matrix(const Eigen::MatrixXcd &omega,
                                      const LatticeType &type, double tol) {
    const int n = static_cast<int>(omega.rows());
    if (omega.cols() != n || static_cast<int>(type.divisors.size()) != n)
        throw InputError("period matrix / type size mismatch");
    if ((omega - omega.transpose()).cwiseAbs().maxCoeff() > tol)
        throw NotSiegel("period matrix is not symmetric");
    Eigen::MatrixXd im = omega.imag();
    Eigen::LLT<Eigen::MatrixXd> llt(im);
    if (llt.info() != Eigen::Success)
        throw NotSiegel("Im(omega) is not positive definite");

    // C with CᵀC = (Im Ω)^{-1}: if Im Ω = LLᵀ then C = L^{-1} works.
    Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd c =
        l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));

    // Complex generators: columns of C·Ω then C·D.
    Eigen::MatrixXcd zgen(n, 2 * n);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        d(i, i) = static_cast<double>(type.divisors[i]);
    zgen.leftCols(n) = c * omega;
    zgen.rightCols(n) = (c * d).cast<std::complex<double>>();

    Eigen::MatrixXd basis(2 * n, 2 * n);
    for (int j = 0; j < 2 * n; ++j)
        basis.col(j) = realify(zgen.col(j));
    return lattice_from_basis(basis, tol);
}

SymplecticBasis frobenius_basis(const GkpLattice &lat) {
    FrobeniusForm f = frobenius_reduce(lat.gram_e);
    SymplecticBasis sb;
    sb.transform = f.u;
    sb.type.divisors = f.divisors;
    return sb;
}

Eigen::MatrixXd symplectic_dual(const GkpLattice &lat) {
    QMat inv = inverse(to_rational(lat.gram_e));
    const int dim = lat.dim();
    Eigen::MatrixXd invd(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            invd(i, j) = static_cast<double>(inv(i, j));
    return lat.basis * invd;
}

std::optional<std::vector<long long>>
member(const GkpLattice &lat, const Eigen::VectorXd &v, double tol) {
    Eigen::VectorXd x = lat.basis.fullPivLu().solve(v);
    std::vector<long long> coords(lat.dim());
    for (int i = 0; i < lat.dim(); ++i) {
        double r = std::round(x(i));
        if (std::abs(x(i) - r) > tol) return std::nullopt;
        coords[i] = static_cast<long long>(r);
    }
    Eigen::VectorXd xr(lat.dim());
    for (int i = 0; i < lat.dim(); ++i) xr(i) = static_cast<double>(coords[i]);
    if ((lat.basis * xr - v).norm() > tol * std::max(1.0, v.norm()))
        return std::nullopt;
    return coords;
}

Eigen::VectorXcd complexify(const Eigen::VectorXd &v) {
    const int n = static_cast<int>(v.size()) / 2;
    Eigen::VectorXcd z(n);
    for (int j = 0; j < n; ++j)
        z(j) = std::complex<double>(v(2 * j), -v(2 * j + 1));
    return z;
}

Eigen::VectorXd realify(const Eigen::VectorXcd &z) {
    const int n = static_cast<int>(z.size());
    Eigen::VectorXd v(2 * n);
    for (int j = 0; j < n; ++j) {
        v(2 * j) = z(j).real();
        v(2 * j + 1) = -z(j).imag();
    }
    return v;
}

} // namespace gkp
