#include "gkp/errors.hpp"
#include "gkp/lattice.hpp"

#include <doctest.h>

#include <cmath>

using namespace gkp;

namespace {

Eigen::MatrixXd hex_basis(double d) {
    double a = std::sqrt(2.0 * d / std::sqrt(3.0));
    Eigen::MatrixXd b(2, 2);
    b << a, a / 2.0, 0.0, a * std::sqrt(3.0) / 2.0;
    return b;
}

} // namespace

TEST_CASE("square lattice: type, covolume, frobenius basis") {
    auto lat = lattice_from_basis(std::sqrt(2.0) *
                                  Eigen::MatrixXd::Identity(2, 2));
    CHECK(lat.n == 1);
    SymplecticBasis sb = frobenius_basis(lat);
    REQUIRE(sb.type.divisors.size() == 1);
    CHECK(sb.type.divisors[0] == 2);
    CHECK(lat.covolume() == doctest::Approx(2.0).epsilon(1e-12));
    // E(λ, μ) = d on the Frobenius basis
    Eigen::MatrixXd t(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            t(i, j) = static_cast<double>(sb.transform(i, j).convert_to<long long>());
    Eigen::MatrixXd f = lat.basis * t;
    double e = f(0, 0) * f(1, 1) - f(1, 0) * f(0, 1);
    CHECK(e == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("non-integral symplectic pairings are rejected") {
    Eigen::MatrixXd b(2, 2);
    b << 1.0, 0.0, 0.0, 1.3;
    CHECK_THROWS_AS(lattice_from_basis(b), NotSymplecticallyIntegral);
    Eigen::MatrixXd sing(2, 2);
    sing << 1.0, 2.0, 1.0, 2.0;
    CHECK_THROWS_AS(lattice_from_basis(sing), Singular);
}

TEST_CASE("odd dimension is rejected") {
    Eigen::MatrixXd b = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(lattice_from_basis(b), InputError);
}

TEST_CASE("symplectic dual and membership") {
    auto lat = lattice_from_basis(std::sqrt(2.0) *
                                  Eigen::MatrixXd::Identity(2, 2));
    Eigen::MatrixXd dual = symplectic_dual(lat);
    // dual covolume = covol/|K| = 2/4
    CHECK(std::abs(dual.determinant()) == doctest::Approx(0.5).epsilon(1e-12));
    Eigen::VectorXd v(2);
    v << std::sqrt(2.0), 0.0;
    CHECK(member(lat, v).has_value());
    v << 1.0 / std::sqrt(2.0), 0.0;
    CHECK_FALSE(member(lat, v).has_value());
}

TEST_CASE("hexagonal lattice types") {
    CHECK(frobenius_basis(lattice_from_basis(hex_basis(2))).type.divisors[0] == 2);
    CHECK(frobenius_basis(lattice_from_basis(hex_basis(3))).type.divisors[0] == 3);
}

TEST_CASE("period matrix roundtrip: Siegel point reproduces type and shape") {
    Eigen::MatrixXcd omega(1, 1);
    omega(0, 0) = std::complex<double>(0.5, std::sqrt(3.0) / 2.0);
    LatticeType ty;
    ty.divisors = {BigInt(2)};
    auto lat = lattice_from_period_matrix(omega, ty);
    CHECK(frobenius_basis(lat).type.divisors[0] == 2);
    CHECK(lat.covolume() == doctest::Approx(2.0).epsilon(1e-9));
    // generators: λ = Ω/√y, μ = d/√y in the z = x − iy identification
    Eigen::VectorXcd z0 = complexify(lat.basis.col(0));
    Eigen::VectorXcd z1 = complexify(lat.basis.col(1));
    double y = std::sqrt(3.0) / 2.0;
    CHECK(std::abs(z1(0) - 2.0 / std::sqrt(y)) < 1e-9);
    CHECK(std::abs(z0(0) * std::conj(z1(0)) -
                   std::complex<double>(0.5, y) * 2.0 / y) < 1e-9);
}

TEST_CASE("period matrix rejects non-Siegel input") {
    Eigen::MatrixXcd omega(1, 1);
    omega(0, 0) = std::complex<double>(0.5, -1.0);
    LatticeType ty;
    ty.divisors = {BigInt(2)};
    CHECK_THROWS_AS(lattice_from_period_matrix(omega, ty), NotSiegel);
    Eigen::MatrixXcd bad(2, 2);
    bad << std::complex<double>(0, 1), std::complex<double>(0.3, 0),
        std::complex<double>(0.7, 0), std::complex<double>(0, 1);
    LatticeType ty2;
    ty2.divisors = {BigInt(1), BigInt(2)};
    CHECK_THROWS_AS(lattice_from_period_matrix(bad, ty2), NotSiegel);
}

TEST_CASE("complexify/realify are mutually inverse") {
    Eigen::VectorXd v(4);
    v << 0.3, -1.2, 2.5, 0.75;
    CHECK((realify(complexify(v)) - v).cwiseAbs().maxCoeff() == 0.0);
    // z = x − iy per coordinate pair
    auto z = complexify(v);
    CHECK(z(0) == std::complex<double>(0.3, 1.2));
    CHECK(z(1) == std::complex<double>(2.5, -0.75));
}
