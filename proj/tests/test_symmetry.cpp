#include "gkp/code.hpp"
#include "gkp/errors.hpp"
#include "gkp/io.hpp"
#include "gkp/lattice.hpp"
#include "gkp/symmetry.hpp"

#include <doctest.h>

#include <cmath>

using namespace gkp;

namespace {

GkpCode square_code(double d) {
    return make_code_standard(
        lattice_from_basis(std::sqrt(d) * Eigen::MatrixXd::Identity(2, 2)));
}

GkpCode hex_code(double d) {
    double a = std::sqrt(2.0 * d / std::sqrt(3.0));
    Eigen::MatrixXd b(2, 2);
    b << a, a / 2.0, 0.0, a * std::sqrt(3.0) / 2.0;
    return make_code_standard(lattice_from_basis(b));
}

bool contains_u(const std::vector<PassiveAutomorphism> &g, const IMat &u) {
    for (const auto &a : g)
        if (a.u_matrix == u) return true;
    return false;
}

} // namespace

TEST_CASE("square code: automorphism group of order 4") {
    auto c = square_code(2.0);
    auto g = passive_automorphisms(c);
    CHECK(g.size() == 4);
    CHECK(contains_u(g, IMat::identity(2)));
    IMat neg = IMat::identity(2);
    neg(0, 0) = -1;
    neg(1, 1) = -1;
    CHECK(contains_u(g, neg));
    for (const auto &a : g) {
        // orthogonal and symplectic in the ambient picture
        Eigen::MatrixXd m = a.ambient;
        CHECK((m.transpose() * m - Eigen::MatrixXd::Identity(2, 2))
                  .cwiseAbs()
                  .maxCoeff() < 1e-9);
        Eigen::MatrixXd j = symplectic_j(1);
        CHECK((m.transpose() * j * m - j).cwiseAbs().maxCoeff() < 1e-9);
        // exact invariance of the symplectic Gram
        CHECK(a.u_matrix.transpose() * c.lattice.gram_e * a.u_matrix ==
              c.lattice.gram_e);
    }
}

TEST_CASE("hexagonal codes: order 6, image 3 or 6 depending on type") {
    auto h2 = hex_code(2.0);
    auto g2 = passive_automorphisms(h2);
    CHECK(g2.size() == 6);
    auto act2 = sp_k_image(h2, g2);
    CHECK(act2.image_order == 3);
    CHECK(act2.kernel_order == 2);

    auto h3 = hex_code(3.0);
    auto g3 = passive_automorphisms(h3);
    CHECK(g3.size() == 6);
    auto act3 = sp_k_image(h3, g3);
    CHECK(act3.image_order == 6);
    CHECK(act3.kernel_order == 1); // d1 >= 3: the action is injective
}

TEST_CASE("generic lattice has only ±identity") {
    Eigen::MatrixXd b(2, 2);
    b << 1.37, 0.21, 0.0, 3.0 / 1.37;
    auto c = make_code_standard(lattice_from_basis(b));
    auto g = passive_automorphisms(c);
    CHECK(g.size() == 2);
}

TEST_CASE("group closure under composition") {
    auto c = hex_code(2.0);
    auto g = passive_automorphisms(c);
    for (const auto &a : g)
        for (const auto &b : g) CHECK(contains_u(g, a.u_matrix * b.u_matrix));
}

TEST_CASE("sp_k action matrices preserve omega on K") {
    auto c = hex_code(3.0);
    auto g = passive_automorphisms(c);
    auto act = sp_k_image(c, g);
    REQUIRE(act.matrices.size() == g.size());
    std::vector<long long> divs = {3};
    for (const auto &phi : act.matrices) CHECK(sp_k_check(divs, phi));
    CHECK(act.image_order * act.kernel_order ==
          static_cast<long long>(g.size()));
}

TEST_CASE("u_shift vanishes for the standard semicharacter on square autos") {
    auto c = square_code(2.0);
    auto g = passive_automorphisms(c);
    for (const auto &a : g) CHECK(u_shift(c, a).norm() < 1e-9);
}

TEST_CASE("u_shift realizes the semicharacter twist") {
    // nontrivial semicharacter on the square lattice
    auto lat = lattice_from_basis(std::sqrt(2.0) *
                                  Eigen::MatrixXd::Identity(2, 2));
    Semicharacter nu;
    nu.base_phases = {Turn(Rat(1, 2)), Turn()};
    auto c = make_code(lat, nu);
    auto g = passive_automorphisms(c);
    Eigen::MatrixXd j = symplectic_j(1);
    for (const auto &a : g) {
        Eigen::VectorXd u = u_shift(c, a);
        for (int i = 0; i < 2; ++i) {
            Eigen::VectorXd lam = c.lattice.basis.col(i);
            Eigen::VectorXd mlam = a.ambient * lam;
            auto coords = member(c.lattice, mlam);
            REQUIRE(coords.has_value());
            std::vector<BigInt> mc = {BigInt((*coords)[0]),
                                      BigInt((*coords)[1])};
            std::vector<BigInt> lc = {BigInt(i == 0), BigInt(i == 1)};
            Turn want = semicharacter_eval(c, mc) - semicharacter_eval(c, lc);
            double e = u.transpose() * j * mlam;
            double got = e - std::floor(e);
            double w = static_cast<double>(want.value());
            CHECK(std::abs(got - w) *
                      std::abs(got - w - 1) * std::abs(got - w + 1) <
                  1e-6);
        }
    }
}

// Long-running (minutes): enable by removing the skip decorator.
TEST_CASE("klein quartic automorphisms" * doctest::skip(true)) {
    auto c = gallery_entry("klein-quartic").code;
    auto g = passive_automorphisms(c, 10 * kDefaultAutNodeBudget);
    CHECK(g.size() == 336);
    auto act = sp_k_image(c, g);
    CHECK(act.image_order == 168);
}

TEST_CASE("node budget raises BudgetExceeded") {
    auto c = hex_code(2.0);
    CHECK_THROWS_AS(passive_automorphisms(c, 3), BudgetExceeded);
}
