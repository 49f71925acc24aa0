#include "gkp/decode.hpp"
#include "gkp/errors.hpp"
#include "gkp/lattice.hpp"
#include "gkp/svp.hpp"

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

} // namespace

TEST_CASE("periodized density: direct sum oracle and flat limit") {
    auto sq = square_code(2.0);
    Eigen::VectorXd v(2);
    v << 0.2, -0.3;
    double sigma = 0.4;
    // oracle: brute-force sum over a large box
    double oracle = 0.0;
    for (int a = -12; a <= 12; ++a)
        for (int b = -12; b <= 12; ++b) {
            Eigen::VectorXd w = v;
            w(0) += a * std::sqrt(2.0);
            w(1) += b * std::sqrt(2.0);
            oracle += std::exp(-w.squaredNorm() / (2 * sigma * sigma)) /
                      (2 * 3.14159265358979323846 * sigma * sigma);
        }
    CHECK(periodized_density(sq, v, sigma, 1e-10) ==
          doctest::Approx(oracle).epsilon(1e-9));
    // sigma >> covering radius: F ≈ 1/covol(Λ) everywhere
    double lam1 = std::sqrt(2.0);
    CHECK(periodized_density(sq, v, 10 * lam1, 1e-8) ==
          doctest::Approx(0.5).epsilon(1e-4));
    // sigma → 0: dominated by the closest lattice point
    v << 0.1, 0.0;
    double s0 = 0.05;
    double expect = std::exp(-v.squaredNorm() / (2 * s0 * s0)) /
                    (2 * 3.14159265358979323846 * s0 * s0);
    CHECK(periodized_density(sq, v, s0, 1e-10) ==
          doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("mld/med decisions on hand-checked points") {
    auto sq = square_code(2.0);
    Eigen::VectorXd v(2);
    v << 0.0, 0.0;
    CHECK(mld_success(sq, v, 0.2));
    CHECK(med_success(sq, v));
    // a dual (non-lattice) vector: decoding must fail there
    v << 1.0 / std::sqrt(2.0), 0.0;
    CHECK_FALSE(mld_success(sq, v, 0.2));
    CHECK_FALSE(med_success(sq, v));
    // clearly inside the losing Voronoi cell
    v << 0.9 / std::sqrt(2.0), 0.0;
    CHECK_FALSE(med_success(sq, v));
    v << 0.4 / std::sqrt(2.0), 0.0;
    CHECK(med_success(sq, v));
}

TEST_CASE("uniform noise: exact quadrature value and MC interval") {
    auto sq = square_code(2.0);
    auto q = robustness_quadrature(sq, NoiseModel::uniform(), 64);
    CHECK(q.estimate == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(q.ci_low == q.estimate);
    CHECK(q.ci_high == q.estimate);
    auto mc = robustness_mc(sq, NoiseModel::uniform(), "med", 100000, 42, 2);
    CHECK(mc.ci_low <= 0.25);
    CHECK(mc.ci_high >= 0.25);
    CHECK(mc.ci_high - mc.ci_low < 0.01);
}

TEST_CASE("gaussian quadrature: frozen values and analytic companions") {
    auto sq = square_code(2.0);
    auto r = robustness_quadrature(sq, 0.15, 500, 2);
    CHECK(r.estimate == doctest::Approx(0.96349518).epsilon(2e-4));
    REQUIRE(r.analytic_bound.has_value());
    REQUIRE(r.leading_term.has_value());
    double frag = 1.0 - r.estimate;
    CHECK(frag <= *r.analytic_bound);
    CHECK(frag / *r.leading_term > 0.5);
    CHECK(frag / *r.leading_term < 1.5);
}

TEST_CASE("hexagonal beats square at moderate noise") {
    auto rs = robustness_quadrature(square_code(2.0), 0.2, 500, 2);
    auto rh = robustness_quadrature(hex_code(2.0), 0.2, 500, 2);
    CHECK(rh.estimate > rs.estimate + 1e-3);
}

TEST_CASE("small and large sigma limits of the quadrature") {
    auto sq = square_code(2.0);
    auto sys = systole_report(sq);
    auto tiny = robustness_quadrature(sq, sys.ell / 20, 200, 2);
    CHECK(1.0 - tiny.estimate < 1e-8);
    auto flat = robustness_quadrature(sq, 10 * std::sqrt(2.0), 200, 2);
    CHECK(flat.estimate == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("monte carlo is thread-count invariant and seeded") {
    auto sq = square_code(2.0);
    auto r1 = robustness_mc(sq, NoiseModel::gaussian(0.2), "mld", 20000, 9, 1);
    auto r4 = robustness_mc(sq, NoiseModel::gaussian(0.2), "mld", 20000, 9, 4);
    CHECK(r1.estimate == r4.estimate);
    CHECK(r1.ci_low == r4.ci_low);
    auto other = robustness_mc(sq, NoiseModel::gaussian(0.2), "mld", 20000, 10, 1);
    CHECK(other.estimate != r1.estimate); // different seed, different stream
    auto q1 = robustness_quadrature(sq, 0.2, 300, 1);
    auto q4 = robustness_quadrature(sq, 0.2, 300, 4);
    CHECK(q1.estimate == q4.estimate);
}

TEST_CASE("mc tracks quadrature within its confidence interval") {
    auto sq = square_code(2.0);
    auto q = robustness_quadrature(sq, 0.2, 500, 2);
    auto mc = robustness_mc(sq, NoiseModel::gaussian(0.2), "mld", 100000, 7, 2);
    CHECK(mc.ci_low <= q.estimate + 2e-4);
    CHECK(mc.ci_high >= q.estimate - 2e-4);
}

TEST_CASE("analytic fragility pieces are positive and ordered") {
    auto sq = square_code(2.0);
    double b1 = fragility_bound(sq, 0.1, 5.0);
    double l1 = fragility_leading(sq, 0.1);
    CHECK(b1 > 0);
    CHECK(l1 > 0);
    CHECK(b1 >= l1 * 0.5);
    // bound decreases as sigma decreases
    CHECK(fragility_bound(sq, 0.05, 5.0) < b1);
}

TEST_CASE("input validation") {
    auto sq = square_code(2.0);
    CHECK_THROWS_AS(robustness_mc(sq, NoiseModel::gaussian(-0.1), "mld", 100, 1),
                    InputError);
    CHECK_THROWS_AS(robustness_mc(sq, NoiseModel::gaussian(0.1), "bogus", 100, 1),
                    InputError);
    CHECK_THROWS_AS(robustness_quadrature(sq, 0.2, 2), InputError);
}
