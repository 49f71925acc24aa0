#include "gkp/errors.hpp"
#include "gkp/exact.hpp"
#include "gkp/rng.hpp"

#include <doctest.h>

using namespace gkp;

namespace {

IMat standard_gram(const std::vector<long long> &d) {
    int n = static_cast<int>(d.size());
    IMat g(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        g(i, n + i) = d[i];
        g(n + i, i) = -d[i];
    }
    return g;
}

// Random unimodular conjugation by bounded elementary column/row pairs.
IMat conjugate(const IMat &g, std::uint64_t seed, int ops) {
    int m = static_cast<int>(g.rows());
    IMat w = IMat::identity(m);
    std::uint64_t ctr = 0;
    for (int t = 0; t < ops; ++t) {
        int a = static_cast<int>(keyed_random(seed, ctr++) % m);
        int b = static_cast<int>(keyed_random(seed, ctr++) % m);
        if (a == b) continue;
        long long q =
            static_cast<long long>(keyed_random(seed, ctr++) % 5) - 2;
        w.add_col(a, b, BigInt(q));
    }
    return w.transpose() * g * w;
}

} // namespace

TEST_CASE("smith divisors of diagonal and conjugated matrices") {
    IMat m(2, 2);
    m(0, 0) = 2;
    m(1, 1) = 6;
    auto d = smith_divisors(m);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 2);
    CHECK(d[1] == 6);

    // 2x2 with nontrivial mixing: [[2, 4], [4, 4]]: det = -8, gcd = 2 →
    // divisors (2, 4)
    IMat a(2, 2);
    a(0, 0) = 2;
    a(0, 1) = 4;
    a(1, 0) = 4;
    a(1, 1) = 4;
    auto da = smith_divisors(a);
    REQUIRE(da.size() == 2);
    CHECK(da[0] == 2);
    CHECK(da[1] == 4);
}

TEST_CASE("hermite column basis of a rank-deficient stack") {
    // Columns (4,0), (0,4), (2,0): lattice = 2Z x 4Z
    IMat a(2, 3);
    a(0, 0) = 4;
    a(1, 1) = 4;
    a(0, 2) = 2;
    IMat h = hermite_column_basis(a);
    REQUIRE(h.cols() == 2);
    CHECK(h(0, 0) == 2);
    CHECK(h(1, 0) == 0);
    CHECK(h(0, 1) == 0);
    CHECK(h(1, 1) == 4);
}

TEST_CASE("frobenius normal form recovers the type exactly") {
    std::vector<std::vector<long long>> types = {
        {2}, {3}, {1, 2}, {2, 4}, {2, 2, 2}, {1, 6}, {3, 6}};
    std::uint64_t seed = 99;
    for (const auto &ty : types) {
        IMat g0 = standard_gram(ty);
        for (int rep = 0; rep < 10; ++rep) {
            IMat g = conjugate(g0, seed++, 40);
            FrobeniusForm f = frobenius_reduce(g);
            REQUIRE(f.divisors.size() == ty.size());
            for (std::size_t i = 0; i < ty.size(); ++i)
                CHECK(f.divisors[i] == ty[i]);
            BigInt dU = det(f.u);
            CHECK((dU == 1 || dU == -1));
            IMat s = f.u.transpose() * g * f.u;
            std::vector<long long> dl(f.divisors.size());
            for (std::size_t i = 0; i < dl.size(); ++i)
                dl[i] = f.divisors[i].convert_to<long long>();
            CHECK(s == standard_gram(dl));
        }
    }
}

TEST_CASE("frobenius rejects degenerate or odd input") {
    IMat z(2, 2);
    CHECK_THROWS_AS(frobenius_reduce(z), Singular);
    IMat odd(3, 3);
    CHECK_THROWS_AS(frobenius_reduce(odd), InputError);
}

TEST_CASE("turn arithmetic is exact and reduced to [0,1)") {
    Turn a(Rat(3, 4)), b(Rat(1, 2));
    CHECK((a + b).value() == Rat(1, 4));
    CHECK((a - b).value() == Rat(1, 4));
    CHECK((-a).value() == Rat(1, 4));
    CHECK((a * BigInt(2)).value() == Rat(1, 2));
    CHECK(Turn(Rat(-1, 3)).value() == Rat(2, 3));
    CHECK(Turn(Rat(7, 3)).value() == Rat(1, 3));
    CHECK(Turn().is_zero());
    CHECK(Turn(Rat(1, 2)).to_string() == "1/2");
    auto z = Turn(Rat(1, 2)).to_complex();
    CHECK(std::abs(z - std::complex<double>(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-2") == Rat(-2));
    CHECK_THROWS_AS(parse_rational("x/y"), InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
}

TEST_CASE("exact rational inverse and determinant") {
    IMat m(2, 2);
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(1, 1) = 1;
    CHECK(det(m) == 1);
    QMat inv = inverse(to_rational(m));
    CHECK(inv(0, 0) == Rat(1));
    CHECK(inv(0, 1) == Rat(-1));
    QMat sing(2, 2);
    sing(0, 0) = Rat(1);
    sing(1, 0) = Rat(1);
    CHECK_THROWS_AS(inverse(sing), Singular);
}
