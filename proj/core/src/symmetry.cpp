#include "gkp/symmetry.hpp"

#include "gkp/errors.hpp"
#include "gkp/svp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gkp {

namespace {

constexpr double kRelTol = 1e-9;

long long axis_divisor(const GkpCode &code, int i) {
    const int n = code.n();
    return code.divisors[i < n ? i : i - n];
}

struct Search {
    const GkpCode *code;
    int dim;
    Eigen::MatrixXd gram_s;
    const IMat *gram_e;
    double tol; // absolute S-product tolerance
    // Candidate columns bucketed per basis vector (matching S-norm).
    std::vector<std::vector<std::vector<long long>>> candidates;
    long long nodes = 0;
    long long budget = 0;
    std::vector<std::vector<long long>> assigned;
    std::vector<IMat> found;

    double s_dot(const std::vector<long long> &a,
                 const std::vector<long long> &b) const {
        double s = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                s += static_cast<double>(a[i]) * gram_s(i, j) *
                     static_cast<double>(b[j]);
        return s;
    }

    BigInt e_dot(const std::vector<long long> &a,
                 const std::vector<long long> &b) const {
        BigInt s = 0;
        for (int i = 0; i < dim; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < dim; ++j)
                s += BigInt(a[i]) * (*gram_e)(i, j) * BigInt(b[j]);
        }
        return s;
    }

    void recurse(int k) {
        if (k == dim) {
            IMat u(dim, dim);
            for (int j = 0; j < dim; ++j)
                for (int i = 0; i < dim; ++i) u(i, j) = assigned[j][i];
            // Unimodularity: E-preservation already forces |det| = 1, but a
            // column set could still be linearly dependent — reject those.
            BigInt d = det(u);
            if (d == 1 || d == -1) found.push_back(u);
            return;
        }
        for (const auto &cand : candidates[k]) {
            if (++nodes > budget)
                throw BudgetExceeded("automorphism search exceeded node budget");
            bool ok = true;
            for (int j = 0; j < k && ok; ++j) {
                if (e_dot(assigned[j], cand) != (*gram_e)(j, k)) ok = false;
                else if (std::abs(s_dot(assigned[j], cand) - gram_s(j, k)) >
                         tol)
                    ok = false;
            }
            if (!ok) continue;
            assigned.push_back(cand);
            recurse(k + 1);
            assigned.pop_back();
        }
    }
};

} // namespace

std::vector<PassiveAutomorphism>
passive_automorphisms(const GkpCode &code, long long node_budget) {
    const int dim = code.dim();
    if (dim > 8) throw InputError("automorphism search supports 2n <= 8 only");

    Search s;
    s.code = &code;
    s.dim = dim;
    s.gram_s = code.lattice.gram_s;
    s.gram_e = &code.lattice.gram_e;
    s.budget = node_budget;
    double scale = s.gram_s.diagonal().maxCoeff();
    s.tol = kRelTol * scale;

    // All lattice vectors short enough to match some basis norm.
    double rad = std::sqrt(s.gram_s.diagonal().maxCoeff() * (1 + kRelTol));
    auto shorts = enumerate_short(s.gram_s, rad, node_budget);
    s.candidates.resize(dim);
    for (int k = 0; k < dim; ++k)
        for (const auto &[c, n2] : shorts.entries)
            if (std::abs(n2 - s.gram_s(k, k)) <= s.tol)
                s.candidates[k].push_back(c);

    s.recurse(0);
    std::sort(s.found.begin(), s.found.end(), [&](const IMat &a, const IMat &b) {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
            }
        return false;
    });

    // Postconditions: exact E-preservation, group closure, inverses, ±I.
    for (const auto &u : s.found)
        if (!(u.transpose() * (*s.gram_e) * u == *s.gram_e))
            throw NumericalBreakdown("automorphism candidate fails UtGU = G");
    auto contains = [&](const IMat &m) {
        return std::find(s.found.begin(), s.found.end(), m) != s.found.end();
    };
    IMat id = IMat::identity(dim), neg(dim, dim);
    for (int i = 0; i < dim; ++i) neg(i, i) = -1;
    if (!contains(id) || !contains(neg))
        throw NumericalBreakdown("automorphism group is missing ±identity");
    for (const auto &a : s.found)
        for (const auto &b : s.found)
            if (!contains(a * b))
                throw NumericalBreakdown("automorphism set not closed");

    Eigen::MatrixXd binv = code.lattice.basis.inverse();
    std::vector<PassiveAutomorphism> out;
    for (const auto &u : s.found) {
        PassiveAutomorphism pa;
        pa.u_matrix = u;
        Eigen::MatrixXd ud(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                ud(i, j) = static_cast<double>(u(i, j).convert_to<long long>());
        pa.ambient = code.lattice.basis * ud * binv;
        out.push_back(std::move(pa));
    }
    return out;
}

SpKAction sp_k_image(const GkpCode &code,
                     const std::vector<PassiveAutomorphism> &autos) {
    const int dim = code.dim();
    const int n = code.n();
    SpKAction act;

    // Dual-coordinate action Φ = P⁻¹ T⁻¹ U T P with T the Frobenius
    // transform and P = diag(1/d, 1/d); integrality is automatic because the
    // ambient map preserves Λ^⊥.
    QMat t = to_rational(code.sympl.transform);
    QMat tinv = inverse(t);
    for (const auto &a : autos) {
        QMat m = tinv * to_rational(a.u_matrix) * t;
        IMat phi(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                Rat v = m(i, j) * Rat(axis_divisor(code, i)) /
                        Rat(axis_divisor(code, j));
                if (boost::multiprecision::denominator(v) != 1)
                    throw NumericalBreakdown(
                        "induced action is not integral on dual coordinates");
                phi(i, j) = boost::multiprecision::numerator(v);
            }
        if (!sp_k_check(code.divisors, phi))
            throw NumericalBreakdown("induced action fails the Sp(K) check");
        act.matrices.push_back(phi);
    }

    // Deduplicate modulo diag(D, D) (column j is only defined mod d_axis(i)).
    auto key_of = [&](const IMat &phi) {
        std::vector<long long> key;
        key.reserve(dim * dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                long long d = axis_divisor(code, i);
                long long v = phi(i, j).convert_to<long long>() % d;
                if (v < 0) v += d;
                key.push_back(v);
            }
        return key;
    };
    std::vector<std::vector<long long>> keys;
    for (const auto &phi : act.matrices) keys.push_back(key_of(phi));
    std::vector<std::vector<long long>> uniq = keys;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    act.image_order = static_cast<long long>(uniq.size());

    IMat id = IMat::identity(dim);
    std::vector<long long> idkey = key_of(id);
    act.kernel_order = static_cast<long long>(
        std::count(keys.begin(), keys.end(), idkey));
    (void)n;
    return act;
}

Eigen::VectorXd u_shift(const GkpCode &code, const PassiveAutomorphism &aut) {
    const int dim = code.dim();
    // Phases: ν(M s_i)/ν(s_i) as turns in [−1/2, 1/2).
    Eigen::VectorXd p(dim);
    for (int i = 0; i < dim; ++i) {
        std::vector<BigInt> coords = aut.u_matrix.col(i);
        std::vector<BigInt> ei(dim, 0);
        ei[i] = 1;
        Turn ratio =
            semicharacter_eval(code, coords) - semicharacter_eval(code, ei);
        double t = static_cast<double>(ratio.value());
        if (t > 0.5) t -= 1.0;
        p(i) = t;
    }
    // Solve E(u, M s_i) = p_i: rows (J·basis·U)ᵀ.
    Eigen::MatrixXd ud(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            ud(i, j) = static_cast<double>(
                aut.u_matrix(i, j).convert_to<long long>());
    Eigen::MatrixXd w = code.lattice.basis * ud; // columns M s_i
    Eigen::MatrixXd m = (symplectic_j(code.n()) * w).transpose();
    Eigen::VectorXd u = m.fullPivLu().solve(p);

    // Canonical representative in the fundamental parallelepiped of Λ^⊥.
    Eigen::VectorXd c = code.dual_basis.fullPivLu().solve(u);
    for (int i = 0; i < dim; ++i) c(i) -= std::floor(c(i) + 1e-9);
    u = code.dual_basis * c;

    // Defining property re-check on all generators.
    for (int i = 0; i < dim; ++i) {
        double e = u.dot(symplectic_j(code.n()) * w.col(i)) - p(i);
        e -= std::round(e);
        if (std::abs(e) > 1e-6)
            throw NumericalBreakdown("u_shift consistency check failed");
    }
    return u;
}

} // namespace gkp
