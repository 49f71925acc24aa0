#include "gkp/code.hpp"

#include "gkp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gkp {

namespace {

// Residue of c mod d in [0, d).
BigInt mod_pos(const BigInt &c, const BigInt &d) {
    BigInt r = c % d;
    if (r < 0) r += d;
    return r;
}

// Divisor attached to coordinate axis i of the canonical dual basis
// (λ_1/d_1,...,λ_n/d_n, μ_1/d_1,...,μ_n/d_n).
long long axis_divisor(const GkpCode &code, int i) {
    const int n = code.n();
    return code.divisors[i < n ? i : i - n];
}

// Closed-form semicharacter evaluation against an explicit Gram and
// generator phases: Σ m_i p_i + ½ Σ_{i<j} m_i m_j G[i][j]  (turns).
Turn eval_closed_form(const IMat &gram, const std::vector<Turn> &phases,
                      const std::vector<BigInt> &m) {
    Rat t(0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        t += phases[i].value() * Rat(m[i]);
        for (std::size_t j = i + 1; j < m.size(); ++j)
            t += Rat(m[i] * m[j] * gram(i, j), 2);
    }
    return Turn(t);
}

} // namespace

Semicharacter semicharacter_standard(const GkpLattice &lat) {
    Semicharacter nu;
    nu.base_phases.assign(lat.dim(), Turn());
    return nu;
}

GkpCode make_code(const GkpLattice &lat, const Semicharacter &nu) {
    if (static_cast<int>(nu.base_phases.size()) != lat.dim())
        throw InputError("semicharacter phase count must equal 2n");
    GkpCode code;
    code.lattice = lat;
    code.nu = nu;
    code.sympl = frobenius_basis(lat);

    const int dim = lat.dim(), n = lat.n;
    code.gram_frob =
        code.sympl.transform.transpose() * lat.gram_e * code.sympl.transform;

    Eigen::MatrixXd u(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            u(i, j) = static_cast<double>(code.sympl.transform(i, j));
    code.frob_basis = lat.basis * u;

    code.divisors.resize(n);
    for (int i = 0; i < n; ++i)
        code.divisors[i] =
            static_cast<long long>(code.sympl.type.divisors[i]);
    code.exponent = code.divisors[n - 1];
    BigInt prod = code.sympl.type.product();
    code.k_order = prod * prod;

    code.dual_basis = code.frob_basis;
    for (int i = 0; i < n; ++i) {
        code.dual_basis.col(i) /= static_cast<double>(code.divisors[i]);
        code.dual_basis.col(n + i) /= static_cast<double>(code.divisors[i]);
    }

    // ν on the Frobenius generators, through the unimodular change of basis.
    code.nu_frob.resize(dim);
    for (int j = 0; j < dim; ++j) {
        std::vector<BigInt> col(dim);
        for (int i = 0; i < dim; ++i) col[i] = code.sympl.transform(i, j);
        code.nu_frob[j] = semicharacter_eval(code, col);
    }
    return code;
}

GkpCode make_code_standard(const GkpLattice &lat) {
    return make_code(lat, semicharacter_standard(lat));
}

Turn semicharacter_eval(const GkpCode &code, const std::vector<BigInt> &coords) {
    return eval_closed_form(code.lattice.gram_e, code.nu.base_phases, coords);
}

Turn semicharacter_eval_frob(const GkpCode &code,
                             const std::vector<BigInt> &coords) {
    return eval_closed_form(code.gram_frob, code.nu_frob, coords);
}

QuotientGroup quotient_group(const GkpCode &code) {
    QuotientGroup q;
    q.divisors = code.divisors;
    q.exponent = code.exponent;
    if (code.k_order > 1000000)
        throw BudgetExceeded("quotient group has more than 10^6 elements");
    const int dim = code.dim();
    std::vector<long long> rep(dim, 0);
    while (true) {
        q.reps.push_back(rep);
        int i = dim - 1;
        for (; i >= 0; --i) {
            if (++rep[i] < axis_divisor(code, i)) break;
            rep[i] = 0;
        }
        if (i < 0) break;
    }
    return q;
}

Rat dual_e(const GkpCode &code, const std::vector<BigInt> &x,
           const std::vector<BigInt> &y) {
    const int n = code.n();
    Rat e(0);
    for (int i = 0; i < n; ++i)
        e += Rat(x[i] * y[n + i] - x[n + i] * y[i],
                 BigInt(code.divisors[i]));
    return e;
}

Turn commutator(const GkpCode &code, const std::vector<long long> &x,
                const std::vector<long long> &y) {
    std::vector<BigInt> xb(x.begin(), x.end()), yb(y.begin(), y.end());
    return Turn(-dual_e(code, xb, yb));
}

Turn omega_standard(const std::vector<long long> &divisors,
                    const std::vector<long long> &x,
                    const std::vector<long long> &y) {
    const int n = static_cast<int>(divisors.size());
    Rat t(0);
    for (int j = 0; j < n; ++j)
        t += Rat(BigInt(x[n + j]) * y[j] - BigInt(x[j]) * y[n + j],
                 BigInt(divisors[j]));
    return Turn(t);
}

PauliElement pauli_identity(const GkpCode &code) {
    PauliElement p;
    p.dual_coords.assign(code.dim(), BigInt(0));
    return p;
}

Eigen::VectorXd pauli_vector(const GkpCode &code, const PauliElement &p) {
    Eigen::VectorXd c(code.dim());
    for (int i = 0; i < code.dim(); ++i)
        c(i) = static_cast<double>(p.dual_coords[i]);
    return code.dual_basis * c;
}

PauliElement pauli_from_vector(const GkpCode &code, const Eigen::VectorXd &mu,
                               const Turn &alpha, double tol) {
    Eigen::VectorXd x = code.dual_basis.fullPivLu().solve(mu);
    PauliElement p;
    p.dual_coords.resize(code.dim());
    for (int i = 0; i < code.dim(); ++i) {
        double r = std::round(x(i));
        if (std::abs(x(i) - r) > tol)
            throw NotInDual("vector is not in the symplectic dual lattice");
        p.dual_coords[i] = BigInt(static_cast<long long>(r));
    }
    p.alpha = alpha;
    return p;
}

PauliElement pauli_reduce(const GkpCode &code, const PauliElement &p) {
    const int dim = code.dim();
    std::vector<BigInt> rep(dim), delta(dim), lam(dim);
    bool already = true;
    for (int i = 0; i < dim; ++i) {
        BigInt d(axis_divisor(code, i));
        rep[i] = mod_pos(p.dual_coords[i], d);
        delta[i] = p.dual_coords[i] - rep[i];
        lam[i] = delta[i] / d; // exact: δ ∈ diag(D,D)Z^{2n}
        if (delta[i] != 0) already = false;
    }
    if (already) return p;
    // (rep, α') ~ (rep, α')·(δ, ν(δ)^{-1}) in the Λ_ν quotient gives back the
    // raw pair, so α' = α·ν(δ)·e^{iπE(rep, δ)}.
    PauliElement out;
    out.dual_coords = std::move(rep);
    Turn tw = semicharacter_eval_frob(code, lam);
    Rat e = dual_e(code, out.dual_coords, delta);
    out.alpha = p.alpha + tw + Turn(e / 2);
    return out;
}

bool pauli_check(const GkpCode &code, const PauliElement &p) {
    const int dim = code.dim();
    const BigInt m(code.exponent);
    std::vector<BigInt> lam(dim);
    for (int i = 0; i < dim; ++i) {
        BigInt d(axis_divisor(code, i));
        lam[i] = m * p.dual_coords[i] / d; // exact: d_i | m
    }
    Turn lhs = p.alpha * (2 * m);
    Turn rhs = -(semicharacter_eval_frob(code, lam) * 2);
    return lhs == rhs;
}

PauliElement pauli_mul(const GkpCode &code, const PauliElement &p,
                       const PauliElement &q) {
    PauliElement r;
    r.dual_coords.resize(code.dim());
    for (int i = 0; i < code.dim(); ++i)
        r.dual_coords[i] = p.dual_coords[i] + q.dual_coords[i];
    Rat e = dual_e(code, p.dual_coords, q.dual_coords);
    r.alpha = p.alpha + q.alpha + Turn(-e / 2);
    return pauli_reduce(code, r);
}

PauliElement pauli_inverse(const GkpCode &code, const PauliElement &p) {
    PauliElement r;
    r.dual_coords.resize(code.dim());
    for (int i = 0; i < code.dim(); ++i) r.dual_coords[i] = -p.dual_coords[i];
    r.alpha = -p.alpha;
    return pauli_reduce(code, r);
}

bool sp_k_check(const std::vector<long long> &divisors, const IMat &phi) {
    const int n = static_cast<int>(divisors.size());
    const int dim = 2 * n;
    auto axis_d = [&](int i) { return divisors[i < n ? i : i - n]; };

    // Well-defined on K_D: d_i·φ(e_i) ≡ 0 componentwise.
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (BigInt(axis_d(i)) * phi(j, i) % BigInt(axis_d(j)) != 0)
                return false;

    // ω_D preserved on all generator pairs (bilinearity extends to K_D).
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            std::vector<long long> ei(dim, 0), ej(dim, 0);
            ei[i] = 1;
            ej[j] = 1;
            std::vector<long long> fi(dim), fj(dim);
            for (int k = 0; k < dim; ++k) {
                fi[k] = static_cast<long long>(
                    mod_pos(phi(k, i), BigInt(axis_d(k))));
                fj[k] = static_cast<long long>(
                    mod_pos(phi(k, j), BigInt(axis_d(k))));
            }
            if (omega_standard(divisors, fi, fj) !=
                omega_standard(divisors, ei, ej))
                return false;
        }

    // Bijective on K_D: exhaustive image scan (groups here are small).
    std::vector<std::vector<long long>> seen;
    std::vector<long long> x(dim, 0);
    while (true) {
        std::vector<long long> y(dim, 0);
        for (int k = 0; k < dim; ++k) {
            BigInt acc(0);
            for (int i = 0; i < dim; ++i) acc += phi(k, i) * BigInt(x[i]);
            y[k] = static_cast<long long>(mod_pos(acc, BigInt(axis_d(k))));
        }
        seen.push_back(y);
        int i = dim - 1;
        for (; i >= 0; --i) {
            if (++x[i] < axis_d(i)) break;
            x[i] = 0;
        }
        if (i < 0) break;
    }
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

} // namespace gkp
