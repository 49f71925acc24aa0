#include "gkp/theta.hpp"

#include "gkp/errors.hpp"
#include "gkp/rng.hpp"
#include "gkp/svp.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace gkp {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// H(z, u) = Σ z_j·conj(u_j) on complexified interleaved vectors.
cd h_form(const Eigen::VectorXcd &z, const Eigen::VectorXcd &u) {
    cd s(0, 0);
    for (int j = 0; j < z.size(); ++j) s += z(j) * std::conj(u(j));
    return s;
}

} // namespace

int default_theta_grid(int n) {
    if (n == 1) return 256;
    if (n == 2) return 48;
    throw InputError("quadrature supports n <= 2 only");
}

std::complex<double> ThetaBasis::eval_raw(int label,
                                          const Eigen::VectorXd &v) const {
    const int n = code.n();
    const int r = trunc_radius;
    const int side = 2 * r + 1;

    Eigen::VectorXcd z = complexify(v);
    Eigen::VectorXcd w = a_inv * z;

    // Recenter the summation box where the Gaussian tail of the series
    // peaks: k0 ≈ −c_b − (Im Ω)^{-1} Im w.
    Eigen::VectorXd imw = w.imag();
    Eigen::VectorXd peak = -label_shift[label] - y_inv * imw;
    Eigen::VectorXd cprime(n);
    for (int j = 0; j < n; ++j)
        cprime(j) = std::round(peak(j)) + label_shift[label](j);

    // P0 = exp(iπ c'ᵀΩc' + 2πi c'ᵀw)
    cd expo(0, 0);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k)
            expo += cd(0, kPi) * cprime(j) * omega(j, k) * cprime(k);
        expo += cd(0, 2 * kPi) * cprime(j) * w(j);
    }
    cd p0 = std::exp(expo);

    // Per-axis geometric factors g_j^δ, δ ∈ [−r, r].
    std::vector<std::vector<cd>> gpow(n, std::vector<cd>(side));
    for (int j = 0; j < n; ++j) {
        cd vj(0, 0);
        for (int k = 0; k < n; ++k) vj += omega(j, k) * cprime(k);
        vj += w(j);
        cd g = std::exp(cd(0, 2 * kPi) * vj);
        cd start = std::exp(cd(0, -2 * kPi) * static_cast<double>(r) * vj);
        gpow[j][0] = start;
        for (int s = 1; s < side; ++s) gpow[j][s] = gpow[j][s - 1] * g;
    }

    // Σ_δ e^{iπδᵀΩδ} Π_j g_j^{δ_j}, lexicographic order (deterministic).
    cd total(0, 0);
    std::vector<int> idx(n, 0);
    std::size_t flat = 0;
    while (true) {
        cd term = box_quad[flat];
        for (int j = 0; j < n; ++j) term *= gpow[j][idx[j]];
        total += term;
        ++flat;
        int j = n - 1;
        for (; j >= 0; --j) {
            if (++idx[j] < side) break;
            idx[j] = 0;
        }
        if (j < 0) break;
    }

    // Prefactor exp((π/2) zᵀRz).
    cd quad(0, 0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) quad += z(j) * r_form(j, k) * z(k);
    return std::exp(0.5 * kPi * quad) * p0 * total;
}

std::complex<double> ThetaBasis::eval(int label,
                                      const Eigen::VectorXd &v) const {
    cd val;
    if (char_shift.size() > 0 && char_shift.norm() > 0) {
        // Displacement by the semicharacter shift c:
        // (T_c f)(v) = e^{−π(½H(c,c) + H(v,c))} f(v + c).
        Eigen::VectorXcd zv = complexify(v);
        Eigen::VectorXcd zc = complexify(char_shift);
        cd expo = -kPi * (0.5 * h_form(zc, zc) + h_form(zv, zc));
        val = std::exp(expo) * eval_raw(label, v + char_shift);
    } else {
        val = eval_raw(label, v);
    }
    return norm_scale.empty() ? val : norm_scale[label] * val;
}

std::complex<double> ThetaBasis::eval(int label,
                                      const Eigen::VectorXcd &z) const {
    return eval(label, realify(z));
}

namespace {

Eigen::VectorXcd eval_all(const ThetaBasis &b, const Eigen::VectorXd &v) {
    Eigen::VectorXcd out(b.dim());
    for (int i = 0; i < b.dim(); ++i) out(i) = b.eval(i, v);
    return out;
}

// Midpoint-rule Gram of two pointwise-function families over a fundamental
// parallelepiped of Λ. `left` defaults to the basis itself.
Eigen::MatrixXcd quad_gram(const ThetaBasis &b, int grid,
                           const std::function<Eigen::VectorXcd(
                               const Eigen::VectorXd &)> &right,
                           const std::function<double(const Eigen::VectorXd &)>
                               &extra_weight) {
    const int dim2 = b.code.dim();
    const int n = b.code.n();
    const int d = b.dim();
    const double covol = b.code.lattice.covolume();
    const double cell =
        covol / std::pow(static_cast<double>(grid), dim2) / std::pow(kPi, n);

    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(d, d);
    std::vector<int> idx(dim2, 0);
    Eigen::VectorXd frac(dim2);
    while (true) {
        for (int i = 0; i < dim2; ++i)
            frac(i) = (idx[i] + 0.5) / static_cast<double>(grid) - 0.5;
        Eigen::VectorXd v = b.code.frob_basis * frac;
        double wgt = cell * std::exp(-kPi * v.squaredNorm()) * extra_weight(v);
        if (wgt != 0.0) {
            Eigen::VectorXcd fv = eval_all(b, v);
            Eigen::VectorXcd rv = right(v);
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    g(j, k) += rv(k) * std::conj(fv(j)) * wgt;
        }
        int i = dim2 - 1;
        for (; i >= 0; --i) {
            if (++idx[i] < grid) break;
            idx[i] = 0;
        }
        if (i < 0) break;
    }
    return g;
}

Eigen::MatrixXcd plain_gram(const ThetaBasis &b, int grid) {
    // Entries G(j,k) = ⟨f_k, f_j⟩_Θ accumulated as rv(k)·conj(fv(j));
    // transposing below gives the conventional G(j,k) = ⟨f_j, f_k⟩.
    auto self = [&](const Eigen::VectorXd &v) { return eval_all(b, v); };
    auto one = [](const Eigen::VectorXd &) { return 1.0; };
    return quad_gram(b, grid, self, one);
}

} // namespace

ThetaBasis theta_basis(const GkpCode &code, double tol) {
    const int n = code.n();
    ThetaBasis b;
    b.code = code;

    // Complex period data from the Frobenius basis.
    Eigen::MatrixXcd lc(n, n), mc(n, n);
    for (int j = 0; j < n; ++j) {
        lc.col(j) = complexify(code.frob_basis.col(j));
        mc.col(j) = complexify(code.frob_basis.col(n + j));
    }
    Eigen::MatrixXcd a = mc;
    for (int j = 0; j < n; ++j) a.col(j) /= static_cast<double>(code.divisors[j]);
    b.a_inv = a.inverse();
    b.omega = b.a_inv * lc;
    double osc = b.omega.cwiseAbs().maxCoeff();
    if ((b.omega - b.omega.transpose()).cwiseAbs().maxCoeff() >
        1e-9 * (1 + osc))
        throw AutomorphyFailure("period matrix is not symmetric");
    b.omega = 0.5 * (b.omega + b.omega.transpose()).eval();
    Eigen::MatrixXd y = b.omega.imag();
    Eigen::LLT<Eigen::MatrixXd> llt(y);
    if (llt.info() != Eigen::Success)
        throw AutomorphyFailure("Im(omega) is not positive definite");
    b.y_inv = y.inverse();
    b.r_form = a.conjugate() * b.a_inv;

    // Labels b ∈ Zⁿ/DZⁿ and their fractional shifts D^{-1}b.
    std::vector<long long> cur(n, 0);
    while (true) {
        b.labels.push_back(cur);
        Eigen::VectorXd sh(n);
        for (int j = 0; j < n; ++j)
            sh(j) = static_cast<double>(cur[j]) /
                    static_cast<double>(code.divisors[j]);
        b.label_shift.push_back(sh);
        int j = n - 1;
        for (; j >= 0; --j) {
            if (++cur[j] < code.divisors[j]) break;
            cur[j] = 0;
        }
        if (j < 0) break;
    }

    // Truncation: smallest box with π·λmin(Im Ω)·(R − maxshift)² > 40,
    // plus one unit of recentering slack.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(y);
    double lmin = es.eigenvalues().minCoeff();
    double maxshift = 0.0;
    for (const auto &sh : b.label_shift)
        maxshift = std::max(maxshift, sh.size() ? sh.cwiseAbs().maxCoeff() : 0.0);
    int radius =
        static_cast<int>(std::ceil(std::sqrt(40.0 / (kPi * lmin)) + maxshift + 1));
    if (radius > 64)
        throw TruncationOverflow("truncation radius " + std::to_string(radius) +
                                 " exceeds the cap of 64");
    b.trunc_radius = radius;

    // Fixed table e^{iπδᵀΩδ} over the δ-box, lexicographic order.
    const int side = 2 * radius + 1;
    std::size_t count = 1;
    for (int j = 0; j < n; ++j) count *= static_cast<std::size_t>(side);
    b.box_quad.resize(count);
    std::vector<int> idx(n, 0);
    for (std::size_t flat = 0; flat < count; ++flat) {
        cd e(0, 0);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                e += cd(0, kPi) * static_cast<double>(idx[j] - radius) *
                     b.omega(j, k) * static_cast<double>(idx[k] - radius);
        b.box_quad[flat] = std::exp(e);
        for (int j = n - 1; j >= 0; --j) {
            if (++idx[j] < side) break;
            idx[j] = 0;
        }
    }

    // Semicharacter shift: solve E(c, s_i) ≡ t_i (mod 1) with the turns of
    // ν on the Frobenius generators, taking the representative in [−½, ½).
    const int dim2 = code.dim();
    Eigen::VectorXd t(dim2);
    bool any = false;
    for (int i = 0; i < dim2; ++i) {
        double ti = static_cast<double>(code.nu_frob[i].value());
        if (ti > 0.5) ti -= 1.0;
        t(i) = ti;
        if (ti != 0.0) any = true;
    }
    if (any) {
        Eigen::MatrixXd m =
            code.frob_basis.transpose() * symplectic_j(n).transpose();
        b.char_shift = m.fullPivLu().solve(t);
    } else {
        b.char_shift = Eigen::VectorXd::Zero(dim2);
    }

    // Normalize to unit theta norm at the default grid.
    Eigen::MatrixXcd g = plain_gram(b, default_theta_grid(n));
    b.norm_scale.resize(b.dim());
    for (int i = 0; i < b.dim(); ++i) {
        double di = g(i, i).real();
        if (!(di > 0))
            throw AutomorphyFailure("basis function has nonpositive norm");
        b.norm_scale[i] = 1.0 / std::sqrt(di);
    }

    double res = automorphy_residual(b, 100, 0x5eedULL);
    if (!(res < tol))
        throw AutomorphyFailure("automorphy residual " + std::to_string(res) +
                                " exceeds tolerance");
    return b;
}

double automorphy_residual(const ThetaBasis &basis, int samples,
                           std::uint64_t seed) {
    const GkpCode &code = basis.code;
    const int dim2 = code.dim();
    double worst = 0.0;
    std::uint64_t ctr = 0;
    for (int s = 0; s < samples; ++s) {
        // Centered fundamental domain: keeps |v| and the automorphy factors
        // small, so the comparison is well conditioned.
        Eigen::VectorXd frac(dim2);
        for (int i = 0; i < dim2; ++i) frac(i) = uniform01(seed, ctr++) - 0.5;
        Eigen::VectorXd v = code.frob_basis * frac;
        Eigen::VectorXcd zv = complexify(v);
        Eigen::VectorXcd base = eval_all(basis, v);
        for (int i = 0; i < dim2; ++i) {
            Eigen::VectorXd lam = code.frob_basis.col(i);
            Eigen::VectorXcd zl = complexify(lam);
            cd nu = code.nu_frob[i].to_complex();
            cd factor =
                nu * std::exp(kPi * (0.5 * h_form(zl, zl) + h_form(zv, zl)));
            Eigen::VectorXcd shifted = eval_all(basis, v + lam);
            for (int b = 0; b < basis.dim(); ++b) {
                double denom = std::max(1.0, std::abs(base(b)));
                worst = std::max(
                    worst, std::abs(shifted(b) - factor * base(b)) / denom);
            }
        }
    }
    return worst;
}

HermitianGram theta_gram(const ThetaBasis &basis, int grid, double tol) {
    Eigen::MatrixXcd fine = plain_gram(basis, grid);
    Eigen::MatrixXcd coarse = plain_gram(basis, std::max(2, grid / 2));
    double scale = fine.diagonal().real().maxCoeff();
    if ((fine - coarse).cwiseAbs().maxCoeff() > tol * scale)
        throw GridTooCoarse("theta Gram not converged at grid " +
                            std::to_string(grid));
    HermitianGram out;
    out.entries = fine.transpose(); // G(j,k) = ⟨f_j, f_k⟩_Θ
    out.grid = grid;
    return out;
}

namespace {

Eigen::MatrixXcd envelope_quad(const ThetaBasis &basis, double beta,
                               int grid) {
    const GkpCode &code = basis.code;
    const int n = code.n();
    const double alpha = std::exp(2 * beta) - 1.0;

    // Λ-offsets for the periodized Gaussian kernel K_β: everything within
    // the tail radius of any point of the fundamental parallelepiped.
    double diam = 0.0;
    for (int j = 0; j < code.dim(); ++j)
        diam += code.frob_basis.col(j).norm();
    double rk = std::sqrt(40.0 / (kPi * alpha)) + diam;
    auto list = enumerate_short(code.lattice, rk);
    std::vector<Eigen::VectorXd> offsets;
    offsets.push_back(Eigen::VectorXd::Zero(code.dim()));
    for (const auto &[c, n2] : list.entries) {
        Eigen::VectorXd cd_(code.dim());
        for (int i = 0; i < code.dim(); ++i) cd_(i) = static_cast<double>(c[i]);
        offsets.push_back(code.lattice.basis * cd_);
    }

    auto kernel = [&](const Eigen::VectorXd &v) {
        double k = 0.0;
        for (const auto &lam : offsets)
            k += std::exp(-kPi * alpha * (v + lam).squaredNorm());
        return k * std::exp(2.0 * n * beta);
    };
    auto self = [&](const Eigen::VectorXd &v) { return eval_all(basis, v); };
    return quad_gram(basis, grid, self, kernel);
}

} // namespace

HermitianGram envelope_gram(const ThetaBasis &basis, double beta, int grid,
                            double tol) {
    if (!(beta > 0)) throw InputError("beta must be positive");
    Eigen::MatrixXcd fine = envelope_quad(basis, beta, grid);
    Eigen::MatrixXcd coarse = envelope_quad(basis, beta, std::max(2, grid / 2));
    double scale = fine.diagonal().real().maxCoeff();
    if ((fine - coarse).cwiseAbs().maxCoeff() > tol * scale)
        throw GridTooCoarse("envelope Gram not converged at grid " +
                            std::to_string(grid));
    HermitianGram out;
    out.entries = fine.transpose();
    out.grid = grid;
    return out;
}

double isometry_conformal_factor(const GkpCode &code, double beta) {
    return std::pow(1.0 - std::exp(-2.0 * beta), code.n()) *
           code.lattice.covolume();
}

std::vector<std::pair<double, double>>
isometry_sweep(const GkpCode &code, const std::vector<double> &betas,
               int grid) {
    ThetaBasis basis = theta_basis(code);
    HermitianGram tg = theta_gram(basis, grid);
    double tscale = tg.entries.cwiseAbs().maxCoeff();
    std::vector<std::pair<double, double>> out;
    for (double beta : betas) {
        HermitianGram eg = envelope_gram(basis, beta, grid);
        double c = isometry_conformal_factor(code, beta);
        double dev =
            (c * eg.entries - tg.entries).cwiseAbs().maxCoeff() / tscale;
        out.emplace_back(beta, dev);
    }
    return out;
}

Eigen::MatrixXcd displacement_action(const ThetaBasis &basis,
                                     const PauliElement &p, int grid) {
    const GkpCode &code = basis.code;
    if (!pauli_check(code, p))
        throw NotLogical("element fails the Pauli phase condition");
    Eigen::VectorXd u = pauli_vector(code, p);
    Eigen::VectorXcd zu = complexify(u);
    cd alpha = p.alpha.to_complex();

    auto displaced = [&](const Eigen::VectorXd &v) {
        Eigen::VectorXcd zv = complexify(v);
        cd factor =
            alpha * std::exp(-kPi * (0.5 * h_form(zu, zu) + h_form(zv, zu)));
        return (factor * eval_all(basis, v + u)).eval();
    };
    auto one = [](const Eigen::VectorXd &) { return 1.0; };
    // P(j,b) = ⟨p·f_b, f_j⟩ accumulated as displaced(b)·conj(f_j).
    Eigen::MatrixXcd pmat = quad_gram(basis, grid, displaced, one);
    Eigen::MatrixXcd g = plain_gram(basis, grid);
    // Solve Σ_j G(j',j) M(j,b) = P(j',b); with G(j',j) = ⟨f_j, f_j'⟩ from
    // quad_gram's accumulation convention this is the right orientation.
    return g.fullPivLu().solve(pmat);
}

} // namespace gkp
