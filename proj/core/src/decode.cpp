#include "gkp/decode.hpp"

#include "gkp/errors.hpp"
#include "gkp/rng.hpp"
#include "gkp/svp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

namespace gkp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieRel = 1e-12;
constexpr double kEpsInternal = 1e-12; // periodization accuracy inside decoders

double trunc_multiplier(double eps) { return std::sqrt(2.0 * std::log(1.0 / eps)) + 6.0; }

long long axis_divisor(const GkpCode &code, int i) {
    const int n = code.n();
    return code.divisors[i < n ? i : i - n];
}

// Half-diameter of the fundamental parallelepiped spanned by the columns of
// b: every point of space is within this distance of the lattice.
double half_diameter(const Eigen::MatrixXd &b) {
    double s = 0.0;
    for (int j = 0; j < b.cols(); ++j) s += b.col(j).norm();
    return 0.5 * s;
}

// Evaluation context for the Λ-periodized Gaussian on all cosets of
// K = Λ^⊥/Λ at points y in the centered fundamental parallelepiped of Λ^⊥.
// Two interchangeable backends, picked by enumeration radius:
//  - direct: F_k(y) = (2πσ²)^{−n} Σ_{w∈μ_k+Λ, |w|≤R} e^{−|y+w|²/2σ²}
//  - fourier (Poisson summation, good for large σ):
//    F_k(y) = (1/covol) Σ_{ξ∈Λ*} e^{−2π²σ²|ξ|²} cos(2π ξ·(y+μ_k))
struct DensityContext {
    const GkpCode *code = nullptr;
    double sigma = 0.0;
    bool fourier = false;
    long long k_count = 0;
    std::vector<long long> strides; // mixed-radix label -> flat index
    std::vector<Eigen::VectorXd> mu; // coset reps, flat-index order

    // direct backend
    std::vector<std::vector<Eigen::VectorXd>> buckets;
    double norm = 0.0; // (2πσ²)^{−n}

    // fourier backend
    std::vector<double> coef;          // includes 1/covol
    std::vector<Eigen::VectorXd> xi;   // Euclidean dual vectors Jᵀw, w ∈ Λ^⊥
    std::vector<std::vector<double>> cos_shift, sin_shift; // per ξ, per coset
};

long long flat_label(const DensityContext &ctx,
                     const std::vector<long long> &coords) {
    long long f = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        long long d = axis_divisor(*ctx.code, static_cast<int>(i));
        long long r = coords[i] % d;
        if (r < 0) r += d;
        f += r * ctx.strides[i];
    }
    return f;
}

DensityContext make_context(const GkpCode &code, double sigma) {
    if (!(sigma > 0)) throw InputError("sigma must be positive");
    DensityContext ctx;
    ctx.code = &code;
    ctx.sigma = sigma;
    const int dim = code.dim();
    const int n = code.n();

    QuotientGroup q = quotient_group(code);
    ctx.k_count = static_cast<long long>(q.reps.size());
    ctx.strides.assign(dim, 0);
    long long s = 1;
    for (int i = dim - 1; i >= 0; --i) {
        ctx.strides[i] = s;
        s *= axis_divisor(code, i);
    }
    ctx.mu.resize(ctx.k_count);
    for (long long k = 0; k < ctx.k_count; ++k) {
        Eigen::VectorXd c(dim);
        for (int i = 0; i < dim; ++i)
            c(i) = static_cast<double>(q.reps[k][i]);
        ctx.mu[flat_label(ctx, q.reps[k])] = code.dual_basis * c;
    }

    const double hd_lat = half_diameter(code.frob_basis);
    const double hd_dual = half_diameter(code.dual_basis);
    const double r_direct =
        hd_lat + sigma * trunc_multiplier(kEpsInternal) + hd_dual;
    const double r_fourier =
        std::sqrt(std::log(1.0 / kEpsInternal) / (2.0 * kPi * kPi)) / sigma;
    ctx.fourier = r_fourier < r_direct;

    Eigen::MatrixXd gram_dual =
        code.dual_basis.transpose() * code.dual_basis;
    if (ctx.fourier) {
        const double covol = code.lattice.covolume();
        Eigen::MatrixXd jt = symplectic_j(n).transpose();
        auto list = enumerate_short(gram_dual, r_fourier);
        ctx.coef.push_back(1.0 / covol);
        ctx.xi.push_back(Eigen::VectorXd::Zero(dim));
        for (const auto &[c, n2] : list.entries) {
            Eigen::VectorXd cv(dim);
            for (int i = 0; i < dim; ++i) cv(i) = static_cast<double>(c[i]);
            ctx.coef.push_back(
                std::exp(-2.0 * kPi * kPi * sigma * sigma * n2) / covol);
            ctx.xi.push_back(jt * (code.dual_basis * cv));
        }
        ctx.cos_shift.resize(ctx.xi.size());
        ctx.sin_shift.resize(ctx.xi.size());
        for (std::size_t t = 0; t < ctx.xi.size(); ++t) {
            ctx.cos_shift[t].resize(ctx.k_count);
            ctx.sin_shift[t].resize(ctx.k_count);
            for (long long k = 0; k < ctx.k_count; ++k) {
                double ph = 2.0 * kPi * ctx.xi[t].dot(ctx.mu[k]);
                ctx.cos_shift[t][k] = std::cos(ph);
                ctx.sin_shift[t][k] = std::sin(ph);
            }
        }
    } else {
        ctx.norm = std::pow(2.0 * kPi * sigma * sigma, -n);
        ctx.buckets.resize(ctx.k_count);
        ctx.buckets[0].push_back(Eigen::VectorXd::Zero(dim));
        auto list = enumerate_short(gram_dual, r_direct);
        std::vector<long long> coords(dim);
        for (const auto &[c, n2] : list.entries) {
            for (int i = 0; i < dim; ++i) coords[i] = c[i];
            Eigen::VectorXd cv(dim);
            for (int i = 0; i < dim; ++i) cv(i) = static_cast<double>(c[i]);
            ctx.buckets[flat_label(ctx, coords)].push_back(
                code.dual_basis * cv);
        }
    }
    return ctx;
}

// All coset densities F_k(y); y must lie in (a modest neighborhood of) the
// centered fundamental parallelepiped of Λ^⊥.
void densities(const DensityContext &ctx, const Eigen::VectorXd &y,
               std::vector<double> &out) {
    out.assign(ctx.k_count, 0.0);
    if (ctx.fourier) {
        for (std::size_t t = 0; t < ctx.xi.size(); ++t) {
            double a = 2.0 * kPi * ctx.xi[t].dot(y);
            double ca = std::cos(a), sa = std::sin(a);
            double c = ctx.coef[t];
            for (long long k = 0; k < ctx.k_count; ++k)
                out[k] += c * (ca * ctx.cos_shift[t][k] -
                               sa * ctx.sin_shift[t][k]);
        }
    } else {
        const double inv = 1.0 / (2.0 * ctx.sigma * ctx.sigma);
        for (long long k = 0; k < ctx.k_count; ++k) {
            double s = 0.0;
            for (const auto &w : ctx.buckets[k])
                s += std::exp(-(y + w).squaredNorm() * inv);
            out[k] = ctx.norm * s;
        }
    }
}

// Minimal-norm representative of the coset (y + μ_k) + Λ, used as the
// canonical tie-break key: norm first, then lexicographic.
Eigen::VectorXd tie_key(const GkpCode &code, const Eigen::VectorXd &point) {
    auto [cv, d2] = closest_vector(code.lattice, point);
    (void)d2;
    return point - cv;
}

bool key_less(const Eigen::VectorXd &a, const Eigen::VectorXd &b) {
    double na = a.squaredNorm(), nb = b.squaredNorm();
    if (na < nb * (1.0 - kTieRel)) return true;
    if (nb < na * (1.0 - kTieRel)) return false;
    for (int i = 0; i < a.size(); ++i) {
        if (a(i) < b(i) - 1e-12) return true;
        if (b(i) < a(i) - 1e-12) return false;
    }
    return false;
}

// Index of the coset the likelihood decoder selects at reduced point y.
long long mld_winner(const DensityContext &ctx, const Eigen::VectorXd &y) {
    std::vector<double> f;
    densities(ctx, y, f);
    double best = *std::max_element(f.begin(), f.end());
    std::vector<long long> tied;
    for (long long k = 0; k < ctx.k_count; ++k)
        if (f[k] >= best * (1.0 - kTieRel)) tied.push_back(k);
    if (tied.size() == 1) return tied[0];
    long long win = tied[0];
    Eigen::VectorXd wkey = tie_key(*ctx.code, y + ctx.mu[win]);
    for (std::size_t i = 1; i < tied.size(); ++i) {
        Eigen::VectorXd key = tie_key(*ctx.code, y + ctx.mu[tied[i]]);
        if (key_less(key, wkey)) {
            win = tied[i];
            wkey = key;
        }
    }
    return win;
}

// Reduce v modulo Λ^⊥ into the centered parallelepiped; returns the flat
// label of the removed Λ^⊥ vector's coset in K.
long long reduce_mod_dual(const DensityContext &ctx, const Eigen::VectorXd &v,
                          Eigen::VectorXd &y) {
    const GkpCode &code = *ctx.code;
    Eigen::VectorXd c = code.dual_basis.fullPivLu().solve(v);
    std::vector<long long> k(code.dim());
    Eigen::VectorXd frac(code.dim());
    for (int i = 0; i < code.dim(); ++i) {
        k[i] = static_cast<long long>(std::llround(c(i)));
        frac(i) = c(i) - static_cast<double>(k[i]);
    }
    y = code.dual_basis * frac;
    return flat_label(ctx, k);
}

bool mld_decide(const DensityContext &ctx, const Eigen::VectorXd &v) {
    Eigen::VectorXd y;
    long long truth = reduce_mod_dual(ctx, v, y);
    return mld_winner(ctx, y) == truth;
}

double wilson_low(double phat, double nn, bool upper) {
    const double z = 1.959963984540054;
    double z2 = z * z;
    double denom = 1.0 + z2 / nn;
    double center = (phat + z2 / (2.0 * nn)) / denom;
    double half =
        z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    return upper ? center + half : center - half;
}

void attach_analytics(const GkpCode &code, double sigma, DecoderReport &rep) {
    try {
        SystoleReport sys = systole_report(code);
        rep.leading_term = 2.0 * static_cast<double>(sys.count) * sigma /
                           (sys.ell * std::sqrt(2.0 * kPi)) *
                           std::exp(-sys.ell * sys.ell / (8.0 * sigma * sigma));
        double cutoff = std::max(3.0 * sys.ell, sys.ell + 14.0 * sigma);
        rep.analytic_bound = fragility_bound(code, sigma, cutoff);
    } catch (const TrivialCode &) {
        // principal lattice: no logical distance scale, leave both unset
    }
}

// Deterministic parallel-for over integer rows; each row's double result
// lands in a fixed slot, so the final fixed-order sum is thread-invariant.
void parallel_rows(long long rows, int threads,
                   const std::function<double(long long)> &fn,
                   std::vector<double> &out) {
    out.assign(rows, 0.0);
    int tn = std::max(1, threads);
    std::atomic<long long> next(0);
    auto work = [&] {
        while (true) {
            long long r = next.fetch_add(1);
            if (r >= rows) break;
            out[r] = fn(r);
        }
    };
    if (tn == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < tn; ++t) pool.emplace_back(work);
        for (auto &th : pool) th.join();
    }
}

} // namespace

NoiseModel NoiseModel::gaussian(double sigma) {
    if (!(sigma > 0)) throw InputError("sigma must be positive");
    return {Kind::gaussian, sigma};
}

NoiseModel NoiseModel::uniform() { return {Kind::uniform, 0.0}; }

double periodized_density(const GkpCode &code, const Eigen::VectorXd &v,
                          double sigma, double eps) {
    if (!(sigma > 0)) throw InputError("sigma must be positive");
    if (!(eps > 0 && eps < 1e-3)) throw InputError("eps must lie in (0, 1e-3)");
    const int n = code.n();
    // λ* minimizes |v + λ|, i.e. it is the lattice point closest to −v.
    auto [lam_star, d2] = closest_vector(code.lattice, -v);
    (void)d2;
    Eigen::VectorXd r0 = v + lam_star;
    double radius = r0.norm() + sigma * trunc_multiplier(eps);
    auto list = enumerate_short(code.lattice, radius + r0.norm());
    const double inv = 1.0 / (2.0 * sigma * sigma);
    double s = std::exp(-r0.squaredNorm() * inv);
    for (const auto &[c, n2] : list.entries) {
        Eigen::VectorXd cvv(code.dim());
        for (int i = 0; i < code.dim(); ++i) cvv(i) = static_cast<double>(c[i]);
        Eigen::VectorXd p = r0 + code.lattice.basis * cvv;
        if (p.norm() <= radius) s += std::exp(-p.squaredNorm() * inv);
    }
    return std::pow(2.0 * kPi * sigma * sigma, -n) * s;
}

bool mld_success(const GkpCode &code, const Eigen::VectorXd &v, double sigma) {
    DensityContext ctx = make_context(code, sigma);
    return mld_decide(ctx, v);
}

bool med_success(const GkpCode &code, const Eigen::VectorXd &v) {
    Eigen::MatrixXd gram_dual =
        code.dual_basis.transpose() * code.dual_basis;
    Eigen::VectorXd t = code.dual_basis.fullPivLu().solve(v);
    auto [coords, d2] = closest_coords(gram_dual, t);
    (void)d2;
    for (int i = 0; i < code.dim(); ++i)
        if (coords[i] % axis_divisor(code, i) != 0) return false;
    return true;
}

DecoderReport robustness_mc(const GkpCode &code, const NoiseModel &noise,
                            const std::string &decoder, long long samples,
                            std::uint64_t seed, int threads) {
    if (samples < 1000) throw InputError("samples must be at least 1000");
    if (decoder != "mld" && decoder != "med")
        throw InputError("decoder must be 'mld' or 'med'");
    const int dim = code.dim();
    const bool gauss = noise.kind == NoiseModel::Kind::gaussian;
    // Under Haar noise every coset density ties, and the tie-break picks the
    // coset of the minimal-norm residual — exactly the MED rule.
    const bool use_mld = gauss && decoder == "mld";

    DensityContext ctx;
    if (use_mld) ctx = make_context(code, noise.sigma);

    auto sample_vec = [&](long long i) {
        Eigen::VectorXd v(dim);
        if (gauss) {
            std::uint64_t base = static_cast<std::uint64_t>(i) *
                                 static_cast<std::uint64_t>((dim + 1) / 2);
            for (int j = 0; j < dim; j += 2) {
                auto [a, b] = normal_pair(seed, base + j / 2);
                v(j) = noise.sigma * a;
                if (j + 1 < dim) v(j + 1) = noise.sigma * b;
            }
        } else {
            std::uint64_t base =
                static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(dim);
            Eigen::VectorXd frac(dim);
            for (int j = 0; j < dim; ++j)
                frac(j) = uniform01(seed, base + j) - 0.5;
            v = code.frob_basis * frac;
        }
        return v;
    };

    // Fixed 4096-sample blocks with integer success counts: the total is
    // independent of how blocks are distributed over threads.
    const long long block = 4096;
    const long long blocks = (samples + block - 1) / block;
    std::vector<double> counts;
    parallel_rows(blocks, threads, [&](long long bi) {
        long long lo = bi * block, hi = std::min(samples, lo + block);
        long long good = 0;
        for (long long i = lo; i < hi; ++i) {
            Eigen::VectorXd v = sample_vec(i);
            bool ok = use_mld ? mld_decide(ctx, v) : med_success(code, v);
            if (ok) ++good;
        }
        return static_cast<double>(good);
    }, counts);
    long long good = 0;
    for (double c : counts) good += static_cast<long long>(c);

    DecoderReport rep;
    rep.decoder = decoder;
    rep.samples_or_grid = samples;
    rep.estimate = static_cast<double>(good) / static_cast<double>(samples);
    rep.ci_low = wilson_low(rep.estimate, static_cast<double>(samples), false);
    rep.ci_high = wilson_low(rep.estimate, static_cast<double>(samples), true);
    if (gauss) attach_analytics(code, noise.sigma, rep);
    return rep;
}

namespace {

double quad_pass(const GkpCode &code, const DensityContext &ctx, int grid,
                 int threads) {
    const int dim = code.dim();
    const double cell =
        (code.lattice.covolume() / static_cast<double>(ctx.k_count)) /
        std::pow(static_cast<double>(grid), dim);
    std::vector<double> rows;
    parallel_rows(grid, threads, [&](long long r0) {
        std::vector<int> idx(dim, 0);
        idx[0] = static_cast<int>(r0);
        Eigen::VectorXd frac(dim);
        std::vector<double> f;
        double acc = 0.0;
        while (true) {
            for (int i = 0; i < dim; ++i)
                frac(i) = (idx[i] + 0.5) / static_cast<double>(grid) - 0.5;
            Eigen::VectorXd y = code.dual_basis * frac;
            densities(ctx, y, f);
            acc += *std::max_element(f.begin(), f.end());
            int i = dim - 1;
            for (; i >= 1; --i) {
                if (++idx[i] < grid) break;
                idx[i] = 0;
            }
            if (i < 1) break;
        }
        return acc * cell;
    }, rows);
    double total = 0.0;
    for (double r : rows) total += r;
    return total;
}

} // namespace

DecoderReport robustness_quadrature(const GkpCode &code, double sigma,
                                    int grid, int threads) {
    if (code.n() > 2) throw InputError("quadrature supports n <= 2 only");
    if (grid < 4) throw InputError("grid too small");
    DensityContext ctx = make_context(code, sigma);
    double fine = quad_pass(code, ctx, grid, threads);
    double coarse = quad_pass(code, ctx, std::max(2, grid / 2), threads);
    if (std::abs(fine - coarse) > 1e-4 * std::max(std::abs(fine), 1e-300))
        throw GridTooCoarse("quadrature not converged at grid " +
                            std::to_string(grid));
    DecoderReport rep;
    rep.decoder = "mld";
    rep.samples_or_grid = grid;
    rep.estimate = std::min(1.0, std::max(0.0, fine));
    rep.ci_low = rep.ci_high = rep.estimate;
    attach_analytics(code, sigma, rep);
    return rep;
}

DecoderReport robustness_quadrature(const GkpCode &code,
                                    const NoiseModel &noise, int grid,
                                    int threads) {
    if (noise.kind == NoiseModel::Kind::gaussian)
        return robustness_quadrature(code, noise.sigma, grid, threads);
    // Haar noise: every coset density is the constant 1/covol(Λ), so the
    // midpoint rule integrates the max exactly: covol(Λ^⊥)/covol(Λ) = 1/|K|.
    QuotientGroup q = quotient_group(code);
    DecoderReport rep;
    rep.decoder = "mld";
    rep.samples_or_grid = grid;
    rep.estimate = 1.0 / static_cast<double>(q.reps.size());
    rep.ci_low = rep.ci_high = rep.estimate;
    return rep;
}

double fragility_bound(const GkpCode &code, double sigma,
                       double cutoff_radius) {
    if (!(sigma > 0)) throw InputError("sigma must be positive");
    SystoleReport sys = systole_report(code);
    if (!(cutoff_radius >= 3.0 * sys.ell))
        throw InputError("cutoff_radius must be at least 3*ell");
    Eigen::MatrixXd gram_dual =
        code.dual_basis.transpose() * code.dual_basis;
    auto list = enumerate_short(gram_dual, cutoff_radius);
    const double pref = 2.0 * sigma / std::sqrt(2.0 * kPi);
    double s = 0.0;
    for (const auto &[c, n2] : list.entries) {
        bool in_lattice = true;
        for (int i = 0; i < code.dim(); ++i)
            if (c[i] % axis_divisor(code, i) != 0) {
                in_lattice = false;
                break;
            }
        if (in_lattice) continue;
        double norm = std::sqrt(n2);
        s += std::exp(-n2 / (8.0 * sigma * sigma)) / norm;
    }

    // Rigorous tail: pack a ball of radius ρ = λ₁(Λ^⊥)/2 around each dual
    // point beyond the cutoff and compare with the radial integral
    // (1/vol Bρ)·S_{2n−1} ∫_{Rc−ρ} r^{2n−1} e^{−(r−ρ)²/8σ²} dr / Rc.
    const int m = code.dim(); // 2n
    double rho = 0.5 * std::sqrt(lambda1(gram_dual));
    double vball = std::pow(kPi, m / 2.0) * std::pow(rho, m) /
                   std::tgamma(m / 2.0 + 1.0);
    double sphere = 2.0 * std::pow(kPi, m / 2.0) / std::tgamma(m / 2.0);
    double lo = std::max(0.0, cutoff_radius - rho);
    double h = std::min(sigma, rho) / 50.0;
    double integral = 0.0;
    for (double r = lo;; r += h) {
        double e = (r - rho) * (r - rho) / (8.0 * sigma * sigma);
        if (r > lo && e > 120.0) break;
        double g0 = std::pow(r, m - 1) * std::exp(-std::max(0.0, r - rho) *
                                                  std::max(0.0, r - rho) /
                                                  (8.0 * sigma * sigma));
        double r1 = r + h;
        double g1 = std::pow(r1, m - 1) *
                    std::exp(-(r1 - rho) * (r1 - rho) / (8.0 * sigma * sigma));
        integral += h * std::max(g0, g1); // upper Riemann: keeps it a bound
    }
    double tail = sphere * integral / (vball * cutoff_radius);
    return pref * (s + tail);
}

double fragility_leading(const GkpCode &code, double sigma) {
    if (!(sigma > 0)) throw InputError("sigma must be positive");
    SystoleReport sys = systole_report(code);
    return 2.0 * static_cast<double>(sys.count) * sigma /
           (sys.ell * std::sqrt(2.0 * kPi)) *
           std::exp(-sys.ell * sys.ell / (8.0 * sigma * sigma));
}

} // namespace gkp
