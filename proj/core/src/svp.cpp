#include "gkp/svp.hpp"

#include "gkp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gkp {

namespace {

// Gram–Schmidt data of a (possibly reduced) Gram matrix: mu is strictly
// lower triangular, b holds the squared norms of the orthogonalized basis.
struct Gso {
    Eigen::MatrixXd mu;
    Eigen::VectorXd b;
};

Gso gram_schmidt(const Eigen::MatrixXd &g) {
    const int dim = static_cast<int>(g.rows());
    Gso out;
    out.mu = Eigen::MatrixXd::Zero(dim, dim);
    out.b = Eigen::VectorXd::Zero(dim);
    const double floor_b = 1e-14 * g.diagonal().maxCoeff();
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < i; ++j) {
            double s = g(i, j);
            for (int k = 0; k < j; ++k)
                s -= out.mu(i, k) * out.mu(j, k) * out.b(k);
            out.mu(i, j) = s / out.b(j);
        }
        double bi = g(i, i);
        for (int k = 0; k < i; ++k) bi -= out.mu(i, k) * out.mu(i, k) * out.b(k);
        if (!(bi > floor_b))
            throw NumericalBreakdown("Gram-Schmidt norm underflow");
        out.b(i) = bi;
    }
    return out;
}

// Congruence column operation applied to a working Gram: col/row update for
// basis change b_a += q·b_b.
void gram_add(Eigen::MatrixXd &g, int a, int b, double q) {
    g.col(a) += q * g.col(b);
    g.row(a) += q * g.row(b);
}

void gram_swap(Eigen::MatrixXd &g, int a, int b) {
    g.col(a).swap(g.col(b));
    g.row(a).swap(g.row(b));
}

} // namespace

IMat lll_reduce(const Eigen::MatrixXd &gram) {
    const int dim = static_cast<int>(gram.rows());
    const double delta = 0.99;
    Eigen::MatrixXd g = gram;
    IMat t = IMat::identity(dim);

    int k = 1;
    long long guard = 0;
    while (k < dim) {
        if (++guard > 1000000)
            throw NumericalBreakdown("LLL failed to terminate");
        Gso gs = gram_schmidt(g);
        // Size-reduce b_k against b_{k-1}, ..., b_0.
        for (int j = k - 1; j >= 0; --j) {
            double q = std::round(gs.mu(k, j));
            if (q != 0.0) {
                gram_add(g, k, j, -q);
                t.add_col(k, j, BigInt(static_cast<long long>(-q)));
                gs = gram_schmidt(g);
            }
        }
        // Lovász condition.
        if (gs.b(k) >= (delta - gs.mu(k, k - 1) * gs.mu(k, k - 1)) * gs.b(k - 1)) {
            ++k;
        } else {
            gram_swap(g, k, k - 1);
            t.swap_cols(k, k - 1);
            k = std::max(1, k - 1);
        }
    }
    return t;
}

namespace {

// Fincke–Pohst enumeration around a (real) target in reduced coordinates.
// Returns all integer x with Σ b_i (x_i − c_i(x))² ≤ r2, where c_i folds in
// both the target and the mu-corrections. Excludes nothing; the caller
// filters zero if needed.
void enumerate_around(const Gso &gs, const Eigen::VectorXd &target, double r2,
                      long long node_cap,
                      std::vector<std::pair<std::vector<long long>, double>> &out) {
    const int dim = static_cast<int>(gs.b.size());
    std::vector<long long> x(dim, 0);
    std::vector<double> partial(dim + 1, 0.0); // accumulated norm above level i
    long long nodes = 0;

    // Recursive descent from the last coordinate.
    auto rec = [&](auto &&self, int i) -> void {
        if (++nodes > node_cap)
            throw BudgetExceeded("enumeration node cap exceeded");
        if (i < 0) {
            out.emplace_back(x, partial[0]);
            return;
        }
        // Level contribution: y_i = (x_i − t_i) + Σ_{j>i} mu_{ji}(x_j − t_j).
        double shift = 0.0;
        for (int j = i + 1; j < dim; ++j)
            shift += gs.mu(j, i) * (static_cast<double>(x[j]) - target(j));
        double center = target(i) - shift;
        double room = r2 - partial[i + 1];
        if (room < 0) return;
        double half = std::sqrt(room / gs.b(i));
        long long lo = static_cast<long long>(std::ceil(center - half - 1e-12));
        long long hi = static_cast<long long>(std::floor(center + half + 1e-12));
        for (long long v = lo; v <= hi; ++v) {
            x[i] = v;
            double y = (static_cast<double>(v) - target(i)) + shift;
            double contrib = gs.b(i) * y * y;
            if (partial[i + 1] + contrib > r2 * (1 + 1e-12) + 1e-12) continue;
            partial[i] = partial[i + 1] + contrib;
            self(self, i - 1);
        }
        x[i] = 0;
    };
    rec(rec, dim - 1);
}

std::vector<long long> apply_transform(const IMat &t,
                                       const std::vector<long long> &x) {
    const int dim = static_cast<int>(t.rows());
    std::vector<long long> y(dim, 0);
    for (int i = 0; i < dim; ++i) {
        BigInt acc(0);
        for (int j = 0; j < dim; ++j) acc += t(i, j) * BigInt(x[j]);
        y[i] = static_cast<long long>(acc);
    }
    return y;
}

double exact_norm(const Eigen::MatrixXd &gram, const std::vector<long long> &x) {
    const int dim = static_cast<int>(gram.rows());
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < dim; ++j)
            s += static_cast<double>(x[i]) * gram(i, j) *
                 static_cast<double>(x[j]);
    }
    return s;
}

} // namespace

ShortVectorList enumerate_short(const Eigen::MatrixXd &gram, double radius,
                                long long node_cap) {
    if (!(radius > 0)) throw InputError("enumeration radius must be positive");
    const int dim = static_cast<int>(gram.rows());
    IMat t = lll_reduce(gram);
    Eigen::MatrixXd td(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) td(i, j) = static_cast<double>(t(i, j));
    Eigen::MatrixXd gr = td.transpose() * gram * td;
    Gso gs = gram_schmidt(gr);

    const double r2 = radius * radius * (1 + 1e-9);
    std::vector<std::pair<std::vector<long long>, double>> raw;
    enumerate_around(gs, Eigen::VectorXd::Zero(dim), r2, node_cap, raw);

    ShortVectorList out;
    out.radius = radius;
    for (auto &[xr, n2] : raw) {
        if (std::all_of(xr.begin(), xr.end(), [](long long v) { return v == 0; }))
            continue;
        std::vector<long long> x = apply_transform(t, xr);
        double norm2 = exact_norm(gram, x); // re-verified against the Gram
        if (norm2 <= radius * radius * (1 + 1e-9))
            out.entries.emplace_back(std::move(x), norm2);
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const auto &a, const auto &b) {
                  return a.second != b.second ? a.second < b.second
                                              : a.first < b.first;
              });
    return out;
}

ShortVectorList enumerate_short(const GkpLattice &lat, double radius,
                                long long node_cap) {
    return enumerate_short(lat.gram_s, radius, node_cap);
}

double lambda1(const Eigen::MatrixXd &gram, long long node_cap) {
    IMat t = lll_reduce(gram);
    const int dim = static_cast<int>(gram.rows());
    double best = std::numeric_limits<double>::max();
    for (int j = 0; j < dim; ++j) {
        std::vector<long long> col(dim);
        for (int i = 0; i < dim; ++i) col[i] = static_cast<long long>(t(i, j));
        best = std::min(best, exact_norm(gram, col));
    }
    auto list = enumerate_short(gram, std::sqrt(best) * (1 + 1e-12), node_cap);
    return std::sqrt(list.entries.front().second);
}

std::pair<std::vector<long long>, double>
closest_coords(const Eigen::MatrixXd &gram, const Eigen::VectorXd &target_coords,
               long long node_cap) {
    const int dim = static_cast<int>(gram.rows());
    IMat t = lll_reduce(gram);
    Eigen::MatrixXd td(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) td(i, j) = static_cast<double>(t(i, j));
    Eigen::MatrixXd gr = td.transpose() * gram * td;
    Gso gs = gram_schmidt(gr);
    Eigen::VectorXd tr = td.fullPivLu().solve(target_coords);

    // Babai rounding gives a radius guaranteed to contain the solution.
    std::vector<long long> babai(dim);
    {
        Eigen::VectorXd y = tr;
        for (int i = dim - 1; i >= 0; --i) {
            double c = y(i);
            for (int j = i + 1; j < dim; ++j)
                c -= gs.mu(j, i) * (static_cast<double>(babai[j]) - tr(j));
            // Approximate nested rounding; only used for the search radius.
            babai[i] = static_cast<long long>(std::llround(c));
        }
    }
    Eigen::VectorXd bd(dim);
    for (int i = 0; i < dim; ++i) bd(i) = static_cast<double>(babai[i]);
    double r2 = (bd - tr).transpose() * gr * (bd - tr);
    r2 = r2 * (1 + 1e-9) + 1e-12;

    std::vector<std::pair<std::vector<long long>, double>> raw;
    enumerate_around(gs, tr, r2, node_cap, raw);

    std::pair<std::vector<long long>, double> best;
    bool have = false;
    for (auto &[xr, d2] : raw) {
        std::vector<long long> x = apply_transform(t, xr);
        if (!have || d2 < best.second * (1 - 1e-12) ||
            (d2 <= best.second * (1 + 1e-12) && x < best.first)) {
            best = {std::move(x), d2};
            have = true;
        }
    }
    if (!have) throw NumericalBreakdown("CVP search returned no candidates");
    return best;
}

std::pair<Eigen::VectorXd, double>
closest_vector(const GkpLattice &lat, const Eigen::VectorXd &target,
               long long node_cap) {
    Eigen::VectorXd tc = lat.basis.fullPivLu().solve(target);
    auto [coords, d2] = closest_coords(lat.gram_s, tc, node_cap);
    Eigen::VectorXd cd(lat.dim());
    for (int i = 0; i < lat.dim(); ++i) cd(i) = static_cast<double>(coords[i]);
    Eigen::VectorXd v = lat.basis * cd;
    return {v, (v - target).squaredNorm()};
}

SystoleReport systole_report(const GkpCode &code, long long node_cap) {
    if (code.sympl.type.is_principal())
        throw TrivialCode("type (1,...,1): the dual equals the lattice");
    const int dim = code.dim(), n = code.n();
    Eigen::MatrixXd gram_dual =
        code.dual_basis.transpose() * code.dual_basis;

    SystoleReport rep;
    rep.lambda1_lattice = lambda1(code.lattice.gram_s, node_cap);
    rep.lambda1_dual = lambda1(gram_dual, node_cap);

    auto in_lattice = [&](const std::vector<long long> &c) {
        for (int i = 0; i < dim; ++i) {
            long long d = code.divisors[i < n ? i : i - n];
            if (c[i] % d != 0) return false;
        }
        return true;
    };

    double radius = rep.lambda1_dual * (1 + 1e-9);
    for (int iter = 0; iter < 64; ++iter) {
        auto list = enumerate_short(gram_dual, radius, node_cap);
        double ell2 = -1.0;
        for (const auto &[c, n2] : list.entries) {
            if (in_lattice(c)) continue;
            if (ell2 < 0) ell2 = n2;
            if (n2 > ell2 * (1 + 1e-9)) break;
            rep.minimizer_dual_coords.push_back(c);
        }
        if (ell2 >= 0) {
            rep.ell = std::sqrt(ell2);
            rep.count = static_cast<long long>(rep.minimizer_dual_coords.size());
            for (const auto &c : rep.minimizer_dual_coords) {
                Eigen::VectorXd cd(dim);
                for (int i = 0; i < dim; ++i) cd(i) = static_cast<double>(c[i]);
                rep.minimizers.push_back(code.dual_basis * cd);
            }
            return rep;
        }
        radius *= 1.5;
    }
    throw NumericalBreakdown("no dual-minus-lattice vector found");
}

} // namespace gkp
