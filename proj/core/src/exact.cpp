#include "gkp/exact.hpp"

#include "gkp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gkp {

QMat to_rational(const IMat &m) {
    QMat q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
    return q;
}

BigInt det(const IMat &m) {
    Rat d = det(to_rational(m));
    return boost::multiprecision::numerator(d); // denominator is 1
}

Rat det(const QMat &min) {
    QMat m = min;
    const std::size_t n = m.rows();
    Rat d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            m.swap_rows(p, c);
            d = -d;
        }
        d *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            Rat f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return d;
}

QMat inverse(const QMat &min) {
    const std::size_t n = min.rows();
    QMat m = min;
    QMat inv = QMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) throw Singular("matrix is not invertible");
        if (p != c) {
            m.swap_rows(p, c);
            inv.swap_rows(p, c);
        }
        Rat piv = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            Rat f = m(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

std::vector<Rat> solve(const QMat &m, const std::vector<Rat> &b) {
    QMat inv = inverse(m);
    std::vector<Rat> x(m.rows(), Rat(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) x[i] += inv(i, j) * b[j];
    return x;
}

namespace {

BigInt abs_bi(const BigInt &x) { return x < 0 ? BigInt(-x) : x; }

// Nearest-integer quotient, so remainders satisfy |r| ≤ |d|/2.
BigInt round_div(const BigInt &a, const BigInt &d) {
    BigInt q = a / d, r = a - q * d;
    if (2 * abs_bi(r) > abs_bi(d)) q += (r < 0) == (d < 0) ? 1 : -1;
    return q;
}

} // namespace

std::vector<BigInt> smith_divisors(IMat m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<BigInt> divisors;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Find a minimal-|·| nonzero pivot in the remaining block.
        std::size_t pi = t, pj = t;
        BigInt best(0);
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (m(i, j) == 0) continue;
                BigInt a = abs_bi(m(i, j));
                if (best == 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        m.swap_rows(pi, t);
        m.swap_cols(pj, t);
        if (m(t, t) < 0)
            for (std::size_t j = t; j < cols; ++j) m(t, j) = -m(t, j);

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i)
            if (m(i, t) != 0) {
                m.add_row(i, t, -round_div(m(i, t), m(t, t)));
                if (m(i, t) != 0) clean = false;
            }
        for (std::size_t j = t + 1; j < cols; ++j)
            if (m(t, j) != 0) {
                m.add_col(j, t, -round_div(m(t, j), m(t, t)));
                if (m(t, j) != 0) clean = false;
            }
        if (!clean) continue; // smaller pivot now exists; redo this step

        // Enforce divisibility: fold any non-multiple into row t and redo.
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
            for (std::size_t j = t + 1; j < cols && divides; ++j)
                if (m(i, j) % m(t, t) != 0) {
                    m.add_row(t, i, BigInt(1));
                    divides = false;
                }
        if (!divides) continue;

        divisors.push_back(m(t, t));
        ++t;
    }
    return divisors;
}

IMat hermite_column_basis(IMat a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t c = 0; // next pivot column
    for (std::size_t r = 0; r < rows && c < cols; ++r) {
        // Euclidean elimination across columns c..cols-1 in row r.
        while (true) {
            std::size_t nz = cols;
            BigInt best(0);
            for (std::size_t j = c; j < cols; ++j) {
                if (a(r, j) == 0) continue;
                BigInt v = abs_bi(a(r, j));
                if (best == 0 || v < best) {
                    best = v;
                    nz = j;
                }
            }
            if (nz == cols) break; // row r is zero beyond the pivots
            a.swap_cols(c, nz);
            bool done = true;
            for (std::size_t j = c + 1; j < cols; ++j)
                if (a(r, j) != 0) {
                    a.add_col(j, c, -round_div(a(r, j), a(r, c)));
                    if (a(r, j) != 0) done = false;
                }
            if (done) break;
        }
        if (a(r, c) == 0) continue; // no pivot in this row
        if (a(r, c) < 0) a.scale_col(c, BigInt(-1));
        for (std::size_t j = 0; j < c; ++j) {
            // Reduce earlier columns against the new pivot (floor division
            // keeps the echelon entries in [0, pivot)).
            BigInt q = a(r, j) / a(r, c);
            BigInt rem = a(r, j) - q * a(r, c);
            if (rem < 0) q -= 1;
            if (q != 0) a.add_col(j, c, -q);
        }
        ++c;
    }
    IMat h(rows, c);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < c; ++j) h(i, j) = a(i, j);
    return h;
}

FrobeniusForm frobenius_reduce(const IMat &gram) {
    if (!is_antisymmetric(gram))
        throw InputError("Frobenius reduction requires an antisymmetric Gram");
    if (gram.rows() % 2 != 0)
        throw InputError("Frobenius reduction requires even dimension");
    const std::size_t dim = gram.rows();
    IMat g = gram;
    IMat u = IMat::identity(dim);

    // Apply the column operation to both G (congruence) and U.
    auto cswap = [&](std::size_t a, std::size_t b) {
        g.swap_cols(a, b);
        g.swap_rows(a, b);
        u.swap_cols(a, b);
    };
    auto cadd = [&](std::size_t a, std::size_t b, const BigInt &q) {
        g.add_col(a, b, q);
        g.add_row(a, b, q);
        u.add_col(a, b, q);
    };
    auto cneg = [&](std::size_t a) {
        g.scale_col(a, BigInt(-1));
        g.add_row(a, a, BigInt(-2)); // net effect: negate row a
        u.scale_col(a, BigInt(-1));
    };

    std::size_t k = 0;
    while (k < dim) {
        // Minimal nonzero entry of the trailing block becomes the pivot pair.
        std::size_t pi = k, pj = k;
        BigInt best(0);
        for (std::size_t i = k; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j) {
                if (g(i, j) == 0) continue;
                BigInt a = abs_bi(g(i, j));
                if (best == 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) throw Singular("degenerate alternating Gram");
        // pj > pi ≥ k guarantees pj ≥ k+1, so the two swaps cannot collide.
        if (pi != k) cswap(pi, k);
        if (pj != k + 1) cswap(pj, k + 1);
        if (g(k, k + 1) < 0) cneg(k + 1);
        const BigInt d = g(k, k + 1);

        // Clear rows k and k+1 beyond the pair by Euclidean steps.
        bool clean = true;
        for (std::size_t r = k + 2; r < dim; ++r) {
            if (g(k, r) != 0) {
                cadd(r, k + 1, -round_div(g(k, r), d));
                if (g(k, r) != 0) clean = false;
            }
            if (g(k + 1, r) != 0) {
                cadd(r, k, round_div(g(k + 1, r), d));
                if (g(k + 1, r) != 0) clean = false;
            }
        }
        if (!clean) continue; // a smaller pivot exists now

        // Enforce the divisibility chain: pull a non-multiple into row k.
        bool divides = true;
        for (std::size_t i = k + 2; i < dim && divides; ++i)
            for (std::size_t j = i + 1; j < dim && divides; ++j)
                if (g(i, j) % d != 0) {
                    cadd(k, i, BigInt(1));
                    divides = false;
                }
        if (!divides) continue;

        k += 2;
    }

    // Columns are now paired (e_1,f_1,e_2,f_2,...); reorder to
    // (λ_1..λ_n, μ_1..μ_n).
    const std::size_t n = dim / 2;
    IMat perm(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
        perm(2 * i, i) = 1;
        perm(2 * i + 1, n + i) = 1;
    }
    FrobeniusForm out;
    out.u = u * perm;
    IMat gg = out.u.transpose() * gram * out.u;
    out.divisors.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.divisors[i] = gg(i, n + i);
    return out;
}

bool is_antisymmetric(const IMat &m) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (m(i, j) != -m(j, i)) return false;
    return true;
}

Rat Turn::reduce(Rat t) {
    BigInt num = boost::multiprecision::numerator(t);
    BigInt den = boost::multiprecision::denominator(t);
    BigInt q = num / den;
    if (num < 0 && q * den != num) q -= 1; // floor
    return t - Rat(q);
}

std::complex<double> Turn::to_complex() const {
    double rad = to_radians();
    return {std::cos(rad), std::sin(rad)};
}

double Turn::to_radians() const {
    return 2.0 * std::numbers::pi * static_cast<double>(t_);
}

std::string Turn::to_string() const {
    BigInt num = boost::multiprecision::numerator(t_);
    BigInt den = boost::multiprecision::denominator(t_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rat parse_rational(const std::string &s) {
    if (s.empty()) throw InputError("empty rational literal");
    std::string t = s;
    try {
        auto slash = t.find('/');
        if (slash == std::string::npos) return Rat(BigInt(t));
        BigInt num(t.substr(0, slash));
        BigInt den(t.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const GkpError &) {
        throw;
    } catch (const std::exception &) {
        throw InputError("malformed rational literal '" + s + "'");
    }
}

} // namespace gkp
