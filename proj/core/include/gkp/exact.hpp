#pragma once

// Exact integer/rational linear algebra used for everything group-theoretic:
// symplectic Grams, Smith/Hermite normal forms, the Frobenius (symplectic)
// normal form, and exact phase arithmetic in rational "turns" (multiples of
// a full revolution). Floating point never enters these computations.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gkp {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Dense row-major matrix over an exact scalar (BigInt or Rat).
template <typename T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    bool operator==(const Mat &o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat &o) const {
        Mat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T &a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) += a * o(k, j);
            }
        return r;
    }

    Mat operator-(const Mat &o) const {
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }
    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    // col_a += q * col_b
    void add_col(std::size_t a, std::size_t b, const T &q) {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, a) += q * (*this)(i, b);
    }
    void add_row(std::size_t a, std::size_t b, const T &q) {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(a, j) += q * (*this)(b, j);
    }
    void scale_col(std::size_t a, const T &s) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) *= s;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IMat = Mat<BigInt>;
using QMat = Mat<Rat>;

QMat to_rational(const IMat &m);

// Determinant by exact fraction-free Gaussian elimination.
BigInt det(const IMat &m);
Rat det(const QMat &m);

// Exact inverse; throws Singular if not invertible.
QMat inverse(const QMat &m);

// Solve m·x = b exactly; throws Singular.
std::vector<Rat> solve(const QMat &m, const std::vector<Rat> &b);

// Smith elementary divisors of an integer matrix (nonzero ones, in the
// divisibility chain order d_1 | d_2 | ..., all positive).
std::vector<BigInt> smith_divisors(IMat m);

// Column-style Hermite normal form: returns H (m×r, r = rank) whose columns
// generate the same column lattice as `a`, in column echelon form with
// positive pivots and reduced off-pivot entries.
IMat hermite_column_basis(IMat a);

// Frobenius (symplectic) normal form of a nondegenerate antisymmetric
// integer Gram G of size 2n: a unimodular U with
//   UᵀGU = [[0, D], [−D, 0]],  D = diag(d_1,...,d_n),  d_1 | d_2 | ... | d_n,
// columns of U ordered λ_1..λ_n, μ_1..μ_n.
struct FrobeniusForm {
    IMat u;
    std::vector<BigInt> divisors;
};
FrobeniusForm frobenius_reduce(const IMat &gram);

bool is_antisymmetric(const IMat &m);

// A phase e^{2πi·t} stored as the exact rational turn t ∈ [0, 1).
class Turn {
  public:
    Turn() : t_(0) {}
    explicit Turn(const Rat &t) : t_(reduce(t)) {}
    static Turn half() { return Turn(Rat(1, 2)); }

    const Rat &value() const { return t_; }
    bool is_zero() const { return t_ == 0; }

    Turn operator+(const Turn &o) const { return Turn(t_ + o.t_); }
    Turn operator-(const Turn &o) const { return Turn(t_ - o.t_); }
    Turn operator-() const { return Turn(-t_); }
    Turn operator*(const BigInt &k) const { return Turn(t_ * Rat(k)); }
    bool operator==(const Turn &o) const { return t_ == o.t_; }
    bool operator!=(const Turn &o) const { return t_ != o.t_; }
    bool operator<(const Turn &o) const { return t_ < o.t_; }

    std::complex<double> to_complex() const;
    double to_radians() const;
    std::string to_string() const; // "p/q" in lowest terms

  private:
    static Rat reduce(Rat t);
    Rat t_;
};

// Parse "p/q" or "p" into a rational; throws InputError on malformed input.
Rat parse_rational(const std::string &s);

} // namespace gkp
