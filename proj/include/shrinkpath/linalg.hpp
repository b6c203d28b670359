#pragma once

#include <cstddef>
#include <vector>

namespace shrinkpath {

using Vector = std::vector<double>;

// Dense row-major matrix, sized once at construction.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector column(std::size_t j) const;
    Vector row(std::size_t i) const;

    Matrix transposed() const;
    double max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);

/// Pearson correlation of two equal-length samples.
double pearson(const Vector& a, const Vector& b);

struct SvdResult {
    Matrix u;        // n x p, orthonormal columns
    Vector sigma;    // p singular values, descending
    Matrix v;        // p x p orthogonal
};

// One-sided Jacobi SVD: rotates column pairs of a working copy of X until
// every pair is orthogonal to relative tolerance 1e-14. Columns of V pick
// up the same rotations, so X = U diag(sigma) V'. Singular values come out
// sorted descending with no sign adjustment applied to V.
SvdResult jacobi_svd(const Matrix& x);

struct SymEigenResult {
    Vector values;   // descending
    Matrix vectors;  // eigenvectors as columns, matching order
};

// Cyclic Jacobi for a symmetric matrix; off-diagonal threshold 1e-12
// relative to the matrix scale, at most 100 sweeps.
SymEigenResult jacobi_eigen_sym(Matrix a);

}  // namespace shrinkpath
