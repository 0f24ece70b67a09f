#pragma once

#include <complex>
#include <vector>

namespace tmom {

using Coeff = std::complex<double>;

// Dense complex matrix, row-major. Sizes here are desk scale (a few hundred
// rows at most), so no effort is spent on blocking or expression templates.
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Coeff& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Coeff& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix adjoint() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(Coeff factor) const;

    double frobenius() const;
    // max_ij |a(i,j) - conj(a(j,i))|; zero for Hermitian matrices
    double max_asymmetry() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Coeff> a_;
};

struct EigResult {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k is the eigenvector of values[k]
};

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Stops when the off-diagonal mass drops below off_tol * max(1, ||H||_F).
EigResult jacobi_hermitian(Matrix h, double off_tol = 1e-12, int max_sweeps = 64);

// Singular values (descending) via one-sided Jacobi on the columns.
// Requires rows >= cols.
std::vector<double> singular_values(Matrix m, int max_sweeps = 64);

}  // namespace tmom
