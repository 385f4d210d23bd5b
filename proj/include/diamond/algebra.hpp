#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace diamond {

using complex = std::complex<double>;

/// Thrown when an operation is called with arguments outside its contract
/// (wrong shape, non-Hermitian input, bad parameters).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(std::size_t pivot_index, double pivot_magnitude);

    std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
    std::size_t pivot_index_;
};

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const complex> entries() const noexcept { return data_; }
    std::span<complex> entries() noexcept { return data_; }

    ComplexMatrix adjoint() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(complex scale);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, complex scale) { return lhs *= scale; }
    friend ComplexMatrix operator*(complex scale, ComplexMatrix rhs) { return rhs *= scale; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex> data_;
};

std::vector<complex> multiply(const ComplexMatrix& a, std::span<const complex> x);

/// Induced infinity norm (max absolute row sum).
double norm_inf(const ComplexMatrix& a);
double norm_inf(std::span<const complex> x);
double norm_frobenius(const ComplexMatrix& a);
/// max |a_ij - b_ij|
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);
/// max |a_ij - conj(a_ji)|
double hermiticity_defect(const ComplexMatrix& a);
complex trace(const ComplexMatrix& a);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Eigenvalues are returned ascending. Each eigenvector is phase-fixed so that
/// its largest-magnitude component (lowest index on ties) is real positive,
/// which makes the output reproducible bit for bit.
EigenDecomposition herm_eigen(const ComplexMatrix& a);

/// Solves a x = b by Gaussian elimination with partial pivoting.
std::vector<complex> solve_linear(const ComplexMatrix& a, std::span<const complex> b);

}  // namespace diamond
