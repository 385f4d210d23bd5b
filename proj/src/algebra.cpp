#include "diamond/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace diamond {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiRelativeTolerance = 1e-14;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kPivotTolerance = 1e-14;

std::string singular_message(std::size_t pivot_index, double pivot_magnitude)
{
    std::ostringstream os;
    os << "singular matrix: pivot " << pivot_index << " has magnitude " << pivot_magnitude;
    return os.str();
}

double off_diagonal_frobenius(const ComplexMatrix& a)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

// Applies A <- J^H A J and V <- V J for the unitary J acting on the (p, q)
// plane that annihilates A(p, q).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q)
{
    const complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;

    const complex phase = apq / r;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double tau = (aqq - app) / (2.0 * r);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // J = diag(1, e^{-i phi}) G with G the real rotation [[c, s], [-s, c]].
    const complex jpp = c;
    const complex jpq = s;
    const complex jqp = -s * std::conj(phase);
    const complex jqq = c * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const complex akp = a(k, p);
        const complex akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const complex apk = a(p, k);
        const complex aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const complex vkp = v(k, p);
        const complex vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

}  // namespace

SingularMatrixError::SingularMatrixError(std::size_t pivot_index, double pivot_magnitude)
    : std::runtime_error(singular_message(pivot_index, pivot_magnitude)), pivot_index_(pivot_index)
{
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, complex{0.0, 0.0})
{
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (data_.size() != rows_ * cols_)
        throw PreconditionError("ComplexMatrix: entry count does not match rows*cols");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const
{
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw PreconditionError("ComplexMatrix: shape mismatch in addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw PreconditionError("ComplexMatrix: shape mismatch in subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex scale)
{
    for (auto& x : data_) x *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs)
{
    if (lhs.cols_ != rhs.rows_) throw PreconditionError("ComplexMatrix: shape mismatch in product");
    ComplexMatrix out(lhs.rows_, rhs.cols_);
    for (std::size_t i = 0; i < lhs.rows_; ++i)
        for (std::size_t k = 0; k < lhs.cols_; ++k) {
            const complex aik = lhs(i, k);
            if (aik == complex{}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

std::vector<complex> multiply(const ComplexMatrix& a, std::span<const complex> x)
{
    if (a.cols() != x.size()) throw PreconditionError("multiply: shape mismatch");
    std::vector<complex> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        complex sum{};
        for (std::size_t j = 0; j < a.cols(); ++j) sum += a(i, j) * x[j];
        y[i] = sum;
    }
    return y;
}

double norm_inf(const ComplexMatrix& a)
{
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
        best = std::max(best, row);
    }
    return best;
}

double norm_inf(std::span<const complex> x)
{
    double best = 0.0;
    for (const auto& v : x) best = std::max(best, std::abs(v));
    return best;
}

double norm_frobenius(const ComplexMatrix& a)
{
    double sum = 0.0;
    for (const auto& v : a.entries()) sum += std::norm(v);
    return std::sqrt(sum);
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw PreconditionError("max_abs_difference: shape mismatch");
    double best = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        best = std::max(best, std::abs(a.entries()[k] - b.entries()[k]));
    return best;
}

double hermiticity_defect(const ComplexMatrix& a)
{
    if (!a.is_square()) throw PreconditionError("hermiticity_defect: matrix is not square");
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            best = std::max(best, std::abs(a(i, j) - std::conj(a(j, i))));
    return best;
}

complex trace(const ComplexMatrix& a)
{
    if (!a.is_square()) throw PreconditionError("trace: matrix is not square");
    complex sum{};
    for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, i);
    return sum;
}

EigenDecomposition herm_eigen(const ComplexMatrix& input)
{
    if (!input.is_square()) throw PreconditionError("herm_eigen: matrix is not square");
    const double scale = norm_inf(input);
    if (hermiticity_defect(input) >= kHermitianTolerance * (1.0 + scale))
        throw PreconditionError("herm_eigen: matrix is not Hermitian");

    const std::size_t n = input.rows();
    ComplexMatrix a = input;
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double target = kJacobiRelativeTolerance * norm_frobenius(a);
    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        if (off_diagonal_frobenius(a) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenDecomposition out;
    out.eigenvalues.reserve(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.eigenvalues.push_back(a(src, src).real());

        std::size_t lead = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v(i, src)) > std::abs(v(lead, src))) lead = i;
        const double lead_mag = std::abs(v(lead, src));
        const complex fix = lead_mag > 0.0 ? std::conj(v(lead, src)) / lead_mag : complex{1.0};
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, src) * fix;
        out.eigenvectors(lead, k) = lead_mag;
    }
    return out;
}

std::vector<complex> solve_linear(const ComplexMatrix& input, std::span<const complex> b)
{
    if (!input.is_square()) throw PreconditionError("solve_linear: matrix is not square");
    const std::size_t n = input.rows();
    if (b.size() != n) throw PreconditionError("solve_linear: right-hand side length mismatch");

    const double threshold = kPivotTolerance * norm_inf(input);
    ComplexMatrix a = input;
    std::vector<complex> x(b.begin(), b.end());

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        const double magnitude = std::abs(a(pivot, col));
        if (magnitude <= threshold || magnitude == 0.0) throw SingularMatrixError(col, magnitude);

        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            std::swap(x[col], x[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const complex factor = a(r, col) / a(col, col);
            if (factor == complex{}) continue;
            a(r, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= factor * a(col, j);
            x[r] -= factor * x[col];
        }
    }

    for (std::size_t i = n; i-- > 0;) {
        complex sum = x[i];
        for (std::size_t j = i + 1; j < n; ++j) sum -= a(i, j) * x[j];
        x[i] = sum / a(i, i);
    }
    return x;
}

}  // namespace diamond
