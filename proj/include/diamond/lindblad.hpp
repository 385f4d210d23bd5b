#pragma once

#include "diamond/algebra.hpp"
#include "diamond/atom.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace diamond {

/// Raised when the steady-state system is singular or its solution fails
/// verification (e.g. a purely unitary generator).
class SteadyStateError : public std::runtime_error {
public:
    explicit SteadyStateError(const std::string& detail);
};

/// Raised when a density matrix violates Hermiticity, unit trace or positivity.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DensityDiagnostics {
    double hermiticity_defect = 0.0;
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;

    bool physical() const noexcept;
};

DensityDiagnostics diagnose(const ComplexMatrix& rho);

/// 4x4 Hermitian, unit-trace, positive semidefinite state in basis (a, b, c, d).
class DensityMatrix {
public:
    /// Validates within tolerance; throws InvariantError otherwise.
    explicit DensityMatrix(ComplexMatrix rho);

    static DensityMatrix pure(Level level);

    const ComplexMatrix& matrix() const noexcept { return rho_; }
    complex operator()(Level row, Level col) const { return rho_(index(row), index(col)); }

private:
    ComplexMatrix rho_;
};

/// (rho + rho^H) / 2
ComplexMatrix symmetrized(const ComplexMatrix& rho);

/// Generator of d vec(rho)/dt with row-major vectorization, vec index 4*i + j.
struct Liouvillian {
    ComplexMatrix generator;  // 16 x 16

    ComplexMatrix apply(const ComplexMatrix& rho) const;
};

constexpr std::size_t vec_index(std::size_t row, std::size_t col) noexcept { return 4 * row + col; }

/// d rho/dt = i[B, rho] + sum_k (gamma_k / 2)(2 A_k rho A_k^H - A_k^H A_k rho - rho A_k^H A_k)
/// with jump operators |a><c|, |d><c|, |b><a|, |b><d|.
Liouvillian build_liouvillian(const Scenario& s);

/// Right-hand side of the master equation written out element by element.
/// Independent of build_liouvillian; used as its oracle.
ComplexMatrix eom_rhs(const Scenario& s, const ComplexMatrix& rho);

/// Unique trace-one null vector of L, found by replacing the (a,a) row with the
/// trace condition.
DensityMatrix steady_state(const Liouvillian& L);

struct EvolveOptions {
    double t_final = 200.0;
    double dt = 1e-3;
    std::size_t samples = 0;  // evenly spaced states to record and check
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;  // as integrated, not symmetrized
    DensityMatrix final_state;          // symmetrized
};

/// Fixed-step classical RK4 integration of the master equation.
Trajectory evolve(const Scenario& s, const DensityMatrix& rho0, const EvolveOptions& options = {});

}  // namespace diamond
