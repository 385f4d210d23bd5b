#pragma once

#include "diamond/algebra.hpp"
#include "diamond/atom.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace diamond {

/// Auxiliary quantities of the closed-form dressed energies (probe excluded,
/// zero detunings):
///   w = Oa2^2 - Oc1^2 + Oa1^2,  x = Oa2^2 - Oc1^2 - Oa1^2,
///   y = Oa2^2 + Oc1^2 + Oa1^2,  z = y^2 - 4 Oa2^2 Oc1^2.
/// Only y and z enter the energies; w and x are kept for diagnostics.
struct ClosedFormTerms {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

ClosedFormTerms closed_form_terms(const Scenario& s);

/// -sqrt((y - sqrt z)/2), +sqrt((y - sqrt z)/2), -sqrt((y + sqrt z)/2), +sqrt((y + sqrt z)/2),
/// sorted ascending.
std::array<double, 4> closed_form_eigenvalues(const Scenario& s);

struct DressedSpectrum {
    std::array<double, 4> eigenvalues{};          // ascending
    ComplexMatrix eigenvectors;                   // column k <-> eigenvalues[k]
    std::vector<std::vector<std::size_t>> groups; // degenerate clusters, ascending
};

/// Numerical dressed states of the three-field drive (probe coupling removed).
/// Requires all four detunings to be zero.
DressedSpectrum dressed_spectrum(const Scenario& s);

/// Eigenanalysis and degeneracy grouping of an arbitrary drive matrix
/// (degeneracy tolerance 1e-9 * (1 + max |eigenvalue|)).
DressedSpectrum spectrum_of(const HamiltonianMatrix& drive);

/// Per degenerate group: dimension of the part of the eigenspace orthogonal to |c>.
struct DarkReport {
    std::vector<std::size_t> group_dark;
    std::size_t total_dark = 0;
    bool degenerate = false;
};

inline constexpr double kDarkRankThreshold = 1e-10;

DarkReport dark_classification(const DressedSpectrum& spectrum);

}  // namespace diamond
