#include "diamond/dressed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diamond {

ClosedFormTerms closed_form_terms(const Scenario& s)
{
    const double a1 = s.omega_a1 * s.omega_a1;
    const double a2 = s.omega_a2 * s.omega_a2;
    const double c1 = s.omega_c1 * s.omega_c1;

    ClosedFormTerms t;
    t.w = a2 - c1 + a1;
    t.x = a2 - c1 - a1;
    t.y = a2 + c1 + a1;
    t.z = t.y * t.y - 4.0 * a2 * c1;
    return t;
}

std::array<double, 4> closed_form_eigenvalues(const Scenario& s)
{
    const ClosedFormTerms t = closed_form_terms(s);
    // z = (Oa2^2 - Oc1^2)^2 + Oa1^2 (Oa1^2 + 2 Oa2^2 + 2 Oc1^2) >= 0
    if (t.z < -1e-12 * (1.0 + t.y * t.y)) {
        std::ostringstream os;
        os << "closed_form_eigenvalues: negative discriminant z = " << t.z;
        throw std::logic_error(os.str());
    }
    const double root_z = std::sqrt(std::max(t.z, 0.0));
    const double outer_sq = 0.5 * (t.y + root_z);
    // (y - sqrt z)/2 evaluated through the product of the two squared energies,
    // Oa2^2 Oc1^2, to avoid cancellation when one pair approaches zero.
    const double product = s.omega_a2 * s.omega_a2 * s.omega_c1 * s.omega_c1;
    const double inner_sq = outer_sq > 0.0 ? product / outer_sq : 0.0;

    const double inner = std::sqrt(inner_sq);
    const double outer = std::sqrt(outer_sq);
    std::array<double, 4> e{-inner, inner, -outer, outer};
    std::sort(e.begin(), e.end());
    return e;
}

DressedSpectrum dressed_spectrum(const Scenario& s)
{
    if (s.delta_a1 != 0.0 || s.delta_a2 != 0.0 || s.delta_c1 != 0.0 || s.delta_c2 != 0.0)
        throw PreconditionError("dressed analysis defined at zero detunings only");

    return spectrum_of(build_hamiltonian(s, ProbeCoupling::exclude));
}

DressedSpectrum spectrum_of(const HamiltonianMatrix& drive)
{
    const EigenDecomposition eig = herm_eigen(drive.to_complex());

    DressedSpectrum out;
    std::copy(eig.eigenvalues.begin(), eig.eigenvalues.end(), out.eigenvalues.begin());
    out.eigenvectors = eig.eigenvectors;

    double largest = 0.0;
    for (double e : out.eigenvalues) largest = std::max(largest, std::abs(e));
    const double tol = 1e-9 * (1.0 + largest);

    out.groups.push_back({0});
    for (std::size_t k = 1; k < out.eigenvalues.size(); ++k) {
        if (out.eigenvalues[k] - out.eigenvalues[k - 1] < tol)
            out.groups.back().push_back(k);
        else
            out.groups.push_back({k});
    }
    return out;
}

DarkReport dark_classification(const DressedSpectrum& spectrum)
{
    const std::size_t c = index(Level::c);
    DarkReport report;
    for (const auto& group : spectrum.groups) {
        // The c-components of a group form a 1 x k row; its rank is 0 or 1.
        double row_norm_sq = 0.0;
        for (std::size_t k : group) row_norm_sq += std::norm(spectrum.eigenvectors(c, k));
        const std::size_t rank = std::sqrt(row_norm_sq) > kDarkRankThreshold ? 1 : 0;
        const std::size_t dark = group.size() - rank;
        report.group_dark.push_back(dark);
        report.total_dark += dark;
        report.degenerate = report.degenerate || group.size() > 1;
    }
    return report;
}

}  // namespace diamond
