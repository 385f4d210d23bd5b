#include "diamond/dressed.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace diamond;

namespace {

Scenario drive(double a1, double c1, double a2)
{
    Scenario s;
    s.omega_a1 = a1;
    s.omega_c1 = c1;
    s.omega_a2 = a2;
    s.omega_c2 = 1.0;  // excluded from the dressed analysis
    return s;
}

}  // namespace

TEST_CASE("closed_form_eigenvalues: worked values")
{
    const auto e = closed_form_eigenvalues(drive(0, 10, 15));
    const ClosedFormTerms t = closed_form_terms(drive(0, 10, 15));
    CHECK(t.y == 325.0);
    CHECK(std::sqrt(t.z) == doctest::Approx(125.0).epsilon(1e-15));
    CHECK(e[0] == doctest::Approx(-15.0).epsilon(1e-14));
    CHECK(e[1] == doctest::Approx(-10.0).epsilon(1e-14));
    CHECK(e[2] == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(e[3] == doctest::Approx(15.0).epsilon(1e-14));

    for (double v : closed_form_eigenvalues(drive(0, 0, 0))) CHECK(v == 0.0);

    const auto g = closed_form_eigenvalues(drive(1, 1, 1));
    const ClosedFormTerms tg = closed_form_terms(drive(1, 1, 1));
    CHECK(tg.y == 3.0);
    CHECK(tg.z == 5.0);
    const double phi = (std::sqrt(5.0) + 1.0) / 2.0;
    CHECK(std::abs(g[0] + phi) < 1e-12);
    CHECK(std::abs(g[1] + 1.0 / phi) < 1e-12);
    CHECK(std::abs(g[2] - 1.0 / phi) < 1e-12);
    CHECK(std::abs(g[3] - phi) < 1e-12);
}

TEST_CASE("dressed_spectrum: case 1 splits into two two-level blocks")
{
    const DressedSpectrum sp = dressed_spectrum(drive(0, 10, 15));
    const double expected[] = {-15, -10, 10, 15};
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(sp.eigenvalues[k] - expected[k]) < 1e-10);
    CHECK(sp.groups.size() == 4);

    // |+-15> ~ (b -+ d)/sqrt2, |+-10> ~ (a -+ c)/sqrt2 up to phase.
    const double h = 1.0 / std::sqrt(2.0);
    auto weight = [&](Level l, std::size_t k) { return std::abs(sp.eigenvectors(index(l), k)); };
    for (std::size_t k : {0u, 3u}) {
        CHECK(weight(Level::b, k) == doctest::Approx(h));
        CHECK(weight(Level::d, k) == doctest::Approx(h));
        CHECK(weight(Level::a, k) < 1e-12);
        CHECK(weight(Level::c, k) < 1e-12);
    }
    for (std::size_t k : {1u, 2u}) {
        CHECK(weight(Level::a, k) == doctest::Approx(h));
        CHECK(weight(Level::c, k) == doctest::Approx(h));
    }
    // Relative sign: lower energy is the antisymmetric combination.
    CHECK((sp.eigenvectors(index(Level::b), 0) * std::conj(sp.eigenvectors(index(Level::d), 0))).real() < 0);
    CHECK((sp.eigenvectors(index(Level::b), 3) * std::conj(sp.eigenvectors(index(Level::d), 3))).real() > 0);
}

TEST_CASE("dressed_spectrum: degenerate and trivial groups")
{
    const DressedSpectrum deg = dressed_spectrum(drive(0, 10, 10));
    REQUIRE(deg.groups.size() == 2);
    CHECK(deg.groups[0].size() == 2);
    CHECK(deg.groups[1].size() == 2);
    CHECK(deg.eigenvalues[0] == doctest::Approx(-10.0));
    CHECK(deg.eigenvalues[3] == doctest::Approx(10.0));

    const DressedSpectrum zero = dressed_spectrum(drive(0, 0, 0));
    REQUIRE(zero.groups.size() == 1);
    CHECK(zero.groups[0].size() == 4);
}

TEST_CASE("dressed_spectrum: nonzero detuning is rejected")
{
    Scenario s = drive(1, 2, 3);
    s.delta_c2 = 0.5;
    CHECK_THROWS_WITH_AS(dressed_spectrum(s), doctest::Contains("zero detunings"), PreconditionError);
}

TEST_CASE("closed form agrees with diagonalization on random drives")
{
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const Scenario s = drive(u(rng), u(rng), u(rng));
        const auto closed = closed_form_eigenvalues(s);
        const DressedSpectrum sp = dressed_spectrum(s);
        for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(closed[k] - sp.eigenvalues[k]) < 1e-10);
        // probe excluded and zero detunings: spectrum is +- paired
        CHECK(std::abs(sp.eigenvalues[0] + sp.eigenvalues[3]) < 1e-10);
        CHECK(std::abs(sp.eigenvalues[1] + sp.eigenvalues[2]) < 1e-10);
    }
}

TEST_CASE("z vanishes exactly when the spectrum collapses to two pairs")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.5, 20.0);
    for (int i = 0; i < 300; ++i) {
        const bool on_degenerate_line = i % 3 == 0;
        const double c1 = u(rng);
        const Scenario s = on_degenerate_line ? drive(0, c1, c1) : drive(u(rng), c1, u(rng));
        const ClosedFormTerms t = closed_form_terms(s);
        const DressedSpectrum sp = dressed_spectrum(s);
        const bool paired = sp.groups.size() == 2 && sp.groups[0].size() == 2 && sp.groups[1].size() == 2;
        CHECK((t.z < 1e-9) == paired);
        CHECK(paired == on_degenerate_line);
    }
}

TEST_CASE("dark_classification: census of the symmetry-broken cases")
{
    struct Case {
        double a1, c1, a2;
        std::size_t dark;
    };
    const Case cases[] = {
        {0, 10, 15, 2},   // case 1
        {2, 3, 4, 0},     // all three drives on
        {0.1, 5, 0, 1},   // case 2
        {0.1, 0, 10, 3},  // case 3
        {0, 10, 10, 2},   // case 1, degenerate
    };
    for (const auto& c : cases) {
        const Scenario s = drive(c.a1, c.c1, c.a2);
        const DarkReport r = dark_classification(dressed_spectrum(s));
        CAPTURE(c.a1);
        CAPTURE(c.c1);
        CAPTURE(c.a2);
        CHECK(r.total_dark == c.dark);
        CHECK(testing::brute_force_dark(s) == c.dark);
        std::size_t sum = 0;
        for (std::size_t g = 0; g < r.group_dark.size(); ++g) sum += r.group_dark[g];
        CHECK(sum == r.total_dark);
    }
    CHECK(dark_classification(dressed_spectrum(drive(0, 10, 10))).degenerate);
    CHECK_FALSE(dark_classification(dressed_spectrum(drive(0, 10, 15))).degenerate);
    CHECK(dark_classification(dressed_spectrum(drive(0, 0, 0))).total_dark == 3);
}

TEST_CASE("dark_classification is invariant under re-mixing degenerate groups")
{
    std::mt19937_64 rng(31);
    for (const Scenario& s : {drive(0, 10, 10), drive(0.1, 0, 10), drive(0.1, 5, 0), drive(0, 0, 0)}) {
        const DressedSpectrum sp = dressed_spectrum(s);
        const DarkReport base = dark_classification(sp);
        for (int trial = 0; trial < 20; ++trial) {
            DressedSpectrum mixed = sp;
            for (const auto& group : sp.groups) {
                const ComplexMatrix u = testing::random_unitary(rng, group.size());
                for (std::size_t row = 0; row < 4; ++row)
                    for (std::size_t a = 0; a < group.size(); ++a) {
                        complex v{};
                        for (std::size_t b = 0; b < group.size(); ++b)
                            v += sp.eigenvectors(row, group[b]) * u(b, a);
                        mixed.eigenvectors(row, group[a]) = v;
                    }
            }
            const DarkReport r = dark_classification(mixed);
            CHECK(r.total_dark == base.total_dark);
            CHECK(r.group_dark == base.group_dark);
        }
    }
}

TEST_CASE("dark census is mirror symmetric")
{
    // Mirroring a <-> d fixes |c>; the excluded probe c-d becomes the c-a field.
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 12.0);
    for (int i = 0; i < 100; ++i) {
        Scenario s;
        s.omega_a1 = i % 4 == 1 ? 0.0 : u(rng);
        s.omega_a2 = i % 4 == 2 ? 0.0 : u(rng);
        s.omega_c1 = i % 4 == 3 ? 0.0 : u(rng);
        s.omega_c2 = 0.0;
        const DressedSpectrum mirror = spectrum_of(build_hamiltonian(mirrored(s)));
        CHECK(dark_classification(dressed_spectrum(s)).total_dark == dark_classification(mirror).total_dark);
        for (std::size_t k = 0; k < 4; ++k)
            CHECK(std::abs(mirror.eigenvalues[k] - dressed_spectrum(s).eigenvalues[k]) < 1e-10);
    }
}
