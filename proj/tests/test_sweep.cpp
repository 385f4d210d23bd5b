#include "diamond/sweep.hpp"

#include "diamond/config.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <sstream>

using namespace diamond;

namespace {

// Valid density matrix with rho_cc = rho_dd = 1/2 and rho_cd = i*value.
DensityMatrix with_probe_coherence(double value)
{
    ComplexMatrix m(4, 4);
    m(2, 2) = 0.5;
    m(3, 3) = 0.5;
    m(2, 3) = complex{0.0, value};
    m(3, 2) = complex{0.0, -value};
    return DensityMatrix(std::move(m));
}

SweepResult synthetic(std::size_t n, const std::function<double(double)>& profile)
{
    SweepResult r;
    for (std::size_t i = 0; i < n; ++i) {
        const double delta = -10.0 + 20.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        r.rows.push_back({delta, with_probe_coherence(profile(delta))});
    }
    return r;
}

}  // namespace

TEST_CASE("SweepSpec grid is uniform with exact endpoints")
{
    SweepSpec spec;
    spec.delta_min = -1.0;
    spec.delta_max = 2.0;
    spec.points = 4;
    const auto g = spec.grid();
    REQUIRE(g.size() == 4);
    CHECK(g[0] == -1.0);
    CHECK(g[1] == 0.0);
    CHECK(g[2] == 1.0);
    CHECK(g[3] == 2.0);

    spec.points = 1;
    CHECK_THROWS_AS(spec.grid(), PreconditionError);
    spec.points = 3;
    spec.delta_max = -1.0;
    CHECK_THROWS_AS(spec.grid(), PreconditionError);
}

TEST_CASE("sweep_point applies the probe detuning then closes the loop")
{
    const Scenario s = sweep_point(preset("fig9-left").scenario(), 3.0);
    CHECK(s.delta_c2 == 3.0);
    CHECK(s.delta_a2 == -3.0);
    const Scenario t = sweep_point(preset("fig10-left").scenario(), 3.0);
    CHECK(t.delta_c1 == 3.0);
}

TEST_CASE("run_sweep: no drives leaves the atom in its ground state")
{
    SweepSpec spec;
    spec.points = 11;
    const SweepResult r = run_sweep(spec);
    REQUIRE(r.rows.size() == 11);
    for (const auto& row : r.rows) {
        CHECK(extract_observable(row.rho, Observable::pop_b) == complex{1.0});
        for (Observable k : {Observable::cd, Observable::ca, Observable::db, Observable::cb, Observable::ab,
                             Observable::ad, Observable::bd})
            CHECK(extract_observable(row.rho, k) == complex{0.0});
    }
    CHECK(detect_gain(r, Observable::cd).empty());
    CHECK(detect_windows(r, Observable::cd).empty());
}

TEST_CASE("run_sweep: rows ascend and satisfy the density invariants")
{
    SweepSpec spec = preset("fig5").sweep;
    spec.points = 101;
    const SweepResult r = run_sweep(spec, 3);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (i) CHECK(r.rows[i - 1].delta < r.rows[i].delta);
        double total = 0.0;
        for (Observable p : {Observable::pop_a, Observable::pop_b, Observable::pop_c, Observable::pop_d}) {
            const double v = extract_observable(r.rows[i].rho, p).real();
            CHECK(v >= -1e-9);
            CHECK(v <= 1.0 + 1e-9);
            total += v;
        }
        CHECK(std::abs(total - 1.0) < 1e-9);
    }
}

TEST_CASE("run_sweep: result does not depend on the thread count")
{
    SweepSpec spec = preset("fig8").sweep;
    spec.points = 64;
    const SweepResult one = run_sweep(spec, 1);
    for (std::size_t threads : {2u, 5u, 64u}) {
        const SweepResult many = run_sweep(spec, threads);
        REQUIRE(many.rows.size() == one.rows.size());
        for (std::size_t i = 0; i < one.rows.size(); ++i) {
            CHECK(many.rows[i].delta == one.rows[i].delta);
            CHECK(many.rows[i].rho.matrix() == one.rows[i].rho.matrix());
        }
    }
}

TEST_CASE("run_sweep: failure reports the offending detuning")
{
    SweepSpec spec = preset("fig5").sweep;
    spec.base.gamma1 = spec.base.gamma2 = spec.base.gamma3 = spec.base.gamma4 = 0.0;
    spec.points = 5;
    try {
        run_sweep(spec, 2);
        FAIL("expected SweepError");
    } catch (const SweepError& e) {
        CHECK(e.delta() == -25.0);
        CHECK(std::string(e.what()).find("non-unique or absent steady state") != std::string::npos);
    }
}

TEST_CASE("sweep rows are mirror symmetric")
{
    std::mt19937_64 rng(55);
    for (int i = 0; i < 5; ++i) {
        SweepSpec spec;
        spec.base = testing::random_closed_scenario(rng);
        spec.base.closure_target = ClosureTarget::a1;
        spec.points = 9;
        const SweepResult r = run_sweep(spec, 1);
        // sigma moves the probe detuning onto delta_c1; scan it point by point.
        for (const auto& row : r.rows) {
            const Scenario s = sweep_point(spec.base, row.delta);
            const ComplexMatrix m = steady_state(build_liouvillian(mirrored(s))).matrix();
            CHECK(max_abs_difference(testing::mirror_permute(row.rho.matrix()), m) < 1e-9);
        }
    }
}

TEST_CASE("extract_observable picks matrix entries")
{
    CHECK(extract_observable(DensityMatrix::pure(Level::b), Observable::pop_b) == complex{1.0});
    ComplexMatrix m(4, 4);
    m(2, 2) = m(2, 3) = m(3, 2) = m(3, 3) = 0.5;
    const DensityMatrix rho(m);
    CHECK(extract_observable(rho, Observable::cd) == complex{0.5});
    CHECK(extract_observable(rho, Observable::pop_c) == complex{0.5});
    CHECK(extract_observable(rho, Observable::ab) == complex{0.0});
}

TEST_CASE("observable names")
{
    for (auto name : {"pop_a", "pop_b", "pop_c", "pop_d", "cd", "ca", "db", "cb", "ab", "ad", "bd"})
        CHECK(to_string(parse_observable(name)) == name);
    CHECK_THROWS_WITH_AS(parse_observable("dc"), doctest::Contains("valid keys: pop_a"), PreconditionError);
    CHECK_FALSE(is_coherence(Observable::pop_c));
    CHECK(is_coherence(Observable::cb));
}

TEST_CASE("detect_windows: synthetic double-peaked absorption")
{
    // Two Lorentzian peaks at +-5 with a transparency dip at 0.
    const auto lorentz = [](double x, double x0) { return 0.4 / (1.0 + (x - x0) * (x - x0)); };
    const SweepResult r = synthetic(401, [&](double x) { return lorentz(x, -5) + lorentz(x, 5); });
    const auto windows = detect_windows(r, Observable::cd, 0.1);
    // Centre dip plus the two far wings: the wings decrease monotonically to the
    // sweep edges and hold no interior minimum, so only the centre counts.
    REQUIRE(windows.size() == 1);
    CHECK(windows[0].center == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(windows[0].half_width > 0.0);
    CHECK(windows[0].depth < 0.1 * 0.4);
    // Dip value: two tails at distance 5, each 0.4 / 26.
    CHECK(windows[0].depth == doctest::Approx(2 * 0.4 / 26.0).epsilon(1e-3));

    CHECK(detect_windows(r, Observable::cd, 0.01).empty());
    CHECK_THROWS_AS(detect_windows(r, Observable::pop_a), PreconditionError);
    CHECK_THROWS_AS(detect_windows(r, Observable::cd, 1.5), PreconditionError);
    CHECK_THROWS_AS(detect_windows(synthetic(2, [](double) { return 0.1; }), Observable::cd), PreconditionError);
}

TEST_CASE("detect_windows: a single above-threshold point does not split a window")
{
    // Dip from 0.3 down to 0 with a one-point spike back above threshold at x = 0.5.
    const SweepResult r = synthetic(41, [](double x) {
        if (std::abs(x - 0.5) < 1e-9) return 0.2;
        return std::abs(x) < 3.0 ? 0.01 * std::abs(x) : 0.3;
    });
    const auto windows = detect_windows(r, Observable::cd, 0.1);
    REQUIRE(windows.size() == 1);
    CHECK(windows[0].center == doctest::Approx(0.0));
}

TEST_CASE("detect_gain: maximal negative runs")
{
    const SweepResult r = synthetic(21, [](double x) { return x < -4.5 ? -0.1 : (x > 5.5 ? -1e-3 : 0.05); });
    const auto gain = detect_gain(r, Observable::cd);
    REQUIRE(gain.size() == 2);
    CHECK(gain[0].lo == -10.0);
    CHECK(gain[0].hi == -5.0);
    CHECK(gain[1].lo == 6.0);
    CHECK(gain[1].hi == 10.0);

    CHECK(detect_gain(synthetic(5, [](double) { return -1e-10; }), Observable::cd).empty());
}
