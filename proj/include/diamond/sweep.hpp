#pragma once

#include "diamond/atom.hpp"
#include "diamond/lindblad.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace diamond {

/// Probe-detuning scan of the steady state. Each grid point sets delta_c2 and
/// then applies closure_complete with the base scenario's closure target.
struct SweepSpec {
    double delta_min = -25.0;
    double delta_max = 25.0;
    std::size_t points = 1001;
    Scenario base;

    void validate() const;
    /// Uniform grid, endpoints inclusive.
    std::vector<double> grid() const;
};

struct SweepRow {
    double delta;
    DensityMatrix rho;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // ascending delta
};

class SweepError : public std::runtime_error {
public:
    SweepError(double delta, const std::string& cause);

    double delta() const noexcept { return delta_; }

private:
    double delta_;
};

/// Scenario solved at one grid point.
Scenario sweep_point(const Scenario& base, double delta);

/// threads == 0 uses the hardware concurrency. The result does not depend on it.
SweepResult run_sweep(const SweepSpec& spec, std::size_t threads = 0);

enum class Observable { pop_a, pop_b, pop_c, pop_d, cd, ca, db, cb, ab, ad, bd };

std::string_view to_string(Observable key) noexcept;
/// Throws PreconditionError listing the valid keys.
Observable parse_observable(std::string_view text);
bool is_coherence(Observable key) noexcept;

complex extract_observable(const DensityMatrix& rho, Observable key);

struct EitWindow {
    double center;      // delta at the minimum
    double half_width;  // half the distance between threshold crossings
    double depth;       // minimum of the observable inside the window
};

inline constexpr double kDefaultWindowThreshold = 0.1;

/// Transparency windows in Im(observable): maximal sub-threshold runs holding an
/// interior local minimum, threshold = fraction * max over the sweep. Runs split
/// by a single above-threshold point are merged.
std::vector<EitWindow> detect_windows(const SweepResult& result, Observable observable,
                                      double threshold_fraction = kDefaultWindowThreshold);

struct DeltaInterval {
    double lo;
    double hi;
};

inline constexpr double kGainThreshold = -1e-9;

/// Maximal runs where Im(observable) < -1e-9.
std::vector<DeltaInterval> detect_gain(const SweepResult& result, Observable observable);

}  // namespace diamond
