#include "diamond/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace diamond {

namespace {

constexpr std::pair<Observable, std::string_view> kObservableNames[] = {
    {Observable::pop_a, "pop_a"}, {Observable::pop_b, "pop_b"}, {Observable::pop_c, "pop_c"},
    {Observable::pop_d, "pop_d"}, {Observable::cd, "cd"},       {Observable::ca, "ca"},
    {Observable::db, "db"},       {Observable::cb, "cb"},       {Observable::ab, "ab"},
    {Observable::ad, "ad"},       {Observable::bd, "bd"},
};

std::string sweep_message(double delta, const std::string& cause)
{
    std::ostringstream os;
    os.precision(17);
    os << "sweep failed at delta = " << delta << ": " << cause;
    return os.str();
}

std::vector<double> imaginary_parts(const SweepResult& result, Observable observable)
{
    std::vector<double> v;
    v.reserve(result.rows.size());
    for (const auto& row : result.rows) v.push_back(extract_observable(row.rho, observable).imag());
    return v;
}

// Linear interpolation of where v crosses `level` between grid points i and j.
double crossing(const SweepResult& result, const std::vector<double>& v, std::size_t i, std::size_t j,
                double level)
{
    const double di = result.rows[i].delta;
    const double dj = result.rows[j].delta;
    const double span = v[j] - v[i];
    if (span == 0.0) return 0.5 * (di + dj);
    return di + (level - v[i]) / span * (dj - di);
}

}  // namespace

void SweepSpec::validate() const
{
    if (!std::isfinite(delta_min) || !std::isfinite(delta_max) || !(delta_min < delta_max))
        throw PreconditionError("sweep: delta_min must be < delta_max");
    if (points < 2) throw PreconditionError("sweep: points must be >= 2");
    base.validate();
}

std::vector<double> SweepSpec::grid() const
{
    validate();
    std::vector<double> g(points);
    const double span = delta_max - delta_min;
    const double last = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = delta_min + span * (static_cast<double>(i) / last);
    g.back() = delta_max;
    return g;
}

SweepError::SweepError(double delta, const std::string& cause)
    : std::runtime_error(sweep_message(delta, cause)), delta_(delta)
{
}

Scenario sweep_point(const Scenario& base, double delta)
{
    Scenario s = base;
    s.delta_c2 = delta;
    return closure_complete(s);
}

SweepResult run_sweep(const SweepSpec& spec, std::size_t threads)
{
    const std::vector<double> grid = spec.grid();
    const std::size_t n = grid.size();

    std::vector<std::optional<DensityMatrix>> states(n);
    std::vector<std::string> errors(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                states[i] = steady_state(build_liouvillian(sweep_point(spec.base, grid[i])));
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    SweepResult result;
    result.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!states[i]) throw SweepError(grid[i], errors[i]);
        result.rows.push_back({grid[i], std::move(*states[i])});
    }
    return result;
}

std::string_view to_string(Observable key) noexcept
{
    for (const auto& [k, name] : kObservableNames)
        if (k == key) return name;
    return "?";
}

Observable parse_observable(std::string_view text)
{
    for (const auto& [k, name] : kObservableNames)
        if (name == text) return k;
    std::string valid;
    for (const auto& [k, name] : kObservableNames) {
        if (!valid.empty()) valid += ", ";
        valid += name;
    }
    throw PreconditionError("unknown observable '" + std::string(text) + "'; valid keys: " + valid);
}

bool is_coherence(Observable key) noexcept
{
    switch (key) {
    case Observable::pop_a:
    case Observable::pop_b:
    case Observable::pop_c:
    case Observable::pop_d: return false;
    default: return true;
    }
}

complex extract_observable(const DensityMatrix& rho, Observable key)
{
    using L = Level;
    switch (key) {
    case Observable::pop_a: return rho(L::a, L::a).real();
    case Observable::pop_b: return rho(L::b, L::b).real();
    case Observable::pop_c: return rho(L::c, L::c).real();
    case Observable::pop_d: return rho(L::d, L::d).real();
    case Observable::cd: return rho(L::c, L::d);
    case Observable::ca: return rho(L::c, L::a);
    case Observable::db: return rho(L::d, L::b);
    case Observable::cb: return rho(L::c, L::b);
    case Observable::ab: return rho(L::a, L::b);
    case Observable::ad: return rho(L::a, L::d);
    case Observable::bd: return rho(L::b, L::d);
    }
    throw PreconditionError("extract_observable: invalid key");
}

std::vector<EitWindow> detect_windows(const SweepResult& result, Observable observable, double threshold_fraction)
{
    if (!is_coherence(observable))
        throw PreconditionError("detect_windows: observable must be a coherence (imaginary part)");
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0))
        throw PreconditionError("detect_windows: threshold_fraction must lie in (0, 1)");
    if (result.rows.size() < 3) throw PreconditionError("detect_windows: need at least 3 sweep points");

    const std::vector<double> v = imaginary_parts(result, observable);
    const std::size_t n = v.size();
    const double threshold = threshold_fraction * *std::max_element(v.begin(), v.end());

    struct Run {
        std::size_t first;
        std::size_t last;
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(v[i] < threshold)) continue;
        if (!runs.empty() && i - runs.back().last <= 2)
            runs.back().last = i;  // contiguous, or one above-threshold point in between
        else
            runs.push_back({i, i});
    }

    std::vector<EitWindow> windows;
    for (const Run& run : runs) {
        bool has_interior_minimum = false;
        for (std::size_t i = std::max<std::size_t>(run.first, 1); i <= std::min(run.last, n - 2); ++i)
            if (v[i] <= v[i - 1] && v[i] <= v[i + 1]) has_interior_minimum = true;
        if (!has_interior_minimum) continue;

        std::size_t argmin = run.first;
        for (std::size_t i = run.first; i <= run.last; ++i)
            if (v[i] < v[argmin]) argmin = i;

        const double left = run.first > 0 ? crossing(result, v, run.first - 1, run.first, threshold)
                                          : result.rows[run.first].delta;
        const double right = run.last + 1 < n ? crossing(result, v, run.last, run.last + 1, threshold)
                                              : result.rows[run.last].delta;
        windows.push_back({result.rows[argmin].delta, 0.5 * (right - left), v[argmin]});
    }
    return windows;
}

std::vector<DeltaInterval> detect_gain(const SweepResult& result, Observable observable)
{
    std::vector<DeltaInterval> intervals;
    bool open = false;
    for (const auto& row : result.rows) {
        const double value = extract_observable(row.rho, observable).imag();
        if (value < kGainThreshold) {
            if (open)
                intervals.back().hi = row.delta;
            else
                intervals.push_back({row.delta, row.delta});
            open = true;
        } else {
            open = false;
        }
    }
    return intervals;
}

}  // namespace diamond
