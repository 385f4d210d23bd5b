#pragma once

#include "diamond/algebra.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>

namespace diamond {

/// Bare levels of the diamond system. The enumerator value is the basis index.
///
///            c
///      c1 /     \ c2
///        a       d
///      a1 \     / a2
///            b
enum class Level : std::size_t { a = 0, b = 1, c = 2, d = 3 };

constexpr std::size_t kLevels = 4;

constexpr std::size_t index(Level level) noexcept { return static_cast<std::size_t>(level); }

/// Which detuning closure_complete is allowed to overwrite.
enum class ClosureTarget { a1, a2, c1, c2, none };

std::string_view to_string(ClosureTarget target) noexcept;
std::optional<ClosureTarget> parse_closure_target(std::string_view text) noexcept;

/// Thrown when all four fields are on and the detunings do not close the loop:
/// no rotating frame removes the time dependence in that case.
class ClosureError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Physical parameters, all in units of a common reference decay rate.
struct Scenario {
    double omega_a1 = 0.0;
    double omega_a2 = 0.0;
    double omega_c1 = 0.0;
    double omega_c2 = 0.0;

    double delta_a1 = 0.0;
    double delta_a2 = 0.0;
    double delta_c1 = 0.0;
    double delta_c2 = 0.0;

    double gamma1 = 1.0;  // c -> a
    double gamma2 = 1.0;  // c -> d
    double gamma3 = 1.0;  // a -> b
    double gamma4 = 1.0;  // d -> b

    ClosureTarget closure_target = ClosureTarget::none;

    bool all_fields_active() const noexcept;

    /// delta_a1 + delta_c1 - delta_a2 - delta_c2
    double closure_defect() const noexcept;

    /// Throws PreconditionError on non-finite values or negative rates.
    void validate() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline constexpr double kClosureTolerance = 1e-9;

/// Overwrites the detuning named by closure_target so that the loop
/// delta_a1 + delta_c1 = delta_a2 + delta_c2 closes exactly.
Scenario closure_complete(const Scenario& s);

/// Mirror image under the a <-> d exchange: swaps a1/a2, c1/c2 fields and
/// detunings, gamma1/gamma2 and gamma3/gamma4, and the closure target.
Scenario mirrored(const Scenario& s);

/// Drive matrix B with H = -hbar B, basis (a, b, c, d).
struct HamiltonianMatrix {
    std::array<std::array<double, kLevels>, kLevels> entries{};

    double operator()(Level row, Level col) const { return entries[index(row)][index(col)]; }
    double operator()(std::size_t row, std::size_t col) const { return entries[row][col]; }

    ComplexMatrix to_complex() const;
};

enum class ProbeCoupling { include, exclude };

HamiltonianMatrix build_hamiltonian(const Scenario& s, ProbeCoupling probe = ProbeCoupling::include);

struct DecayChannel {
    Level from;
    Level to;
    double rate;

    friend bool operator==(const DecayChannel&, const DecayChannel&) = default;
};

/// (c->a, gamma1), (c->d, gamma2), (a->b, gamma3), (d->b, gamma4), in that order.
std::array<DecayChannel, 4> decay_channels(const Scenario& s);

}  // namespace diamond
