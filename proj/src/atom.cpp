#include "diamond/atom.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace diamond {

std::string_view to_string(ClosureTarget target) noexcept
{
    switch (target) {
    case ClosureTarget::a1: return "a1";
    case ClosureTarget::a2: return "a2";
    case ClosureTarget::c1: return "c1";
    case ClosureTarget::c2: return "c2";
    case ClosureTarget::none: return "none";
    }
    return "none";
}

std::optional<ClosureTarget> parse_closure_target(std::string_view text) noexcept
{
    if (text == "a1") return ClosureTarget::a1;
    if (text == "a2") return ClosureTarget::a2;
    if (text == "c1") return ClosureTarget::c1;
    if (text == "c2") return ClosureTarget::c2;
    if (text == "none") return ClosureTarget::none;
    return std::nullopt;
}

bool Scenario::all_fields_active() const noexcept
{
    return omega_a1 > 0.0 && omega_a2 > 0.0 && omega_c1 > 0.0 && omega_c2 > 0.0;
}

double Scenario::closure_defect() const noexcept
{
    return delta_a1 + delta_c1 - delta_a2 - delta_c2;
}

void Scenario::validate() const
{
    const std::pair<const char*, double> rates[] = {
        {"omega_a1", omega_a1}, {"omega_a2", omega_a2}, {"omega_c1", omega_c1}, {"omega_c2", omega_c2},
        {"gamma1", gamma1},     {"gamma2", gamma2},     {"gamma3", gamma3},     {"gamma4", gamma4},
    };
    for (const auto& [name, value] : rates) {
        if (!std::isfinite(value) || value < 0.0)
            throw PreconditionError(std::string(name) + " must be finite and >= 0");
    }
    const std::pair<const char*, double> detunings[] = {
        {"delta_a1", delta_a1}, {"delta_a2", delta_a2}, {"delta_c1", delta_c1}, {"delta_c2", delta_c2}};
    for (const auto& [name, value] : detunings) {
        if (!std::isfinite(value)) throw PreconditionError(std::string(name) + " must be finite");
    }
}

Scenario closure_complete(const Scenario& s)
{
    s.validate();
    Scenario out = s;
    switch (s.closure_target) {
    case ClosureTarget::a1: out.delta_a1 = s.delta_a2 + s.delta_c2 - s.delta_c1; break;
    case ClosureTarget::a2: out.delta_a2 = s.delta_a1 + s.delta_c1 - s.delta_c2; break;
    case ClosureTarget::c1: out.delta_c1 = s.delta_a2 + s.delta_c2 - s.delta_a1; break;
    case ClosureTarget::c2: out.delta_c2 = s.delta_a1 + s.delta_c1 - s.delta_a2; break;
    case ClosureTarget::none:
        if (s.all_fields_active() && std::abs(s.closure_defect()) >= kClosureTolerance) {
            std::ostringstream os;
            os << "time-dependent Hamiltonian unsupported: all four fields active and "
                  "delta_a1 + delta_c1 - delta_a2 - delta_c2 = "
               << s.closure_defect();
            throw ClosureError(os.str());
        }
        break;
    }
    return out;
}

Scenario mirrored(const Scenario& s)
{
    Scenario m = s;
    std::swap(m.omega_a1, m.omega_a2);
    std::swap(m.omega_c1, m.omega_c2);
    std::swap(m.delta_a1, m.delta_a2);
    std::swap(m.delta_c1, m.delta_c2);
    std::swap(m.gamma1, m.gamma2);
    std::swap(m.gamma3, m.gamma4);
    switch (s.closure_target) {
    case ClosureTarget::a1: m.closure_target = ClosureTarget::a2; break;
    case ClosureTarget::a2: m.closure_target = ClosureTarget::a1; break;
    case ClosureTarget::c1: m.closure_target = ClosureTarget::c2; break;
    case ClosureTarget::c2: m.closure_target = ClosureTarget::c1; break;
    case ClosureTarget::none: break;
    }
    return m;
}

ComplexMatrix HamiltonianMatrix::to_complex() const
{
    ComplexMatrix m(kLevels, kLevels);
    for (std::size_t i = 0; i < kLevels; ++i)
        for (std::size_t j = 0; j < kLevels; ++j) m(i, j) = entries[i][j];
    return m;
}

HamiltonianMatrix build_hamiltonian(const Scenario& s, ProbeCoupling probe)
{
    s.validate();
    const double probe_rabi = probe == ProbeCoupling::include ? s.omega_c2 : 0.0;

    HamiltonianMatrix h;
    auto& b = h.entries;
    b[0] = {s.delta_a1, s.omega_a1, s.omega_c1, 0.0};
    b[1] = {s.omega_a1, 0.0, 0.0, s.omega_a2};
    b[2] = {s.omega_c1, 0.0, s.delta_a1 + s.delta_c1, probe_rabi};
    b[3] = {0.0, s.omega_a2, probe_rabi, s.delta_a2};
    return h;
}

std::array<DecayChannel, 4> decay_channels(const Scenario& s)
{
    return {{
        {Level::c, Level::a, s.gamma1},
        {Level::c, Level::d, s.gamma2},
        {Level::a, Level::b, s.gamma3},
        {Level::d, Level::b, s.gamma4},
    }};
}

}  // namespace diamond
