#include "diamond/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diamond {

namespace {

constexpr complex I{0.0, 1.0};
constexpr std::size_t kDim = kLevels * kLevels;

constexpr double kHermiticityTolerance = 1e-9;
constexpr double kTraceTolerance = 1e-9;
constexpr double kPositivityTolerance = -1e-8;
constexpr double kStabilityLimit = 0.5;

// L += coeff * (rho -> X rho Y)
void add_sandwich(ComplexMatrix& L, const ComplexMatrix& x, const ComplexMatrix& y, complex coeff)
{
    for (std::size_t i = 0; i < kLevels; ++i)
        for (std::size_t k = 0; k < kLevels; ++k) {
            if (x(i, k) == complex{}) continue;
            for (std::size_t l = 0; l < kLevels; ++l)
                for (std::size_t j = 0; j < kLevels; ++j) {
                    if (y(l, j) == complex{}) continue;
                    L(vec_index(i, j), vec_index(k, l)) += coeff * x(i, k) * y(l, j);
                }
        }
}

ComplexMatrix projector(Level to, Level from)
{
    ComplexMatrix m(kLevels, kLevels);
    m(index(to), index(from)) = 1.0;
    return m;
}

ComplexMatrix from_vec(std::span<const complex> v)
{
    return ComplexMatrix(kLevels, kLevels, std::vector<complex>(v.begin(), v.end()));
}

void require_4x4(const ComplexMatrix& rho, const char* where)
{
    if (rho.rows() != kLevels || rho.cols() != kLevels)
        throw PreconditionError(std::string(where) + ": density matrix must be 4x4");
}

std::string describe(const DensityDiagnostics& d)
{
    std::ostringstream os;
    os << "hermiticity defect " << d.hermiticity_defect << ", trace error " << d.trace_error
       << ", min eigenvalue " << d.min_eigenvalue;
    return os.str();
}

}  // namespace

SteadyStateError::SteadyStateError(const std::string& detail)
    : std::runtime_error("non-unique or absent steady state: " + detail)
{
}

bool DensityDiagnostics::physical() const noexcept
{
    return hermiticity_defect < kHermiticityTolerance && trace_error < kTraceTolerance &&
           min_eigenvalue >= kPositivityTolerance;
}

DensityDiagnostics diagnose(const ComplexMatrix& rho)
{
    require_4x4(rho, "diagnose");
    DensityDiagnostics d;
    d.hermiticity_defect = hermiticity_defect(rho);
    d.trace_error = std::abs(trace(rho) - 1.0);
    d.min_eigenvalue = herm_eigen(symmetrized(rho)).eigenvalues.front();
    return d;
}

ComplexMatrix symmetrized(const ComplexMatrix& rho)
{
    ComplexMatrix out = rho + rho.adjoint();
    out *= 0.5;
    return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho))
{
    const DensityDiagnostics d = diagnose(rho_);
    if (!d.physical()) throw InvariantError("invalid density matrix: " + describe(d));
}

DensityMatrix DensityMatrix::pure(Level level)
{
    ComplexMatrix rho(kLevels, kLevels);
    rho(index(level), index(level)) = 1.0;
    return DensityMatrix(std::move(rho));
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const
{
    require_4x4(rho, "Liouvillian::apply");
    return from_vec(multiply(generator, rho.entries()));
}

Liouvillian build_liouvillian(const Scenario& s)
{
    const ComplexMatrix b = build_hamiltonian(s).to_complex();
    const ComplexMatrix id = ComplexMatrix::identity(kLevels);

    ComplexMatrix L(kDim, kDim);
    add_sandwich(L, b, id, I);
    add_sandwich(L, id, b, -I);

    for (const DecayChannel& ch : decay_channels(s)) {
        if (ch.rate == 0.0) continue;
        const ComplexMatrix jump = projector(ch.to, ch.from);
        const ComplexMatrix jump_dag = jump.adjoint();
        const ComplexMatrix occupation = jump_dag * jump;
        add_sandwich(L, jump, jump_dag, ch.rate);
        add_sandwich(L, occupation, id, -0.5 * ch.rate);
        add_sandwich(L, id, occupation, -0.5 * ch.rate);
    }
    return Liouvillian{std::move(L)};
}

ComplexMatrix eom_rhs(const Scenario& s, const ComplexMatrix& rho)
{
    require_4x4(rho, "eom_rhs");
    const double Oa1 = s.omega_a1, Oa2 = s.omega_a2, Oc1 = s.omega_c1, Oc2 = s.omega_c2;
    const double Da1 = s.delta_a1, Da2 = s.delta_a2, Dc1 = s.delta_c1;
    const double g1 = s.gamma1, g2 = s.gamma2, g3 = s.gamma3, g4 = s.gamma4;

    constexpr std::size_t a = 0, b = 1, c = 2, d = 3;
    auto r = [&](std::size_t i, std::size_t j) { return rho(i, j); };

    ComplexMatrix dot(kLevels, kLevels);

    dot(a, a) = -g3 * r(a, a) + g1 * r(c, c) + I * Oa1 * (r(b, a) - r(a, b)) + I * Oc1 * (r(c, a) - r(a, c));
    dot(b, b) = g3 * r(a, a) + g4 * r(d, d) + I * Oa1 * (r(a, b) - r(b, a)) + I * Oa2 * (r(d, b) - r(b, d));
    dot(c, c) = -(g1 + g2) * r(c, c) + I * Oc1 * (r(a, c) - r(c, a)) + I * Oc2 * (r(d, c) - r(c, d));
    dot(d, d) = g2 * r(c, c) - g4 * r(d, d) + I * Oa2 * (r(b, d) - r(d, b)) + I * Oc2 * (r(c, d) - r(d, c));

    dot(a, b) = (I * Da1 - g3 / 2) * r(a, b) + I * Oa1 * (r(b, b) - r(a, a)) - I * Oa2 * r(a, d) +
                I * Oc1 * r(c, b);
    dot(a, c) = -(I * Dc1 + 0.5 * (g1 + g2 + g3)) * r(a, c) + I * Oc1 * (r(c, c) - r(a, a)) -
                I * Oc2 * r(a, d) + I * Oa1 * r(b, c);
    dot(a, d) = (I * (Da1 - Da2) - 0.5 * (g3 + g4)) * r(a, d) - I * Oa2 * r(a, b) - I * Oc2 * r(a, c) +
                I * Oa1 * r(b, d) + I * Oc1 * r(c, d);
    dot(b, c) = -(I * (Dc1 + Da1) + 0.5 * (g1 + g2)) * r(b, c) - I * Oc1 * r(b, a) + I * Oa1 * r(a, c) +
                I * Oa2 * r(d, c) - I * Oc2 * r(b, d);
    dot(b, d) = -(I * Da2 + g4 / 2) * r(b, d) - I * Oa2 * (r(b, b) - r(d, d)) + I * Oa1 * r(a, d) -
                I * Oc2 * r(b, c);
    dot(c, d) = (I * (Da1 + Dc1 - Da2) - 0.5 * (g1 + g2 + g4)) * r(c, d) - I * Oc2 * (r(c, c) - r(d, d)) +
                I * Oc1 * r(a, d) - I * Oa2 * r(c, b);

    for (std::size_t i = 0; i < kLevels; ++i)
        for (std::size_t j = 0; j < i; ++j) dot(i, j) = std::conj(dot(j, i));
    return dot;
}

DensityMatrix steady_state(const Liouvillian& L)
{
    if (L.generator.rows() != kDim || L.generator.cols() != kDim)
        throw PreconditionError("steady_state: Liouvillian must be 16x16");

    ComplexMatrix system = L.generator;
    const std::size_t replaced = vec_index(0, 0);
    for (std::size_t j = 0; j < kDim; ++j) system(replaced, j) = 0.0;
    for (std::size_t i = 0; i < kLevels; ++i) system(replaced, vec_index(i, i)) = 1.0;

    std::vector<complex> rhs(kDim);
    rhs[replaced] = 1.0;

    std::vector<complex> solution;
    try {
        solution = solve_linear(system, rhs);
    } catch (const SingularMatrixError& e) {
        throw SteadyStateError(e.what());
    }

    std::vector<complex> residual = multiply(system, solution);
    residual[replaced] -= 1.0;
    const double bound = 1e-10 * (1.0 + norm_inf(L.generator));
    const double worst = std::max(norm_inf(residual), norm_inf(multiply(L.generator, solution)));
    if (!(worst < bound)) {
        std::ostringstream os;
        os << "residual " << worst << " exceeds " << bound;
        throw SteadyStateError(os.str());
    }

    ComplexMatrix rho = symmetrized(from_vec(solution));
    const DensityDiagnostics d = diagnose(rho);
    if (!d.physical()) throw SteadyStateError("solution is not a density matrix (" + describe(d) + ")");
    return DensityMatrix(std::move(rho));
}

Trajectory evolve(const Scenario& s, const DensityMatrix& rho0, const EvolveOptions& options)
{
    if (!(options.dt > 0.0) || !std::isfinite(options.dt)) throw PreconditionError("evolve: dt must be > 0");
    if (!(options.t_final >= 0.0) || !std::isfinite(options.t_final))
        throw PreconditionError("evolve: t_final must be >= 0");

    const Liouvillian L = build_liouvillian(s);
    const double stiffness = options.dt * norm_inf(L.generator);
    if (!(stiffness < kStabilityLimit)) {
        std::ostringstream os;
        os << "evolve: dt * ||L|| = " << stiffness << " exceeds " << kStabilityLimit
           << "; use a smaller dt";
        throw PreconditionError(os.str());
    }

    const auto steps = static_cast<std::size_t>(std::ceil(options.t_final / options.dt - 1e-9));
    const double h = steps > 0 ? options.t_final / static_cast<double>(steps) : 0.0;

    // For a linear autonomous system one classical RK4 step is exactly
    // x <- (I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24) x.
    const ComplexMatrix hl = L.generator * complex{h};
    ComplexMatrix propagator = ComplexMatrix::identity(kDim);
    ComplexMatrix power = ComplexMatrix::identity(kDim);
    double factorial = 1.0;
    for (int k = 1; k <= 4; ++k) {
        power = power * hl;
        factorial *= k;
        propagator += power * complex{1.0 / factorial};
    }

    std::vector<std::size_t> sample_steps;
    for (std::size_t i = 1; i <= options.samples; ++i)
        sample_steps.push_back(static_cast<std::size_t>(
            std::llround(static_cast<double>(i) * static_cast<double>(steps) / static_cast<double>(options.samples))));

    Trajectory out{{}, {}, rho0};
    std::vector<complex> state(rho0.matrix().entries().begin(), rho0.matrix().entries().end());
    std::size_t next_sample = 0;

    auto record = [&](std::size_t step) {
        const ComplexMatrix rho = from_vec(state);
        const DensityDiagnostics d = diagnose(rho);
        if (!d.physical()) {
            std::ostringstream os;
            os << "evolve: invariant violated at step " << step << ": " << describe(d);
            throw InvariantError(os.str());
        }
        out.times.push_back(static_cast<double>(step) * h);
        out.states.emplace_back(rho);
    };

    while (next_sample < sample_steps.size() && sample_steps[next_sample] == 0) {
        record(0);
        ++next_sample;
    }
    for (std::size_t step = 1; step <= steps; ++step) {
        state = multiply(propagator, state);
        while (next_sample < sample_steps.size() && sample_steps[next_sample] == step) {
            record(step);
            ++next_sample;
        }
    }

    const ComplexMatrix final_rho = from_vec(state);
    const DensityDiagnostics d = diagnose(final_rho);
    if (!d.physical()) {
        std::ostringstream os;
        os << "evolve: invariant violated at step " << steps << ": " << describe(d);
        throw InvariantError(os.str());
    }
    out.final_state = DensityMatrix(symmetrized(final_rho));
    return out;
}

}  // namespace diamond
