#pragma once

// Amplitude dynamics of the four upper levels in the single-excitation
// sector. The rotating-frame state is [A, B, C~, D~] with
// C~(t) = exp(-i Delta_c t) C(t) and D~(t) = exp(-i Delta_d t) D(t), so that
// i dPsi/dt = H_eff Psi with a constant non-Hermitian H_eff.
//
// Exact propagation (expm) is the production path. The two fixed-step RK4
// integrators exist as independent checks of it: one integrates the constant
// rotating-frame equations, the other the explicitly time-dependent
// lab-frame equations.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "fluxion/error.hpp"
#include "fluxion/linalg.hpp"
#include "fluxion/model.hpp"
#include "fluxion/ode.hpp"
#include "fluxion/parallel.hpp"

namespace fluxion {

inline constexpr cplx kI{0.0, 1.0};

enum class Level : std::size_t { a = 0, b = 1, c = 2, d = 3 };

struct StateVector {
    cplx a{};
    cplx b{};
    cplx c_tilde{};
    cplx d_tilde{};

    static StateVector level(Level l) { return from_vector(ComplexVector4::unit(static_cast<std::size_t>(l))); }

    static StateVector from_vector(const ComplexVector4& v) { return {v[0], v[1], v[2], v[3]}; }
    ComplexVector4 to_vector() const { return {a, b, c_tilde, d_tilde}; }

    std::array<double, 4> populations() const { return {std::norm(a), std::norm(b), std::norm(c_tilde), std::norm(d_tilde)}; }

    /// Total upper-level probability |A|^2 + |B|^2 + |C~|^2 + |D~|^2.
    double norm() const { return to_vector().squared_norm(); }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;

    std::size_t size() const { return times.size(); }
};

/// T_{target,source} convention: t_ab is the probability of b -> a.
struct TransitionRecord {
    double t = 0.0;
    double t_ab = 0.0;
    double t_ba = 0.0;
    double isolation = 0.0;
};

/// The constant non-Hermitian generator of the rotating-frame amplitudes.
inline ComplexMatrix4 build_h_eff(const SystemParams& params)
{
    validate(params);
    const double phi = total_flux(params).phi;
    ComplexMatrix4 h;
    h(0, 0) = cplx(0.0, -params.gamma_a / 2);
    h(1, 1) = cplx(0.0, -params.gamma_b / 2);
    h(2, 2) = cplx(params.delta_c, -params.gamma_c / 2);
    h(3, 3) = cplx(params.delta_d, -params.gamma_d / 2);
    h(0, 2) = std::polar(params.omega_ca, phi);
    h(2, 0) = std::polar(params.omega_ca, -phi);
    h(0, 3) = h(3, 0) = params.omega_da;
    h(1, 2) = h(2, 1) = params.omega_cb;
    h(1, 3) = h(3, 1) = params.omega_db;
    return h;
}

/// U(t) = exp(-i H_eff t).
inline ComplexMatrix4 propagator(const SystemParams& params, double t)
{
    if (!std::isfinite(t))
        throw Error(ErrorCode::NonFiniteInput, "t");
    if (t < 0.0)
        throw Error(ErrorCode::InvalidArgument, "t", "must be nonnegative");
    return expm(-kI * build_h_eff(params), t);
}

inline void check_times(std::span<const double> times)
{
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] < 0.0)
            throw Error(ErrorCode::UnsortedTimes, "times", "times must be finite and nonnegative");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw Error(ErrorCode::UnsortedTimes, "times", "times must be strictly increasing");
    }
}

/// Exact evolution Psi(t) = U(t) Psi(0) at each requested time.
inline Trajectory evolve(const SystemParams& params, const StateVector& initial, std::span<const double> times)
{
    check_times(times);
    const auto generator = -kI * build_h_eff(params);
    const auto psi0 = initial.to_vector();
    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.states.reserve(times.size());
    for (double t : times)
        traj.states.push_back(StateVector::from_vector(expm(generator, t) * psi0));
    return traj;
}

namespace detail {

// Largest dt * max|H_eff entry| accepted by the RK4 integrators.
inline constexpr double kMaxStepPhase = 0.1;

inline void check_step(const ComplexMatrix4& h, double dt)
{
    if (dt * h.max_abs() > kMaxStepPhase)
        throw Error(ErrorCode::StepTooLarge, "dt",
                    "dt * max|H_eff| = " + std::to_string(dt * h.max_abs()) + " exceeds " + std::to_string(kMaxStepPhase));
}

// Right-hand side of the explicitly time-dependent lab-frame equations for
// [A, B, C, D].
struct LabFrameRhs {
    const SystemParams& p;
    double phi;

    ComplexVector4 operator()(double t, const ComplexVector4& y) const
    {
        const cplx rot_c = std::polar(1.0, p.delta_c * t); // e^{+i Delta_c t}
        const cplx rot_d = std::polar(1.0, p.delta_d * t);
        const cplx loop = std::polar(1.0, phi);
        const cplx a = y[0], b = y[1], c = y[2], d = y[3];
        return {
            -p.gamma_a / 2 * a - kI * p.omega_ca * loop * std::conj(rot_c) * c - kI * p.omega_da * std::conj(rot_d) * d,
            -p.gamma_b / 2 * b - kI * p.omega_cb * std::conj(rot_c) * c - kI * p.omega_db * std::conj(rot_d) * d,
            -p.gamma_c / 2 * c - kI * p.omega_ca * std::conj(loop) * rot_c * a - kI * p.omega_cb * rot_c * b,
            -p.gamma_d / 2 * d - kI * p.omega_da * rot_d * a - kI * p.omega_db * rot_d * b,
        };
    }
};

inline StateVector lab_to_rotating(const SystemParams& p, double t, const ComplexVector4& lab)
{
    return {lab[0], lab[1], std::polar(1.0, -p.delta_c * t) * lab[2], std::polar(1.0, -p.delta_d * t) * lab[3]};
}

} // namespace detail

/// Fixed-step RK4 on the constant-coefficient rotating-frame equations.
/// Records every `record_every`-th step plus the final one.
inline Trajectory integrate_rotating(const SystemParams& params, const StateVector& initial, double t_end, double dt,
                                     std::size_t record_every = 1)
{
    const auto h = build_h_eff(params);
    const std::size_t steps = ode::step_count(t_end, dt);
    detail::check_step(h, dt);
    const double step = steps ? t_end / static_cast<double>(steps) : 0.0;
    const auto generator = -kI * h;
    auto rhs = [&](double, const ComplexVector4& y) { return generator * y; };

    Trajectory traj;
    ComplexVector4 y = initial.to_vector();
    traj.times.push_back(0.0);
    traj.states.push_back(initial);
    for (std::size_t k = 1; k <= steps; ++k) {
        y = ode::rk4_step(rhs, static_cast<double>(k - 1) * step, y, step);
        if (k % std::max<std::size_t>(record_every, 1) == 0 || k == steps) {
            traj.times.push_back(static_cast<double>(k) * step);
            traj.states.push_back(StateVector::from_vector(y));
        }
    }
    return traj;
}

/// Fixed-step RK4 on the lab-frame equations with explicit drive phases.
/// The returned C, D amplitudes are mapped back to the rotating frame.
inline Trajectory integrate_lab(const SystemParams& params, const StateVector& initial, double t_end, double dt,
                                std::size_t record_every = 1)
{
    const auto h = build_h_eff(params);
    const std::size_t steps = ode::step_count(t_end, dt);
    detail::check_step(h, dt);
    const double step = steps ? t_end / static_cast<double>(steps) : 0.0;
    const detail::LabFrameRhs rhs{params, total_flux(params).phi};

    Trajectory traj;
    // C(0) = C~(0), D(0) = D~(0).
    ComplexVector4 y = initial.to_vector();
    traj.times.push_back(0.0);
    traj.states.push_back(initial);
    for (std::size_t k = 1; k <= steps; ++k) {
        y = ode::rk4_step(rhs, static_cast<double>(k - 1) * step, y, step);
        if (k % std::max<std::size_t>(record_every, 1) == 0 || k == steps) {
            const double t = static_cast<double>(k) * step;
            traj.times.push_back(t);
            traj.states.push_back(detail::lab_to_rotating(params, t, y));
        }
    }
    return traj;
}

/// Isolation reported when T_ba underflows below this value.
inline constexpr double kIsolationFloor = 1e-300;

inline TransitionRecord transition_from_propagator(const ComplexMatrix4& u, double t)
{
    TransitionRecord rec;
    rec.t = t;
    rec.t_ba = std::norm(u(1, 0));
    rec.t_ab = std::norm(u(0, 1));
    rec.isolation = rec.t_ba < kIsolationFloor ? std::numeric_limits<double>::infinity() : rec.t_ab / rec.t_ba;
    return rec;
}

/// T_ba = |U_21|^2 (a -> b), T_ab = |U_12|^2 (b -> a), isolation T_ab / T_ba.
inline TransitionRecord transition_probabilities(const SystemParams& params, double t)
{
    return transition_from_propagator(propagator(params, t), t);
}

/// Transition records over a flux grid at fixed time; all other parameters held.
inline std::vector<TransitionRecord> sweep_flux(const SystemParams& params, std::span<const double> phis, double t)
{
    validate(params);
    return parallel_map(phis.size(), [&](std::size_t i) { return transition_probabilities(with_flux(params, phis[i]), t); });
}

/// Uniform grid of `count` points on (-pi, pi]: -pi + 2 pi k / count, k = 1..count.
inline std::vector<double> flux_grid(std::size_t count)
{
    if (count == 0)
        throw Error(ErrorCode::InvalidArgument, "flux_points", "grid must be nonempty");
    std::vector<double> phis(count);
    for (std::size_t k = 1; k <= count; ++k)
        phis[k - 1] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    return phis;
}

} // namespace fluxion
