#pragma once

// Closed forms obtained by adiabatically eliminating the strongly damped
// levels |c> and |d>. The remaining a-b dynamics reads
//
//   dA/dt = -(gamma_a_eff / 2 + i Delta_a_eff) A - J_ab B
//   dB/dt = -(gamma_b_eff / 2 + i Delta_b_eff) B - J_ba A
//
// and is accurate while min(gamma_c, gamma_d) dominates every other rate
// (see AdiabaticReport::validity).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fluxion/error.hpp"
#include "fluxion/model.hpp"

namespace fluxion {

using cplx = std::complex<double>;

struct AdiabaticReport {
    double gamma_a_eff = 0.0;
    double gamma_b_eff = 0.0;
    double delta_a_eff = 0.0;
    double delta_b_eff = 0.0;
    cplx j_ab{};
    cplx j_ba{};
    /// Peak time 2 / gamma_b_eff.
    double t_m = 0.0;
    /// Flux values that null J_ab or J_ba, reduced to (-pi, pi].
    std::vector<double> optimal_phis;
    /// max(gamma_a, gamma_b, Omegas) / min(gamma_c, gamma_d).
    double validity = 0.0;
};

enum class Direction { a_to_b, b_to_a };

/// Per-direction peak of the analytic transition probability. The a -> b
/// curve peaks at 2 / gamma_b_eff and b -> a at 2 / gamma_a_eff.
struct PeakTransition {
    double t_m = 0.0;    // 2 / gamma_b_eff
    double t_m_ab = 0.0; // peak time of T_ab (b -> a)
    double t_m_ba = 0.0; // peak time of T_ba (a -> b)
    double t_ab_peak = 0.0;
    double t_ba_peak = 0.0;
};

/// Ratio above which the closed forms should not be trusted.
inline constexpr double kAdiabaticityLimit = 0.1;

/// Optimal-flux conditions accept a right-hand side whose modulus is
/// within this distance of one.
inline constexpr double kUnitModulusTolerance = 1e-9;

namespace detail {

// 4 gamma Omega^2 / (4 Delta^2 + gamma^2) and its detuning companion.
inline double lorentz_rate(double omega, double delta, double gamma)
{
    return 4.0 * gamma * omega * omega / (4.0 * delta * delta + gamma * gamma);
}

inline double lorentz_shift(double omega, double delta, double gamma)
{
    return 4.0 * delta * omega * omega / (4.0 * delta * delta + gamma * gamma);
}

} // namespace detail

inline double effective_gamma_a(const SystemParams& p)
{
    return p.gamma_a + detail::lorentz_rate(p.omega_ca, p.delta_c, p.gamma_c) +
           detail::lorentz_rate(p.omega_da, p.delta_d, p.gamma_d);
}

inline double effective_gamma_b(const SystemParams& p)
{
    return p.gamma_b + detail::lorentz_rate(p.omega_cb, p.delta_c, p.gamma_c) +
           detail::lorentz_rate(p.omega_db, p.delta_d, p.gamma_d);
}

inline double effective_delta_a(const SystemParams& p)
{
    return -detail::lorentz_shift(p.omega_ca, p.delta_c, p.gamma_c) - detail::lorentz_shift(p.omega_da, p.delta_d, p.gamma_d);
}

inline double effective_delta_b(const SystemParams& p)
{
    return -detail::lorentz_shift(p.omega_cb, p.delta_c, p.gamma_c) - detail::lorentz_shift(p.omega_db, p.delta_d, p.gamma_d);
}

/// Effective b -> a coupling (enters dA/dt).
inline cplx coupling_ab(const SystemParams& p)
{
    const double phi = total_flux(p).phi;
    const cplx via_c = p.omega_ca * p.omega_cb * std::polar(1.0, phi) / cplx(p.gamma_c / 2, p.delta_c);
    const cplx via_d = p.omega_da * p.omega_db / cplx(p.gamma_d / 2, p.delta_d);
    return via_c + via_d;
}

/// Effective a -> b coupling (enters dB/dt).
inline cplx coupling_ba(const SystemParams& p)
{
    const double phi = total_flux(p).phi;
    const cplx via_c = p.omega_ca * p.omega_cb * std::polar(1.0, -phi) / cplx(p.gamma_c / 2, p.delta_c);
    const cplx via_d = p.omega_da * p.omega_db / cplx(p.gamma_d / 2, p.delta_d);
    return via_c + via_d;
}

inline double adiabaticity_ratio(const SystemParams& p)
{
    const double fast = std::min(p.gamma_c, p.gamma_d);
    const double slow = std::max({p.gamma_a, p.gamma_b, p.omega_ca, p.omega_cb, p.omega_da, p.omega_db});
    return slow / fast;
}

/// Solutions of e^{+-i Phi} = -[(2i Delta_c + gamma_c) / (2i Delta_d + gamma_d)]
/// * Omega_da Omega_db / (Omega_ca Omega_cb). The + branch nulls J_ab, the -
/// branch nulls J_ba. Empty when the right-hand side is off the unit circle.
inline std::vector<double> optimal_flux(const SystemParams& params)
{
    validate(params);
    const double loop_c = params.omega_ca * params.omega_cb;
    if (loop_c == 0.0)
        throw Error(ErrorCode::ZeroRabiProduct, "omega_ca*omega_cb");
    const cplx rhs = -cplx(params.gamma_c, 2.0 * params.delta_c) / cplx(params.gamma_d, 2.0 * params.delta_d) *
                     (params.omega_da * params.omega_db / loop_c);
    if (std::abs(std::abs(rhs) - 1.0) > kUnitModulusTolerance)
        return {};
    const double nulls_ab = reduce_angle(std::arg(rhs));
    const double nulls_ba = reduce_angle(-std::arg(rhs));
    if (nulls_ab == nulls_ba)
        return {nulls_ab};
    return {std::min(nulls_ab, nulls_ba), std::max(nulls_ab, nulls_ba)};
}

inline AdiabaticReport adiabatic_report(const SystemParams& params)
{
    validate(params);
    AdiabaticReport r;
    r.gamma_a_eff = effective_gamma_a(params);
    r.gamma_b_eff = effective_gamma_b(params);
    r.delta_a_eff = effective_delta_a(params);
    r.delta_b_eff = effective_delta_b(params);
    r.j_ab = coupling_ab(params);
    r.j_ba = coupling_ba(params);
    r.t_m = 2.0 / r.gamma_b_eff;
    if (params.omega_ca * params.omega_cb != 0.0)
        r.optimal_phis = optimal_flux(params);
    r.validity = adiabaticity_ratio(params);
    return r;
}

/// |J t exp[-(gamma_eff / 2 + i Delta_eff) t]|^2 for the requested direction.
inline double analytic_transition(const SystemParams& params, double t, Direction direction)
{
    validate(params);
    const bool a_to_b = direction == Direction::a_to_b;
    const cplx j = a_to_b ? coupling_ba(params) : coupling_ab(params);
    const double gamma = a_to_b ? effective_gamma_b(params) : effective_gamma_a(params);
    const double delta = a_to_b ? effective_delta_b(params) : effective_delta_a(params);
    return std::norm(j * t * std::exp(-cplx(gamma / 2, delta) * t));
}

inline PeakTransition peak_transition(const SystemParams& params)
{
    validate(params);
    const double gamma_a = effective_gamma_a(params);
    const double gamma_b = effective_gamma_b(params);
    constexpr double two_over_e = 2.0 / std::numbers::e;
    PeakTransition peak;
    peak.t_m = 2.0 / gamma_b;
    peak.t_m_ba = 2.0 / gamma_b;
    peak.t_m_ab = 2.0 / gamma_a;
    peak.t_ab_peak = std::norm(two_over_e * coupling_ab(params) / gamma_a);
    peak.t_ba_peak = std::norm(two_over_e * coupling_ba(params) / gamma_b);
    return peak;
}

} // namespace fluxion
