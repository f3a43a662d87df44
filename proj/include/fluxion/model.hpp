#pragma once

// Parameter model for the cyclic four-level system.
//
// Upper levels |a>, |b>, |c>, |d> are driven around the loop
// a -> d -> b -> c -> a. Every frequency and rate is dimensionless, measured
// in units of a reference decay rate; times are in units of its inverse.
// Drive frequencies are not stored: they only enter through the detunings
// (nu_ij = omega_ij - Delta_ij).

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string_view>

#include "fluxion/error.hpp"

namespace fluxion {

struct SystemParams {
    // Rabi frequencies of the four drives.
    double omega_ca = 0.0;
    double omega_cb = 0.0;
    double omega_da = 0.0;
    double omega_db = 0.0;

    // Drive phases (rad). Only their sum is physical.
    double phi_ca = 0.0;
    double phi_cb = 0.0;
    double phi_da = 0.0;
    double phi_db = 0.0;

    double delta_c = 0.0;
    double delta_d = 0.0;

    double gamma_a = 1.0;
    double gamma_b = 1.0;
    double gamma_c = 1.0;
    double gamma_d = 1.0;

    // Upper-to-lower transition frequencies, offsets from an arbitrary origin.
    double omega_ag = 0.0;
    double omega_bg = 0.0;
    double omega_cg = 0.0;
    double omega_dg = 0.0;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Total loop phase, canonically in (-pi, pi].
struct SyntheticFlux {
    double phi = 0.0;
};

/// Reduces an angle to (-pi, pi].
inline double reduce_angle(double phi) noexcept
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(phi, two_pi);
    if (r <= -std::numbers::pi)
        r += two_pi;
    return r;
}

struct NamedField {
    std::string_view name;
    double SystemParams::*member;
};

inline constexpr std::array<NamedField, 18> kParamFields{{
    {"omega_ca", &SystemParams::omega_ca},
    {"omega_cb", &SystemParams::omega_cb},
    {"omega_da", &SystemParams::omega_da},
    {"omega_db", &SystemParams::omega_db},
    {"phi_ca", &SystemParams::phi_ca},
    {"phi_cb", &SystemParams::phi_cb},
    {"phi_da", &SystemParams::phi_da},
    {"phi_db", &SystemParams::phi_db},
    {"delta_c", &SystemParams::delta_c},
    {"delta_d", &SystemParams::delta_d},
    {"gamma_a", &SystemParams::gamma_a},
    {"gamma_b", &SystemParams::gamma_b},
    {"gamma_c", &SystemParams::gamma_c},
    {"gamma_d", &SystemParams::gamma_d},
    {"omega_ag", &SystemParams::omega_ag},
    {"omega_bg", &SystemParams::omega_bg},
    {"omega_cg", &SystemParams::omega_cg},
    {"omega_dg", &SystemParams::omega_dg},
}};

/// Returns the parameters unchanged when every invariant holds; throws
/// Error naming the first offending field otherwise.
inline const SystemParams& validate(const SystemParams& params)
{
    for (const auto& f : kParamFields) {
        if (!std::isfinite(params.*f.member))
            throw Error(ErrorCode::NonFiniteField, std::string(f.name));
    }
    for (const auto& f : std::span(kParamFields).subspan(10, 4)) {
        if (params.*f.member <= 0.0)
            throw Error(ErrorCode::NonPositiveDecay, std::string(f.name));
    }
    for (const auto& f : std::span(kParamFields).first(4)) {
        if (params.*f.member < 0.0)
            throw Error(ErrorCode::NegativeRabi, std::string(f.name));
    }
    return params;
}

/// Gauge-invariant sum of the four drive phases.
inline SyntheticFlux total_flux(const SystemParams& params) noexcept
{
    return {reduce_angle(params.phi_ca + params.phi_db + params.phi_cb + params.phi_da)};
}

/// Copy of `params` with the whole loop phase placed on the a-c link.
inline SystemParams with_flux(SystemParams params, double phi) noexcept
{
    params.phi_ca = phi;
    params.phi_cb = 0.0;
    params.phi_da = 0.0;
    params.phi_db = 0.0;
    return params;
}

/// Parameter set used for the population and transition figures:
/// gamma_a = gamma_b = 1, gamma_c = gamma_d = 100, all Rabi frequencies 10,
/// Delta_c = -Delta_d = 50.
inline SystemParams canonical_params(double phi = std::numbers::pi / 2)
{
    SystemParams p;
    p.omega_ca = p.omega_cb = p.omega_da = p.omega_db = 10.0;
    p.delta_c = 50.0;
    p.delta_d = -50.0;
    p.gamma_a = p.gamma_b = 1.0;
    p.gamma_c = p.gamma_d = 100.0;
    return with_flux(p, phi);
}

/// Canonical parameters plus the line offsets used for emission spectra:
/// omega_bg - omega_ag = 100, omega_cg - omega_ag = 1000, omega_dg - omega_ag = 2000.
inline SystemParams canonical_spectrum_params(double phi = std::numbers::pi / 2)
{
    SystemParams p = canonical_params(phi);
    p.omega_ag = 0.0;
    p.omega_bg = 100.0;
    p.omega_cg = 1000.0;
    p.omega_dg = 2000.0;
    return p;
}

} // namespace fluxion
