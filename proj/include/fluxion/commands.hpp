#pragma once

// Command implementations behind the fluxion CLI. Each returns the full
// output document so that identical configurations give identical bytes.

#include <cmath>
#include <cstdio>
#include <string>

#include "fluxion/adiabatic.hpp"
#include "fluxion/config.hpp"
#include "fluxion/csv.hpp"
#include "fluxion/dynamics.hpp"
#include "fluxion/spectrum.hpp"

namespace fluxion {

/// Isolation values above this are written as the cap and flagged.
inline constexpr double kIsolationCap = 1e12;

/// Populations over time: t, pop_a, pop_b, pop_c, pop_d, norm.
inline std::string cmd_simulate(const RunConfig& cfg)
{
    const auto times = time_grid(cfg);
    const auto traj = evolve(cfg.params, cfg.initial, times);
    csv::Writer out({"t", "pop_a", "pop_b", "pop_c", "pop_d", "norm"});
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto pop = traj.states[i].populations();
        out.row({traj.times[i], pop[0], pop[1], pop[2], pop[3], pop[0] + pop[1] + pop[2] + pop[3]});
    }
    return out.str();
}

/// Transition probabilities over the flux grid at t (default: adiabatic t_M).
inline std::string cmd_sweep_flux(const RunConfig& cfg)
{
    validate(cfg.params);
    const double t = cfg.t.value_or(adiabatic_report(cfg.params).t_m);
    const auto phis = flux_grid(cfg.flux_points);
    const auto records = sweep_flux(cfg.params, phis, t);
    csv::Writer out({"phi", "t_ab", "t_ba", "isolation", "isolation_capped"});
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const bool capped = !(r.isolation <= kIsolationCap);
        out.row({phis[i], r.t_ab, r.t_ba, capped ? kIsolationCap : r.isolation, capped ? 1.0 : 0.0});
    }
    return out.str();
}

/// Emission spectrum over the configured window (default [w_ag - 50, w_ag + 150]).
inline std::string cmd_spectrum(const RunConfig& cfg)
{
    validate(cfg.params);
    const double lo = cfg.omega_lo.value_or(cfg.params.omega_ag - 50.0);
    const double hi = cfg.omega_hi.value_or(cfg.params.omega_ag + 150.0);
    const auto omegas = omega_grid(lo, hi, cfg.omega_points);
    const auto result = emission_spectrum(cfg.params, cfg.initial, omegas);
    csv::Writer out({"omega_k", "omega_k_minus_omega_ag", "s_value"});
    for (std::size_t i = 0; i < omegas.size(); ++i)
        out.row({omegas[i], omegas[i] - cfg.params.omega_ag, result.values[i]});
    return out.str();
}

/// Probe frequency for spectrum-flux: explicit, else the line of the level
/// opposite to the initial one (w_bg for |a>, w_ag for |b>).
inline double probe_frequency(const RunConfig& cfg)
{
    if (cfg.omega_probe)
        return *cfg.omega_probe;
    return cfg.initial_level == Level::b ? cfg.params.omega_ag : cfg.params.omega_bg;
}

/// S(probe) over the flux grid.
inline std::string cmd_spectrum_flux(const RunConfig& cfg)
{
    validate(cfg.params);
    const auto phis = flux_grid(cfg.flux_points);
    const auto points = spectrum_flux_sweep(cfg.params, cfg.initial, probe_frequency(cfg), phis);
    csv::Writer out({"phi", "s_value"});
    for (const auto& p : points)
        out.row({p.phi, p.s_value});
    return out.str();
}

namespace detail {

inline std::string fixed(double x, int digits = 3)
{
    const double quantum = 0.5 * std::pow(10.0, -digits);
    if (std::abs(x) < quantum)
        x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

inline std::string coupling_line(const char* name, cplx j)
{
    std::string line = std::string("|") + name + "| = " + fixed(std::abs(j));
    if (std::abs(j) > 1e-12)
        line += "   arg(" + std::string(name) + ") = " + fixed(std::arg(j), 6) + " rad";
    else
        line += "   arg(" + std::string(name) + ") = undefined";
    return line + "\n";
}

} // namespace detail

/// Human-readable summary of the adiabatic-elimination closed forms.
inline std::string cmd_adiabatic(const RunConfig& cfg)
{
    const auto r = adiabatic_report(cfg.params);
    const auto peak = peak_transition(cfg.params);
    using detail::fixed;
    std::string s;
    s += "flux Phi = " + fixed(total_flux(cfg.params).phi, 6) + " rad\n";
    s += "gamma_a_eff = " + fixed(r.gamma_a_eff) + "\n";
    s += "gamma_b_eff = " + fixed(r.gamma_b_eff) + "\n";
    s += "delta_a_eff = " + fixed(r.delta_a_eff) + "\n";
    s += "delta_b_eff = " + fixed(r.delta_b_eff) + "\n";
    s += detail::coupling_line("J_ab", r.j_ab);
    s += detail::coupling_line("J_ba", r.j_ba);
    s += "t_M = " + fixed(r.t_m) + "\n";
    if (peak.t_m_ab != peak.t_m_ba)
        s += "t_M(b->a) = " + fixed(peak.t_m_ab) + "   t_M(a->b) = " + fixed(peak.t_m_ba) + "\n";
    s += "T_ab(t_M) = " + fixed(peak.t_ab_peak, 6) + "\n";
    s += "T_ba(t_M) = " + fixed(peak.t_ba_peak, 6) + "\n";
    s += "optimal Phi = ";
    if (r.optimal_phis.empty()) {
        s += "none";
    } else {
        for (std::size_t i = 0; i < r.optimal_phis.size(); ++i)
            s += (i ? ", " : "") + fixed(r.optimal_phis[i], 6);
    }
    s += "\n";
    s += "validity = " + fixed(r.validity) + "\n";
    if (r.validity > kAdiabaticityLimit)
        s += "warning: adiabaticity ratio " + fixed(r.validity) + " exceeds " + fixed(kAdiabaticityLimit, 1) +
             "; closed forms may be inaccurate\n";
    return s;
}

} // namespace fluxion
