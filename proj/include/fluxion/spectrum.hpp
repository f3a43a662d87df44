#pragma once

// Spontaneous-emission spectrum from the Laplace-transformed amplitude
// equations. With Psi_bar(s) = M(s)^-1 Psi(0) and M(s) = s I + i H_eff,
//
//   S(w) = sum_i gamma_i / (2 pi) |X_i_bar(s_i(w))|^2
//
// where X = A, B, C~, D~ and each term uses its own purely imaginary point
// s_a = i(w_ag - w), s_b = i(w_bg - w), s_c = i(w_cg - Delta_c - w),
// s_d = i(w_dg - Delta_d - w). The reservoir density is flat and absorbed
// into gamma_i.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "fluxion/dynamics.hpp"
#include "fluxion/error.hpp"
#include "fluxion/linalg.hpp"
#include "fluxion/model.hpp"
#include "fluxion/ode.hpp"
#include "fluxion/parallel.hpp"

namespace fluxion {

struct LaplacePoint {
    cplx s{};
    ComplexVector4 psi_bar;
};

struct Spectrum {
    std::vector<double> omegas;
    std::vector<double> values;
    StateVector initial_state;
    double flux = 0.0;
};

/// Laplace amplitudes A_bar, B_bar, C~_bar, D~_bar, each at its own point.
struct EmissionAmplitudes {
    cplx a{};
    cplx b{};
    cplx c{};
    cplx d{};
};

struct FluxSpectrumPoint {
    double phi = 0.0;
    double s_value = 0.0;
};

/// M(s), entry by entry.
inline ComplexMatrix4 laplace_matrix(const SystemParams& params, cplx s)
{
    validate(params);
    const double phi = total_flux(params).phi;
    ComplexMatrix4 m;
    m(0, 0) = s + params.gamma_a / 2;
    m(1, 1) = s + params.gamma_b / 2;
    m(2, 2) = s + params.gamma_c / 2 + cplx(0.0, params.delta_c);
    m(3, 3) = s + params.gamma_d / 2 + cplx(0.0, params.delta_d);
    m(0, 2) = kI * (params.omega_ca * std::polar(1.0, phi));
    m(2, 0) = kI * (params.omega_ca * std::polar(1.0, -phi));
    m(0, 3) = m(3, 0) = kI * params.omega_da;
    m(1, 2) = m(2, 1) = kI * params.omega_cb;
    m(1, 3) = m(3, 1) = kI * params.omega_db;
    return m;
}

inline LaplacePoint laplace_solve(const SystemParams& params, const StateVector& initial, cplx s)
{
    return {s, solve(laplace_matrix(params, s), initial.to_vector())};
}

/// The four imaginary Laplace arguments used at emission frequency omega_k.
inline std::array<cplx, 4> emission_points(const SystemParams& p, double omega_k)
{
    return {cplx(0.0, p.omega_ag - omega_k), cplx(0.0, p.omega_bg - omega_k),
            cplx(0.0, p.omega_cg - p.delta_c - omega_k), cplx(0.0, p.omega_dg - p.delta_d - omega_k)};
}

inline EmissionAmplitudes emission_amplitudes(const SystemParams& params, const StateVector& initial, double omega_k)
{
    const auto points = emission_points(params, omega_k);
    std::array<cplx, 4> amp{};
    for (std::size_t i = 0; i < 4; ++i)
        amp[i] = laplace_solve(params, initial, points[i]).psi_bar[i];
    return {amp[0], amp[1], amp[2], amp[3]};
}

inline double spectrum_value(const SystemParams& params, const StateVector& initial, double omega_k)
{
    const auto amp = emission_amplitudes(params, initial, omega_k);
    constexpr double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);
    return inv_two_pi * (params.gamma_a * std::norm(amp.a) + params.gamma_b * std::norm(amp.b) +
                         params.gamma_c * std::norm(amp.c) + params.gamma_d * std::norm(amp.d));
}

inline void check_grid(std::span<const double> omegas)
{
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        if (!std::isfinite(omegas[i]))
            throw Error(ErrorCode::UnsortedGrid, "omegas", "non-finite frequency");
        if (i > 0 && !(omegas[i] > omegas[i - 1]))
            throw Error(ErrorCode::UnsortedGrid, "omegas", "frequencies must be strictly increasing");
    }
}

inline Spectrum emission_spectrum(const SystemParams& params, const StateVector& initial, std::span<const double> omegas)
{
    validate(params);
    check_grid(omegas);
    Spectrum result;
    result.omegas.assign(omegas.begin(), omegas.end());
    result.values = parallel_map(omegas.size(), [&](std::size_t i) { return spectrum_value(params, initial, omegas[i]); });
    result.initial_state = initial;
    result.flux = total_flux(params).phi;
    return result;
}

/// S(omega_k) for each flux value, other parameters held.
inline std::vector<FluxSpectrumPoint> spectrum_flux_sweep(const SystemParams& params, const StateVector& initial,
                                                          double omega_k, std::span<const double> phis)
{
    validate(params);
    return parallel_map(phis.size(), [&](std::size_t i) {
        return FluxSpectrumPoint{phis[i], spectrum_value(with_flux(params, phis[i]), initial, omega_k)};
    });
}

/// Uniform grid of `points` frequencies on [lo, hi].
inline std::vector<double> omega_grid(double lo, double hi, std::size_t points)
{
    if (points == 0)
        throw Error(ErrorCode::InvalidArgument, "omega_points", "grid must be nonempty");
    if (points == 1)
        return {lo};
    if (!(lo < hi))
        throw Error(ErrorCode::InvalidArgument, "omega_lo", "window must satisfy lo < hi");
    std::vector<double> out(points);
    for (std::size_t k = 0; k < points; ++k)
        out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    return out;
}

// ---------------------------------------------------------------------------
// Total emitted probability over an adaptively widened window.

struct EmissionIntegral {
    double value = 0.0;
    double half_width = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

struct IntegralOptions {
    double initial_half_width = 40.0;
    /// Stop widening once the integral changes by less than this.
    double tolerance = 1e-3;
    double max_half_width = 1e7;
    /// Core spacing as a fraction of the narrowest decay rate.
    double core_resolution = 1.0 / 40.0;
    /// Relative spacing growth away from a line centre.
    double growth = 0.02;
};

/// Line centres: w_ag, w_bg, w_cg - Delta_c, w_dg - Delta_d.
inline std::array<double, 4> line_centres(const SystemParams& p)
{
    return {p.omega_ag, p.omega_bg, p.omega_cg - p.delta_c, p.omega_dg - p.delta_d};
}

namespace detail {

// Graded grid around each centre: spacing h0 within the core, growing
// proportionally to the distance outside it. Trapezoid over the union of
// windows [c - w, c + w]; gaps between disjoint windows are skipped.
inline double windowed_trapezoid(const SystemParams& params, const StateVector& initial, std::span<const double> centres,
                                 double half_width, double core, double h0, double growth, std::size_t& evaluations)
{
    std::vector<double> pts;
    for (double c : centres) {
        double x = 0.0;
        while (x < half_width) {
            pts.push_back(c + x);
            pts.push_back(c - x);
            x += std::max(h0, growth * (x - core));
        }
        pts.push_back(c + half_width);
        pts.push_back(c - half_width);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto inside = [&](double x) {
        return std::any_of(centres.begin(), centres.end(), [&](double c) { return std::abs(x - c) <= half_width; });
    };

    const auto result = emission_spectrum(params, initial, pts);
    evaluations += pts.size();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!inside(0.5 * (pts[i] + pts[i + 1])))
            continue;
        sum += 0.5 * (pts[i + 1] - pts[i]) * (result.values[i] + result.values[i + 1]);
    }
    return sum;
}

} // namespace detail

inline EmissionIntegral emission_integral(const SystemParams& params, const StateVector& initial,
                                          const IntegralOptions& opts = {})
{
    validate(params);
    const auto centres = line_centres(params);
    const double gamma_min = std::min({params.gamma_a, params.gamma_b, params.gamma_c, params.gamma_d});
    const double h0 = opts.core_resolution * gamma_min;

    EmissionIntegral out;
    double width = opts.initial_half_width;
    double previous = detail::windowed_trapezoid(params, initial, centres, width, opts.initial_half_width, h0,
                                                 opts.growth, out.evaluations);
    while (width < opts.max_half_width) {
        width *= 2.0;
        const double current = detail::windowed_trapezoid(params, initial, centres, width, opts.initial_half_width, h0,
                                                          opts.growth, out.evaluations);
        const bool settled = std::abs(current - previous) < opts.tolerance;
        previous = current;
        if (settled) {
            out.converged = true;
            break;
        }
    }
    out.value = previous;
    out.half_width = width;
    return out;
}

// ---------------------------------------------------------------------------
// Time-domain check: integrate the lab-frame amplitudes together with the
// reservoir amplitudes G_k^i(t) and read S off their long-time values.

struct TimeDomainOptions {
    /// Remaining upper-level probability allowed at t_end.
    double residual_norm = 1e-8;
    /// Largest dt * |w_ig - w_k| accepted.
    double max_phase_step = 0.5;
};

namespace detail {

struct ReservoirState {
    ComplexVector4 amplitudes; // lab-frame A, B, C, D
    ComplexVector4 emitted;    // G_k^i / (-i g_k^i)

    friend ReservoirState operator+(const ReservoirState& x, const ReservoirState& y)
    {
        return {x.amplitudes + y.amplitudes, x.emitted + y.emitted};
    }
    friend ReservoirState operator*(double s, const ReservoirState& x) { return {s * x.amplitudes, s * x.emitted}; }
};

} // namespace detail

inline double spectrum_time_domain_oracle(const SystemParams& params, const StateVector& initial, double omega_k,
                                          double t_end, double dt, const TimeDomainOptions& opts = {})
{
    const auto h = build_h_eff(params);
    const std::size_t steps = ode::step_count(t_end, dt);
    detail::check_step(h, dt);
    const std::array<double, 4> line{params.omega_ag - omega_k, params.omega_bg - omega_k, params.omega_cg - omega_k,
                                     params.omega_dg - omega_k};
    for (double w : line) {
        if (std::abs(w) * dt > opts.max_phase_step)
            throw Error(ErrorCode::StepTooLarge, "dt", "reservoir phase advances too far per step");
    }

    const detail::LabFrameRhs amplitude_rhs{params, total_flux(params).phi};
    auto rhs = [&](double t, const detail::ReservoirState& y) {
        detail::ReservoirState dy;
        dy.amplitudes = amplitude_rhs(t, y.amplitudes);
        for (std::size_t i = 0; i < 4; ++i)
            dy.emitted[i] = std::polar(1.0, -line[i] * t) * y.amplitudes[i];
        return dy;
    };

    const double step = steps ? t_end / static_cast<double>(steps) : 0.0;
    detail::ReservoirState y{initial.to_vector(), {}};
    for (std::size_t k = 0; k < steps; ++k)
        y = ode::rk4_step(rhs, static_cast<double>(k) * step, y, step);

    const double residual = y.amplitudes.squared_norm();
    if (residual > opts.residual_norm * std::max(1.0, initial.norm()))
        throw Error(ErrorCode::NotConverged, "t_end",
                    "upper-level probability " + std::to_string(residual) + " remains at t_end");

    const std::array<double, 4> gammas{params.gamma_a, params.gamma_b, params.gamma_c, params.gamma_d};
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        s += gammas[i] * std::norm(y.emitted[i]);
    return s / (2.0 * std::numbers::pi);
}

} // namespace fluxion
