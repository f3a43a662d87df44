#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "fluxion/error.hpp"

namespace fluxion::ode {

/// One classic fourth-order Runge-Kutta step of y' = f(t, y).
template <class State, class Rhs>
State rk4_step(const Rhs& f, double t, const State& y, double h)
{
    const double half = 0.5 * h;
    const State k1 = f(t, y);
    const State k2 = f(t + half, y + half * k1);
    const State k3 = f(t + half, y + half * k2);
    const State k4 = f(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Number of equal steps of size <= dt covering [0, t_end].
inline std::size_t step_count(double t_end, double dt)
{
    if (!std::isfinite(t_end) || !std::isfinite(dt))
        throw Error(ErrorCode::NonFiniteInput, "t_end/dt");
    if (dt <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "dt", "must be positive");
    if (t_end < 0.0)
        throw Error(ErrorCode::InvalidArgument, "t_end", "must be nonnegative");
    const double ratio = t_end / dt;
    return static_cast<std::size_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
}

} // namespace fluxion::ode
