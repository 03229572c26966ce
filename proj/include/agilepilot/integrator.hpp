#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "agilepilot/errors.hpp"

namespace agilepilot {

template <std::size_t N>
using StateVector = std::array<double, N>;

namespace detail {

template <std::size_t N>
StateVector<N> axpy(const StateVector<N>& x, double a, const StateVector<N>& y) {
    StateVector<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = x[i] + a * y[i];
    return r;
}

template <std::size_t N>
void require_finite(const StateVector<N>& d, double t) {
    for (std::size_t i = 0; i < N; ++i) {
        if (!std::isfinite(d[i])) {
            throw FlightError(ErrorKind::Diverged,
                              "non-finite derivative component " + std::to_string(i) +
                                  " at t = " + std::to_string(t));
        }
    }
}

}  // namespace detail

/// Classical fourth-order Runge-Kutta step. `f(t, x)` returns dx/dt.
/// Throws FlightError(Diverged) if any stage derivative is not finite.
template <std::size_t N, typename Derivative>
StateVector<N> rk4_step(const StateVector<N>& x, double t, double dt, Derivative&& f) {
    using detail::axpy;
    const StateVector<N> k1 = f(t, x);
    detail::require_finite(k1, t);
    const StateVector<N> k2 = f(t + 0.5 * dt, axpy(x, 0.5 * dt, k1));
    detail::require_finite(k2, t + 0.5 * dt);
    const StateVector<N> k3 = f(t + 0.5 * dt, axpy(x, 0.5 * dt, k2));
    detail::require_finite(k3, t + 0.5 * dt);
    const StateVector<N> k4 = f(t + dt, axpy(x, dt, k3));
    detail::require_finite(k4, t + dt);

    StateVector<N> r;
    for (std::size_t i = 0; i < N; ++i) {
        r[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return r;
}

}  // namespace agilepilot
