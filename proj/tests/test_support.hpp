// test_support.hpp
// Shared helpers for the test suites: seeded fields, max-norm distances,
// and slow direct-quadrature oracles kept independent of the library's
// assembly paths.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "gflow/field.hpp"
#include "gflow/grid.hpp"
#include "gflow/lab.hpp"

namespace testsup {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline gflow::GridPtr unit_grid(int n = 32) {
    return gflow::make_grid(n, n, kTwoPi, kTwoPi);
}

inline gflow::Field seeded_field(const gflow::GridPtr& g, std::uint64_t seed,
                                 double mean = 0.0, double amp = 1.0) {
    return gflow::random_init(g, mean, amp, seed);
}

inline double max_abs(const gflow::Field& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

inline double max_abs_diff(const gflow::Field& a, const gflow::Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Plain compensated real-space quadrature of sum fn(i) * dx*dy, written
// against the raw arrays so it shares nothing with the library reductions.
template <typename Fn>
double quadrature(const gflow::Grid& g, Fn fn) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double y = fn(i) - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s * g.cell();
}

inline double well(double v) {
    double u = v * v - 1.0;
    return 0.25 * u * u;
}

// Direct evaluation of the multiplier function
//   g(eta) = int F(p + eta*s) - F(phi_n) - eta * w * (p + eta*s - phi_n)
// with s = dt*q and w = F'(phi_star); the oracle the quartic assembly must
// reproduce.
inline double direct_g(const gflow::Field& p, const gflow::Field& q,
                       const gflow::Field& phi_n, const gflow::Field& phi_star,
                       double dt, double eta) {
    const gflow::Grid& g = p.grid();
    return quadrature(g, [&](std::size_t i) {
        double s = dt * q[i];
        double w = phi_star[i] * phi_star[i] * phi_star[i] - phi_star[i];
        double cand = p[i] + eta * s;
        return well(cand) - well(phi_n[i]) - eta * w * (cand - phi_n[i]);
    });
}

} // namespace testsup
