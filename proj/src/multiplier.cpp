// multiplier.cpp
// Assembly and solution of the scalar multiplier equation. The defining
// integral is a quartic in eta because F is quartic, so the polynomial is
// assembled once per step by fused quadrature and Newton gets the exact
// derivative for free.

#include "gflow/multiplier.hpp"

#include <algorithm>
#include <cmath>

#include "gflow/kernels.hpp"

namespace gflow {

double QuarticPoly::scale() const {
    double s = 0.0;
    for (double ci : c) s += std::abs(ci);
    return s;
}

const char* method_name(EtaSolveReport::Method m) {
    return m == EtaSolveReport::Method::newton ? "newton" : "bisection-fallback";
}

Field compute_p(const Field& phi_n, const Field& phi_nm1,
                const FourierSymbol& gl, double dt) {
    require_same_grid(phi_n, phi_nm1);
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

    // (I + 3/4 dt GL)^{-1} (phi_n - 1/4 dt GL phi_nm1) in frequency space
    SpectralField A = fft_forward(phi_n);
    SpectralField B = fft_forward(phi_nm1);
    const auto& sigma = gl.values();
    kernels::scaled_symbol_axpy(A.data(), B.data(), sigma.data(), -0.25 * dt,
                                A.size());
    kernels::resolvent_divide(A.data(), sigma.data(), 0.75 * dt, A.size());
    return fft_inverse(A);
}

Field compute_p(const Field& phi_n, const Field& phi_nm1,
                const FlowSpec& spec, double dt) {
    return compute_p(phi_n, phi_nm1, spec.sigma_GL(phi_n.grid_ptr()), dt);
}

Field compute_q(const Field& phi_star, const FourierSymbol& gl,
                const FourierSymbol& g, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

    // q = -(I + 3/4 dt GL)^{-1} G F'(phi_star)
    SpectralField Q = fft_forward(potential_Fprime(phi_star));
    kernels::scaled_symbol_multiply(Q.data(), g.values().data(), -1.0, Q.size());
    kernels::resolvent_divide(Q.data(), gl.values().data(), 0.75 * dt, Q.size());
    return fft_inverse(Q);
}

Field compute_q(const Field& phi_star, const FlowSpec& spec, double dt) {
    return compute_q(phi_star, spec.sigma_GL(phi_star.grid_ptr()),
                     spec.sigma_G(phi_star.grid_ptr()), dt);
}

QuarticPoly assemble_g(const Field& p, const Field& q, const Field& phi_n,
                       const Field& phi_star, double dt) {
    require_same_grid(p, q);
    require_same_grid(p, phi_n);
    require_same_grid(p, phi_star);

    Field s(p.grid_ptr());
    kernels::lincomb(s.data(), dt, q.data(), 0.0, q.data(), s.size());
    Field w = potential_Fprime(phi_star);

    auto c = kernels::quartic_coeffs(p.data(), s.data(), phi_n.data(), w.data(),
                                     p.size());
    const double cell = p.grid().cell();
    QuarticPoly poly;
    for (int i = 0; i < 5; ++i) poly.c[i] = c[i] * cell;
    return poly;
}

double eval_g(const QuarticPoly& poly, double eta) { return poly.eval(eta); }
double eval_g_prime(const QuarticPoly& poly, double eta) {
    return poly.eval_deriv(eta);
}

EtaSolveReport solve_eta(const QuarticPoly& poly, double dt, double tol,
                         double field_scale) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

    const double root_dt = std::sqrt(dt);
    EtaSolveReport rep;
    rep.bracket_lo = 1.0 - root_dt;
    rep.bracket_hi = 1.0 + root_dt;

    double max_c = 0.0;
    for (double ci : poly.c) max_c = std::max(max_c, std::abs(ci));
    if (max_c <= 1e-14 * std::max(1.0, field_scale)) {
        // g == 0: any eta solves; report the consistent value 1
        rep.degenerate = true;
        rep.eta = 1.0;
        rep.residual = std::abs(poly.eval(1.0));
        return rep;
    }

    const double scale = poly.scale() + 1e-300;
    const double g_tol = tol * scale;
    const double deriv_floor = 1e-14 * scale;

    double g_lo = poly.eval(rep.bracket_lo);
    double g_hi = poly.eval(rep.bracket_hi);
    bool have_bracket = std::signbit(g_lo) != std::signbit(g_hi);
    double a = rep.bracket_lo, b = rep.bracket_hi;  // current sign-change bracket
    double ga = g_lo;

    double eta = 1.0;
    double g = poly.eval(eta);

    for (int it = 1; it <= 100; ++it) {
        rep.iterations = it;
        if (std::abs(g) <= g_tol) {
            rep.eta = eta;
            rep.residual = std::abs(g);
            return rep;
        }
        if (have_bracket) {
            // keep [a,b] a sign-change interval around the root
            if (std::signbit(g) == std::signbit(ga)) {
                a = eta;
                ga = g;
            } else {
                b = eta;
            }
        }

        double dg = poly.eval_deriv(eta);
        bool newton_ok = std::abs(dg) > deriv_floor;
        double next = newton_ok ? eta - g / dg : eta;

        if (have_bracket) {
            double lo = std::min(a, b), hi = std::max(a, b);
            if (!newton_ok || next <= lo || next >= hi) {
                next = 0.5 * (lo + hi);
                rep.method = EtaSolveReport::Method::bisection_fallback;
            }
        } else {
            if (!newton_ok) {
                rep.eta = eta;
                rep.residual = std::abs(g);
                throw SolvabilityError(
                    "multiplier equation: derivative vanished with no sign change "
                    "in the bracket",
                    rep);
            }
            next = std::clamp(next, rep.bracket_lo, rep.bracket_hi);
            if (next == eta) {  // clamped to a wall twice: not converging
                rep.eta = eta;
                rep.residual = std::abs(g);
                throw SolvabilityError(
                    "multiplier equation: Newton pinned at the bracket edge", rep);
            }
        }
        eta = next;
        g = poly.eval(eta);
    }

    rep.eta = eta;
    rep.residual = std::abs(g);
    throw SolvabilityError("multiplier equation: no convergence in 100 iterations",
                           rep);
}

double gate_metric(const Field& phi_tilde, const Field& phi_n, double dt) {
    require_same_grid(phi_tilde, phi_n);
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    double diff = kernels::double_well_diff_sum(phi_tilde.data(), phi_n.data(),
                                                phi_tilde.size());
    return std::abs(diff * phi_tilde.grid().cell() / dt);
}

double sn_proxy(const Field& phi_n, const Field& phi_nm1, double dt) {
    require_same_grid(phi_n, phi_nm1);
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    double diff = kernels::double_well_diff_sum(phi_n.data(), phi_nm1.data(),
                                                phi_n.size());
    return diff * phi_n.grid().cell() / dt;
}

} // namespace gflow
