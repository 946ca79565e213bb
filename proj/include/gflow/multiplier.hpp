// multiplier.hpp
// Per-step Lagrange multiplier machinery: the split solutions p and q, the
// exact quartic form of the scalar equation g(eta) = 0, and the safeguarded
// Newton/bisection solve for eta inside the bracket [1-sqrt(dt), 1+sqrt(dt)].

#pragma once

#include <array>
#include <stdexcept>

#include "gflow/field.hpp"
#include "gflow/potential.hpp"
#include "gflow/symbol.hpp"

namespace gflow {

// g(eta) = c0 + c1*eta + c2*eta^2 + c3*eta^3 + c4*eta^4. Assembled so that
// evaluating the polynomial reproduces the quadrature of the defining
// integral; c4 = 0.25 * int (dt*q)^4 >= 0 always.
struct QuarticPoly {
    std::array<double, 5> c{};

    double eval(double eta) const {
        return (((c[4] * eta + c[3]) * eta + c[2]) * eta + c[1]) * eta + c[0];
    }
    double eval_deriv(double eta) const {
        return ((4.0 * c[4] * eta + 3.0 * c[3]) * eta + 2.0 * c[2]) * eta + c[1];
    }
    // |c0| + ... + |c4|, the natural residual scale of g
    double scale() const;
};

struct EtaSolveReport {
    enum class Method { newton, bisection_fallback };

    double eta = 1.0;
    double residual = 0.0;
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    Method method = Method::newton;
    bool degenerate = false;
};

const char* method_name(EtaSolveReport::Method m);

// Solver could not certify a root in the bracket: the scalar equation's
// solvability hypothesis failed at this step. Carries the last report.
class SolvabilityError : public std::runtime_error {
public:
    SolvabilityError(const std::string& what, EtaSolveReport report)
        : std::runtime_error(what), report(report) {}

    EtaSolveReport report;
};

// p = (I + 3/4 dt GL)^{-1} (phi_n - 1/4 dt GL phi_nm1)
Field compute_p(const Field& phi_n, const Field& phi_nm1,
                const FourierSymbol& gl, double dt);
Field compute_p(const Field& phi_n, const Field& phi_nm1,
                const FlowSpec& spec, double dt);

// q = -(I + 3/4 dt GL)^{-1} G F'(phi_star); the update reads
// phi_next = p + eta * dt * q. For Cahn-Hilliard -G = Laplacian, so q is
// the resolvent applied to Laplacian F'(phi_star) and has zero mean.
Field compute_q(const Field& phi_star, const FourierSymbol& gl,
                const FourierSymbol& g, double dt);
Field compute_q(const Field& phi_star, const FlowSpec& spec, double dt);

// Exact expansion of g(eta) for the quartic double well, with s = dt*q:
//   c0 = int F(p) - F(phi_n)
//   c1 = int (p^3 - p)*s - F'(phi_star)*(p - phi_n)
//   c2 = int (1.5 p^2 - 0.5)*s^2 - F'(phi_star)*s
//   c3 = int p*s^3
//   c4 = 1/4 int s^4
QuarticPoly assemble_g(const Field& p, const Field& q, const Field& phi_n,
                       const Field& phi_star, double dt);

double eval_g(const QuarticPoly& poly, double eta);
double eval_g_prime(const QuarticPoly& poly, double eta);

// Safeguarded scalar solve on [1-sqrt(dt), 1+sqrt(dt)]: Newton from
// eta0 = 1 with iterates clamped to the bracket, switching to bisection
// whenever a sign-change bracket exists and Newton leaves it or g' is
// negligible. Success means |g(eta)| <= tol * scale.
//
// field_scale feeds the degeneracy test: when every |c_i| is below
// 1e-14 * max(1, field_scale) the equation is g == 0 (an equilibrium) and
// the report comes back degenerate with eta = 1; the caller picks policy.
// Throws SolvabilityError when no root can be certified.
EtaSolveReport solve_eta(const QuarticPoly& poly, double dt, double tol,
                         double field_scale = 1.0);

// e_{n+1} = |(int F(phi_tilde) - F(phi_n)) / dt|, the gate of the modified
// scheme.
double gate_metric(const Field& phi_tilde, const Field& phi_n, double dt);

// Backward-difference proxy for d/dt int F along the trajectory; its
// distance from zero is the solvability margin of the multiplier equation.
double sn_proxy(const Field& phi_n, const Field& phi_nm1, double dt);

} // namespace gflow
