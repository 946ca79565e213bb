// kernels.cpp
// OpenMP builds of the inner loops, with the serial reference mirrors.

#include "gflow/kernels.hpp"

#include <cmath>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace gflow::kernels {

namespace {

// Kahan accumulator: adding n terms loses O(1) ulps instead of O(n).
struct Kahan {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

inline double well(double v) {
    double u = v * v - 1.0;
    return 0.25 * u * u;
}

} // namespace

// ---- serial reference ------------------------------------------------------

namespace ref {

void lincomb(double* out, double a, const double* x, double b, const double* y,
             std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void axpy(double* out, const double* x, double c, const double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + c * y[i];
}

void double_well(double* out, const double* phi, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = well(phi[i]);
}

void double_well_deriv(double* out, const double* phi, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = phi[i] * phi[i] * phi[i] - phi[i];
}

double sum(const double* x, std::size_t n) {
    Kahan acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(x[i]);
    return acc.value();
}

double dot(const double* x, const double* y, std::size_t n) {
    Kahan acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(x[i] * y[i]);
    return acc.value();
}

double double_well_diff_sum(const double* x, const double* y, std::size_t n) {
    Kahan acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(well(x[i]) - well(y[i]));
    return acc.value();
}

std::array<double, 5> quartic_coeffs(const double* p, const double* s,
                                     const double* phi_n, const double* w,
                                     std::size_t n) {
    Kahan a0, a1, a2, a3, a4;
    for (std::size_t i = 0; i < n; ++i) {
        double pi = p[i], si = s[i], wi = w[i];
        double s2 = si * si;
        a0.add(well(pi) - well(phi_n[i]));
        a1.add((pi * pi * pi - pi) * si - wi * (pi - phi_n[i]));
        a2.add((1.5 * pi * pi - 0.5) * s2 - wi * si);
        a3.add(pi * s2 * si);
        a4.add(0.25 * s2 * s2);
    }
    return {a0.value(), a1.value(), a2.value(), a3.value(), a4.value()};
}

void symbol_multiply(cplx* a, const double* sigma, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= sigma[i];
}

void scaled_symbol_multiply(cplx* a, const double* sigma, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= c * sigma[i];
}

void scaled_symbol_axpy(cplx* a, const cplx* b, const double* sigma, double c,
                        std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] += c * sigma[i] * b[i];
}

void resolvent_divide(cplx* a, const double* sigma, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] /= (1.0 + c * sigma[i]);
}

double weighted_spectrum_sum(const cplx* a, const double* sigma,
                             const double* w, std::size_t n) {
    Kahan acc;
    if (sigma) {
        for (std::size_t i = 0; i < n; ++i) acc.add(w[i] * sigma[i] * std::norm(a[i]));
    } else {
        for (std::size_t i = 0; i < n; ++i) acc.add(w[i] * std::norm(a[i]));
    }
    return acc.value();
}

} // namespace ref

// ---- OpenMP production path ------------------------------------------------

#if defined(_OPENMP)

namespace {

// Per-thread Kahan partials, combined in thread-index order so the result
// is reproducible run to run for a fixed thread count.
template <typename Body>
double omp_reduce(std::size_t n, Body body) {
    std::vector<double> parts(omp_get_max_threads(), 0.0);
#pragma omp parallel
    {
        Kahan local;
#pragma omp for schedule(static) nowait
        for (long i = 0; i < long(n); ++i) local.add(body(std::size_t(i)));
        parts[omp_get_thread_num()] = local.value();
    }
    Kahan total;
    for (double p : parts) total.add(p);
    return total.value();
}

} // namespace

void lincomb(double* out, double a, const double* x, double b, const double* y,
             std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(n); ++i) out[i] = a * x[i] + b * y[i];
}

void axpy(double* out, const double* x, double c, const double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(n); ++i) out[i] = x[i] + c * y[i];
}

void double_well(double* out, const double* phi, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(n); ++i) out[i] = well(phi[i]);
}

void double_well_deriv(double* out, const double* phi, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(n); ++i) out[i] = phi[i] * phi[i] * phi[i] - phi[i];
}

double sum(const double* x, std::size_t n) {
    return omp_reduce(n, [&](std::size_t i) { return x[i]; });
}

double dot(const double* x, const double* y, std::size_t n) {
    return omp_reduce(n, [&](std::size_t i) { return x[i] * y[i]; });
}

double double_well_diff_sum(const double* x, const double* y, std::size_t n) {
    return omp_reduce(n, [&](std::size_t i) { return well(x[i]) - well(y[i]); });
}

std::array<double, 5> quartic_coeffs(const double* p, const double* s,
                                     const double* phi_n, const double* w,
                                     std::size_t n) {
    std::vector<std::array<double, 5>> parts(omp_get_max_threads(),
                                             std::array<double, 5>{});
#pragma omp parallel
    {
        Kahan a0, a1, a2, a3, a4;
#pragma omp for schedule(static) nowait
        for (long i = 0; i < long(n); ++i) {
            double pi = p[i], si = s[i], wi = w[i];
            double s2 = si * si;
            a0.add(well(pi) - well(phi_n[i]));
            a1.add((pi * pi * pi - pi) * si - wi * (pi - phi_n[i]));
            a2.add((1.5 * pi * pi - 0.5) * s2 - wi * si);
            a3.add(pi * s2 * si);
            a4.add(0.25 * s2 * s2);
        }
        parts[omp_get_thread_num()] = {a0.value(), a1.value(), a2.value(),
                                       a3.value(), a4.value()};
    }
    Kahan t0, t1, t2, t3, t4;
    for (const auto& p5 : parts) {
        t0.add(p5[0]);
        t1.add(p5[1]);
        t2.add(p5[2]);
        t3.add(p5[3]);
        t4.add(p5[4]);
    }
    return {t0.value(), t1.value(), t2.value(), t3.value(), t4.value()};
}

void symbol_multiply(cplx* a, const double* sigma, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(n); ++i) a[i] *= sigma[i];
}

void scaled_symbol_multiply(cplx* a, const double* sigma, double c, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(n); ++i) a[i] *= c * sigma[i];
}

void scaled_symbol_axpy(cplx* a, const cplx* b, const double* sigma, double c,
                        std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(n); ++i) a[i] += c * sigma[i] * b[i];
}

void resolvent_divide(cplx* a, const double* sigma, double c, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < long(n); ++i) a[i] /= (1.0 + c * sigma[i]);
}

double weighted_spectrum_sum(const cplx* a, const double* sigma,
                             const double* w, std::size_t n) {
    if (sigma)
        return omp_reduce(n, [&](std::size_t i) { return w[i] * sigma[i] * std::norm(a[i]); });
    return omp_reduce(n, [&](std::size_t i) { return w[i] * std::norm(a[i]); });
}

#else // no OpenMP: production path is the reference path

void lincomb(double* out, double a, const double* x, double b, const double* y,
             std::size_t n) { ref::lincomb(out, a, x, b, y, n); }
void axpy(double* out, const double* x, double c, const double* y, std::size_t n) {
    ref::axpy(out, x, c, y, n);
}
void double_well(double* out, const double* phi, std::size_t n) {
    ref::double_well(out, phi, n);
}
void double_well_deriv(double* out, const double* phi, std::size_t n) {
    ref::double_well_deriv(out, phi, n);
}
double sum(const double* x, std::size_t n) { return ref::sum(x, n); }
double dot(const double* x, const double* y, std::size_t n) { return ref::dot(x, y, n); }
double double_well_diff_sum(const double* x, const double* y, std::size_t n) {
    return ref::double_well_diff_sum(x, y, n);
}
std::array<double, 5> quartic_coeffs(const double* p, const double* s,
                                     const double* phi_n, const double* w,
                                     std::size_t n) {
    return ref::quartic_coeffs(p, s, phi_n, w, n);
}
void symbol_multiply(cplx* a, const double* sigma, std::size_t n) {
    ref::symbol_multiply(a, sigma, n);
}
void scaled_symbol_multiply(cplx* a, const double* sigma, double c, std::size_t n) {
    ref::scaled_symbol_multiply(a, sigma, c, n);
}
void scaled_symbol_axpy(cplx* a, const cplx* b, const double* sigma, double c,
                        std::size_t n) {
    ref::scaled_symbol_axpy(a, b, sigma, c, n);
}
void resolvent_divide(cplx* a, const double* sigma, double c, std::size_t n) {
    ref::resolvent_divide(a, sigma, c, n);
}
double weighted_spectrum_sum(const cplx* a, const double* sigma,
                             const double* w, std::size_t n) {
    return ref::weighted_spectrum_sum(a, sigma, w, n);
}

#endif

} // namespace gflow::kernels
