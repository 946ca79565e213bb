// kernels.hpp
// Data-parallel inner loops shared by every module: pointwise maps over
// grid values, compensated reductions, and diagonal spectral updates.
//
// Each kernel comes in two builds. The functions in gflow::kernels are the
// production path and parallelize with OpenMP when it is enabled; the
// mirrors in gflow::kernels::ref are plain serial loops kept as the
// reference implementation for tests and for the kernel benchmark.
//
// Reductions use Kahan compensation per thread and again when combining
// partials, so quadrature sums stay accurate to a few ulps even on large
// grids. Pointwise kernels perform identical per-element arithmetic in
// both builds and agree bitwise; reductions agree to roundoff only, since
// the summation order differs.

#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace gflow::kernels {

using cplx = std::complex<double>;

// ---- pointwise -----------------------------------------------------------

// out = a*x + b*y
void lincomb(double* out, double a, const double* x, double b, const double* y,
             std::size_t n);
// out = x + c*y
void axpy(double* out, const double* x, double c, const double* y, std::size_t n);
// out = 0.25*(phi^2 - 1)^2
void double_well(double* out, const double* phi, std::size_t n);
// out = phi^3 - phi
void double_well_deriv(double* out, const double* phi, std::size_t n);

// ---- reductions (Kahan-compensated) --------------------------------------

double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
// sum of 0.25*((x^2-1)^2 - (y^2-1)^2), evaluated per point to limit
// cancellation noise between the two wells
double double_well_diff_sum(const double* x, const double* y, std::size_t n);

// Coefficients of the quartic eta -> integral F(p + eta*s) - F(phi_n)
//   - eta * integral w * (p + eta*s - phi_n), with w = F'(phi_star),
// still missing the cell measure (the caller multiplies by dx*dy):
//   c0 = sum F(p) - F(phi_n)
//   c1 = sum (p^3 - p)*s - w*(p - phi_n)
//   c2 = sum (1.5*p^2 - 0.5)*s^2 - w*s
//   c3 = sum p*s^3
//   c4 = sum 0.25*s^4
std::array<double, 5> quartic_coeffs(const double* p, const double* s,
                                     const double* phi_n, const double* w,
                                     std::size_t n);

// ---- spectral diagonal updates -------------------------------------------

// a[k] *= sigma[k]
void symbol_multiply(cplx* a, const double* sigma, std::size_t n);
// a[k] *= c * sigma[k]
void scaled_symbol_multiply(cplx* a, const double* sigma, double c, std::size_t n);
// a[k] += c * sigma[k] * b[k]
void scaled_symbol_axpy(cplx* a, const cplx* b, const double* sigma, double c,
                        std::size_t n);
// a[k] /= (1 + c*sigma[k])
void resolvent_divide(cplx* a, const double* sigma, double c, std::size_t n);
// sum w[k] * sigma[k] * |a[k]|^2; sigma == nullptr means sigma == 1
// (w = caller-supplied Hermitian weights)
double weighted_spectrum_sum(const cplx* a, const double* sigma,
                             const double* w, std::size_t n);

namespace ref {

void lincomb(double* out, double a, const double* x, double b, const double* y,
             std::size_t n);
void axpy(double* out, const double* x, double c, const double* y, std::size_t n);
void double_well(double* out, const double* phi, std::size_t n);
void double_well_deriv(double* out, const double* phi, std::size_t n);
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double double_well_diff_sum(const double* x, const double* y, std::size_t n);
std::array<double, 5> quartic_coeffs(const double* p, const double* s,
                                     const double* phi_n, const double* w,
                                     std::size_t n);
void symbol_multiply(cplx* a, const double* sigma, std::size_t n);
void scaled_symbol_multiply(cplx* a, const double* sigma, double c, std::size_t n);
void scaled_symbol_axpy(cplx* a, const cplx* b, const double* sigma, double c,
                        std::size_t n);
void resolvent_divide(cplx* a, const double* sigma, double c, std::size_t n);
double weighted_spectrum_sum(const cplx* a, const double* sigma,
                             const double* w, std::size_t n);

} // namespace ref

} // namespace gflow::kernels
