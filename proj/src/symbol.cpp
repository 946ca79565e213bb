// symbol.cpp

#include "gflow/symbol.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gflow/kernels.hpp"

namespace gflow {

FourierSymbol::FourierSymbol(GridPtr grid, std::vector<double> sigma)
    : grid_(std::move(grid)), sigma_(std::move(sigma)) {}

FourierSymbol FourierSymbol::from_function(
    GridPtr grid, const std::function<double(double, double)>& fn) {
    const int nyh = grid->ny() / 2 + 1;
    std::vector<double> sigma(grid->spectral_size());
    for (int i = 0; i < grid->nx(); ++i) {
        const double kx = grid->kx()[i];
        for (int j = 0; j < nyh; ++j) {
            double v = fn(kx, grid->ky()[j]);
            if (!std::isfinite(v))
                throw std::invalid_argument("symbol value not finite");
            sigma[std::size_t(i) * nyh + j] = v;
        }
    }
    return FourierSymbol(std::move(grid), std::move(sigma));
}

FourierSymbol FourierSymbol::identity(GridPtr grid) {
    return from_function(std::move(grid), [](double, double) { return 1.0; });
}

FourierSymbol FourierSymbol::laplacian_power(GridPtr grid, int m) {
    return from_function(std::move(grid), [m](double kx, double ky) {
        return std::pow(-(kx * kx + ky * ky), m);
    });
}

FourierSymbol FourierSymbol::bilaplacian(GridPtr grid) {
    return from_function(std::move(grid), [](double kx, double ky) {
        double k2 = kx * kx + ky * ky;
        return k2 * k2;
    });
}

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
    if (!a.compatible(b))
        throw std::invalid_argument("symbol and field grids differ");
}

} // namespace

void apply_symbol_inplace(SpectralField& F, const FourierSymbol& s) {
    require_same_grid(F.grid(), s.grid());
    kernels::symbol_multiply(F.data(), s.values().data(), F.size());
}

Field apply_symbol(const Field& f, const FourierSymbol& s) {
    SpectralField F = fft_forward(f);
    apply_symbol_inplace(F, s);
    return fft_inverse(F);
}

void solve_resolvent_inplace(SpectralField& F, const FourierSymbol& gl, double c) {
    require_same_grid(F.grid(), gl.grid());
    if (c < 0.0) throw std::invalid_argument("resolvent coefficient must be >= 0");
    const double eps = std::numeric_limits<double>::epsilon();
    for (double sigma : gl.values())
        if (std::abs(1.0 + c * sigma) < eps)
            throw std::invalid_argument("resolvent symbol not invertible");
    kernels::resolvent_divide(F.data(), gl.values().data(), c, F.size());
}

Field solve_resolvent(const Field& f, const FourierSymbol& gl, double c) {
    SpectralField F = fft_forward(f);
    solve_resolvent_inplace(F, gl, c);
    return fft_inverse(F);
}

double spectral_quadratic(const SpectralField& F, const FourierSymbol& s) {
    require_same_grid(F.grid(), s.grid());
    const Grid& g = F.grid();
    const auto& w = hermitian_weights(g);
    double sum = kernels::weighted_spectrum_sum(F.data(), s.values().data(),
                                                w.data(), F.size());
    return sum * g.cell() / double(g.size());
}

double hk_seminorm(const Field& f, int order) {
    if (order < 0) throw std::invalid_argument("seminorm order must be >= 0");
    if (order == 0) return l2_norm(f);
    SpectralField F = fft_forward(f);
    // |sigma|^2 of Laplacian^order = |k|^(4*order)
    FourierSymbol s2 = FourierSymbol::from_function(
        f.grid_ptr(), [order](double kx, double ky) {
            return std::pow(kx * kx + ky * ky, 2 * order);
        });
    return std::sqrt(spectral_quadratic(F, s2));
}

} // namespace gflow
