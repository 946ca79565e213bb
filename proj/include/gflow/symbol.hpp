// symbol.hpp
// Diagonal Fourier multipliers: construction, application, and the
// resolvent solve (I + c*sigma)^{-1} used by the semi-implicit steppers.

#pragma once

#include <functional>
#include <vector>

#include "gflow/fft.hpp"
#include "gflow/field.hpp"
#include "gflow/grid.hpp"

namespace gflow {

// Real scalar multiplier tabulated per stored half-spectrum mode.
class FourierSymbol {
public:
    // fn(kx, ky) evaluated at every mode of the grid's wavenumber tables
    static FourierSymbol from_function(GridPtr grid,
                                       const std::function<double(double, double)>& fn);
    static FourierSymbol identity(GridPtr grid);
    // symbol of Laplacian^m, i.e. (-|k|^2)^m
    static FourierSymbol laplacian_power(GridPtr grid, int m);
    static FourierSymbol laplacian(GridPtr grid) { return laplacian_power(grid, 1); }
    // |k|^4
    static FourierSymbol bilaplacian(GridPtr grid);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return sigma_; }

private:
    FourierSymbol(GridPtr grid, std::vector<double> sigma);

    GridPtr grid_;
    std::vector<double> sigma_;
};

void apply_symbol_inplace(SpectralField& F, const FourierSymbol& s);
Field apply_symbol(const Field& f, const FourierSymbol& s);

// Per-mode division by (1 + c*sigma). Rejects c < 0 and any mode where
// |1 + c*sigma| falls below machine epsilon.
void solve_resolvent_inplace(SpectralField& F, const FourierSymbol& gl, double c);
Field solve_resolvent(const Field& f, const FourierSymbol& gl, double c);

// sum_k weight_k * sigma_k * |F_k|^2 * dx*dy/(nx*ny); with sigma the symbol
// of an operator A this is the quadratic form (A f, f) evaluated spectrally.
double spectral_quadratic(const SpectralField& F, const FourierSymbol& s);

// l2 norm of Laplacian^m f, computed spectrally.
double hk_seminorm(const Field& f, int order);

} // namespace gflow
