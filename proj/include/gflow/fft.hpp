// fft.hpp
// Real-to-complex Fourier transforms between Field and SpectralField.
//
// Conventions (fixed for the whole project):
//   - Forward transform is the unnormalized DFT
//       F[kx,ky] = sum_{i,j} f[i,j] exp(-i(kx*x_i + ky*y_j)),
//     so a constant field c transforms to c*nx*ny in the zero mode.
//   - The inverse divides by nx*ny; inverse(forward(f)) == f to roundoff.
//   - Storage is the half-spectrum layout of a real transform along the
//     fast (y) axis: row-major nx x (ny/2+1) complex values, row i holding
//     wavenumber kx[i] and column j holding ky[j], j = 0..ny/2. Modes with
//     0 < j < ny/2 stand for a conjugate pair and carry Hermitian weight 2
//     in spectral sums; columns j = 0 and j = ny/2 carry weight 1.
//   - Plans are FFTW_ESTIMATE, cached per grid size behind a mutex, and
//     executed on per-thread scratch buffers, so transforms are
//     deterministic run to run and safe to call from concurrent runs.

#pragma once

#include <complex>
#include <vector>

#include "gflow/field.hpp"
#include "gflow/grid.hpp"

namespace gflow {

class SpectralField {
public:
    explicit SpectralField(GridPtr grid);
    SpectralField(GridPtr grid, std::vector<std::complex<double>> coeffs);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    std::size_t size() const { return coeffs_.size(); }
    std::complex<double>* data() { return coeffs_.data(); }
    const std::complex<double>* data() const { return coeffs_.data(); }

    std::complex<double> operator[](std::size_t n) const { return coeffs_[n]; }
    std::complex<double>& operator[](std::size_t n) { return coeffs_[n]; }

private:
    GridPtr grid_;
    std::vector<std::complex<double>> coeffs_;
};

SpectralField fft_forward(const Field& f);
Field fft_inverse(const SpectralField& F);

// Hermitian weights (1 or 2 per stored mode) matching the layout above.
// One table per grid, built lazily and shared.
const std::vector<double>& hermitian_weights(const Grid& g);

// Parseval sum: equals inner_product(f, f) for F = fft_forward(f).
double spectral_l2sq(const SpectralField& F);

} // namespace gflow
