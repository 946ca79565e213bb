// grid.hpp
// Periodic rectangular lattice with precomputed angular wavenumber tables.

#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace gflow {

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

// Uniform periodic grid on [0,lx) x [0,ly). Point (i,j) sits at
// (i*dx, j*dy) and is stored row-major at index i*ny + j. Wavenumbers
// follow standard signed FFT ordering: k[m] = 2*pi*m/l with
// m = 0,1,...,n/2-1,-n/2,...,-1.
class Grid {
public:
    static GridPtr make(int nx, int ny, double lx, double ly);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double lx() const { return lx_; }
    double ly() const { return ly_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    double cell() const { return dx_ * dy_; }       // quadrature weight
    double area() const { return lx_ * ly_; }

    std::size_t size() const { return std::size_t(nx_) * ny_; }
    // half-spectrum size of the real-to-complex transform (see fft.hpp)
    std::size_t spectral_size() const { return std::size_t(nx_) * (ny_ / 2 + 1); }

    const std::vector<double>& kx() const { return kx_; }
    const std::vector<double>& ky() const { return ky_; }

    bool compatible(const Grid& other) const {
        return nx_ == other.nx_ && ny_ == other.ny_ &&
               lx_ == other.lx_ && ly_ == other.ly_;
    }

private:
    Grid(int nx, int ny, double lx, double ly);

    int nx_, ny_;
    double lx_, ly_, dx_, dy_;
    std::vector<double> kx_, ky_;
};

// Rejects odd dimensions and anything below 8 points per direction.
GridPtr make_grid(int nx, int ny, double lx, double ly);

} // namespace gflow
