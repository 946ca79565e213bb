// grid.cpp

#include "gflow/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gflow {

namespace {

std::vector<double> wavenumbers(int n, double length) {
    std::vector<double> k(n);
    const double k0 = 2.0 * std::numbers::pi / length;
    for (int i = 0; i < n; ++i) {
        int m = (i < n / 2) ? i : i - n;
        k[i] = k0 * m;
    }
    return k;
}

} // namespace

Grid::Grid(int nx, int ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly),
      dx_(lx / nx), dy_(ly / ny),
      kx_(wavenumbers(nx, lx)), ky_(wavenumbers(ny, ly)) {}

GridPtr Grid::make(int nx, int ny, double lx, double ly) {
    auto even_ok = [](int n) { return n >= 8 && n % 2 == 0; };
    if (!even_ok(nx) || !even_ok(ny))
        throw std::invalid_argument("grid dimensions must be even and >= 8, got " +
                                    std::to_string(nx) + "x" + std::to_string(ny));
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly))
        throw std::invalid_argument("grid lengths must be positive and finite");
    return GridPtr(new Grid(nx, ny, lx, ly));
}

GridPtr make_grid(int nx, int ny, double lx, double ly) {
    return Grid::make(nx, ny, lx, ly);
}

} // namespace gflow
