// fft.cpp
// FFTW3 backing for the transforms. Plans are created once per grid size
// under a mutex (the FFTW planner is not thread-safe) with FFTW_ESTIMATE,
// which picks the algorithm deterministically; execution goes through the
// new-array interface on per-thread fftw_malloc'd scratch, so concurrent
// runs on different threads never share buffers.

#include "gflow/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

#include "gflow/kernels.hpp"

namespace gflow {

namespace {

using DimKey = std::pair<int, int>;

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
};

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Planned once per size on template buffers; executed on scratch of the
// same (fftw_malloc) alignment, which the new-array interface requires.
const PlanPair& plans_for(int nx, int ny) {
    static std::map<DimKey, PlanPair> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto it = cache.find({nx, ny});
    if (it != cache.end()) return it->second;

    std::size_t nreal = std::size_t(nx) * ny;
    std::size_t nspec = std::size_t(nx) * (ny / 2 + 1);
    double* r = fftw_alloc_real(nreal);
    fftw_complex* c = fftw_alloc_complex(nspec);
    PlanPair p;
    p.forward = fftw_plan_dft_r2c_2d(nx, ny, r, c, FFTW_ESTIMATE);
    p.inverse = fftw_plan_dft_c2r_2d(nx, ny, c, r, FFTW_ESTIMATE);
    fftw_free(r);
    fftw_free(c);
    if (!p.forward || !p.inverse)
        throw std::runtime_error("FFTW plan creation failed");
    return cache.emplace(DimKey{nx, ny}, p).first->second;
}

struct Scratch {
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    std::size_t nreal = 0, nspec = 0;

    void ensure(std::size_t nr, std::size_t ns) {
        if (nr > nreal) {
            fftw_free(real);
            real = fftw_alloc_real(nr);
            nreal = nr;
        }
        if (ns > nspec) {
            fftw_free(spec);
            spec = fftw_alloc_complex(ns);
            nspec = ns;
        }
    }
    ~Scratch() {
        fftw_free(real);
        fftw_free(spec);
    }
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

} // namespace

SpectralField::SpectralField(GridPtr grid)
    : grid_(std::move(grid)), coeffs_(grid_->spectral_size()) {}

SpectralField::SpectralField(GridPtr grid, std::vector<std::complex<double>> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_->spectral_size())
        throw std::invalid_argument("spectral coefficient count does not match grid");
}

SpectralField fft_forward(const Field& f) {
    const Grid& g = f.grid();
    const PlanPair& plans = plans_for(g.nx(), g.ny());
    Scratch& s = scratch();
    s.ensure(g.size(), g.spectral_size());

    for (std::size_t i = 0; i < g.size(); ++i) s.real[i] = f[i];
    fftw_execute_dft_r2c(plans.forward, s.real, s.spec);

    SpectralField out(f.grid_ptr());
    for (std::size_t i = 0; i < g.spectral_size(); ++i)
        out[i] = {s.spec[i][0], s.spec[i][1]};
    return out;
}

Field fft_inverse(const SpectralField& F) {
    const Grid& g = F.grid();
    const PlanPair& plans = plans_for(g.nx(), g.ny());
    Scratch& s = scratch();
    s.ensure(g.size(), g.spectral_size());

    for (std::size_t i = 0; i < g.spectral_size(); ++i) {
        s.spec[i][0] = F[i].real();
        s.spec[i][1] = F[i].imag();
    }
    fftw_execute_dft_c2r(plans.inverse, s.spec, s.real);

    Field out(F.grid_ptr());
    const double scale = 1.0 / double(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = s.real[i] * scale;
    return out;
}

const std::vector<double>& hermitian_weights(const Grid& g) {
    static std::map<DimKey, std::vector<double>> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find({g.nx(), g.ny()});
    if (it != cache.end()) return it->second;

    const int nyh = g.ny() / 2 + 1;
    std::vector<double> w(g.spectral_size());
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < nyh; ++j)
            w[std::size_t(i) * nyh + j] = (j == 0 || j == g.ny() / 2) ? 1.0 : 2.0;
    return cache.emplace(DimKey{g.nx(), g.ny()}, std::move(w)).first->second;
}

double spectral_l2sq(const SpectralField& F) {
    const Grid& g = F.grid();
    const auto& w = hermitian_weights(g);
    double s = kernels::weighted_spectrum_sum(F.data(), nullptr, w.data(), F.size());
    return s * g.cell() / double(g.size());
}

} // namespace gflow
