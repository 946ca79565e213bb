// potential.cpp

#include "gflow/potential.hpp"

#include <stdexcept>

#include "gflow/kernels.hpp"

namespace gflow {

FlowSpec FlowSpec::cahn_hilliard(double eps2) {
    if (!(eps2 > 0.0)) throw std::invalid_argument("eps2 must be positive");
    return {FlowKind::cahn_hilliard, eps2};
}

FlowSpec FlowSpec::allen_cahn(double eps2) {
    if (!(eps2 > 0.0)) throw std::invalid_argument("eps2 must be positive");
    return {FlowKind::allen_cahn, eps2};
}

FourierSymbol FlowSpec::sigma_L(GridPtr grid) const {
    const double e2 = eps2;
    return FourierSymbol::from_function(
        std::move(grid), [e2](double kx, double ky) { return e2 * (kx * kx + ky * ky); });
}

FourierSymbol FlowSpec::sigma_G(GridPtr grid) const {
    if (kind == FlowKind::allen_cahn) return FourierSymbol::identity(std::move(grid));
    return FourierSymbol::from_function(
        std::move(grid), [](double kx, double ky) { return kx * kx + ky * ky; });
}

FourierSymbol FlowSpec::sigma_GL(GridPtr grid) const {
    const double e2 = eps2;
    if (kind == FlowKind::allen_cahn)
        return FourierSymbol::from_function(
            std::move(grid), [e2](double kx, double ky) { return e2 * (kx * kx + ky * ky); });
    return FourierSymbol::from_function(std::move(grid), [e2](double kx, double ky) {
        double k2 = kx * kx + ky * ky;
        return e2 * k2 * k2;
    });
}

std::string FlowSpec::name() const {
    return kind == FlowKind::cahn_hilliard ? "cahn-hilliard" : "allen-cahn";
}

FlowSpec parse_flow(const std::string& name, double eps2) {
    if (name == "cahn-hilliard") return FlowSpec::cahn_hilliard(eps2);
    if (name == "allen-cahn") return FlowSpec::allen_cahn(eps2);
    throw std::invalid_argument("unknown flow: " + name);
}

Field potential_F(const Field& f) {
    Field out(f.grid_ptr());
    kernels::double_well(out.data(), f.data(), f.size());
    return out;
}

Field potential_Fprime(const Field& f) {
    Field out(f.grid_ptr());
    kernels::double_well_deriv(out.data(), f.data(), f.size());
    return out;
}

double bulk_energy(const Field& f) {
    Field F = potential_F(f);
    return kernels::sum(F.data(), F.size()) * f.grid().cell();
}

Field chemical_potential(const Field& f, const FlowSpec& spec) {
    Field mu = apply_symbol(f, spec.sigma_L(f.grid_ptr()));
    Field fp = potential_Fprime(f);
    kernels::axpy(mu.data(), mu.data(), 1.0, fp.data(), mu.size());
    return mu;
}

double total_energy(const Field& f, const FlowSpec& spec) {
    SpectralField F = fft_forward(f);
    double quad = spectral_quadratic(F, spec.sigma_L(f.grid_ptr()));
    return 0.5 * quad + bulk_energy(f);
}

double modified_energy(const Field& fnew, const Field& fold, const FlowSpec& spec) {
    require_same_grid(fnew, fold);
    Field jump(fnew.grid_ptr());
    kernels::lincomb(jump.data(), 1.0, fnew.data(), -1.0, fold.data(), jump.size());
    SpectralField J = fft_forward(jump);
    double jump_quad = spectral_quadratic(J, spec.sigma_L(fnew.grid_ptr()));
    return total_energy(fnew, spec) + 0.125 * jump_quad;
}

} // namespace gflow
