// potential.hpp
// Double-well potential, chemical potential, and the discrete energies.

#pragma once

#include <string>

#include "gflow/field.hpp"
#include "gflow/symbol.hpp"

namespace gflow {

enum class FlowKind { cahn_hilliard, allen_cahn };

// Which gradient flow we are discretizing: fixes the mobility operator G
// and the linear part L of the chemical potential. Both flows share the
// free energy E = 1/2 (L phi, phi) + int F(phi) with L = -eps2 * Laplacian,
// keeping the -phi^2/2 + 1/4 part inside F so that E >= 0.
struct FlowSpec {
    FlowKind kind = FlowKind::cahn_hilliard;
    double eps2 = 1.0;

    static FlowSpec cahn_hilliard(double eps2);
    static FlowSpec allen_cahn(double eps2);

    FourierSymbol sigma_L(GridPtr grid) const;   // eps2 * |k|^2
    FourierSymbol sigma_G(GridPtr grid) const;   // CH: |k|^2, AC: 1
    FourierSymbol sigma_GL(GridPtr grid) const;  // product of the two

    std::string name() const;
};

FlowSpec parse_flow(const std::string& name, double eps2);

// F(phi) = 0.25*(phi^2 - 1)^2, pointwise
Field potential_F(const Field& f);
// F'(phi) = phi^3 - phi, pointwise
Field potential_Fprime(const Field& f);
// int F(phi) dx
double bulk_energy(const Field& f);
// F'(phi) + L phi
Field chemical_potential(const Field& f, const FlowSpec& spec);

// E = 1/2 (L phi, phi) + int F(phi); the quadratic part is summed spectrally
double total_energy(const Field& f, const FlowSpec& spec);
// E(fnew) + 1/8 (L(fnew - fold), fnew - fold)
double modified_energy(const Field& fnew, const Field& fold, const FlowSpec& spec);

} // namespace gflow
