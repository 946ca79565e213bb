// test_potential.cpp
// Double-well values, the derivative against a finite-difference oracle,
// chemical potential identities, and both energies against real-space
// quadrature.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gflow/potential.hpp"

#include "test_support.hpp"

using namespace gflow;
using namespace testsup;

TEST_CASE("double well takes its tabulated values") {
    auto g = unit_grid(16);
    for (auto [phi, F] : {std::pair{0.0, 0.25}, {1.0, 0.0}, {2.0, 2.25}}) {
        Field f(g, phi);
        Field out = potential_F(f);
        for (std::size_t i = 0; i < out.size(); ++i)
            CHECK(out[i] == doctest::Approx(F).epsilon(1e-15).scale(1.0));
    }
    for (auto [phi, Fp] : {std::pair{0.0, 0.0}, {2.0, 6.0}, {-1.0, 0.0}}) {
        Field f(g, phi);
        Field out = potential_Fprime(f);
        for (std::size_t i = 0; i < out.size(); ++i)
            CHECK(out[i] == doctest::Approx(Fp).epsilon(1e-15).scale(1.0));
    }
}

TEST_CASE("F' matches the centered difference of F") {
    auto g = unit_grid(16);
    Field f = seeded_field(g, 3, 0.0, 2.0);  // values in [-2,2)
    Field fp = potential_Fprime(f);
    const double h = 1e-5;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double fd = (well(f[i] + h) - well(f[i] - h)) / (2.0 * h);
        CHECK(std::abs(fp[i] - fd) <= 1e-8);
    }
}

TEST_CASE("chemical potential on eigenfunctions and constants") {
    auto g = unit_grid(16);
    FlowSpec ch = FlowSpec::cahn_hilliard(1.0);

    // cos(x): the -eps2*Laplacian term cancels the -phi term, leaving cos^3
    Field f(g);
    for (int i = 0; i < g->nx(); ++i)
        for (int j = 0; j < g->ny(); ++j) f.at(i, j) = std::cos(i * g->dx());
    Field mu = chemical_potential(f, ch);
    for (std::size_t i = 0; i < mu.size(); ++i)
        CHECK(mu[i] ==
              doctest::Approx(f[i] * f[i] * f[i]).epsilon(1e-12).scale(1.0));

    Field one(g, 1.0);
    Field mu1 = chemical_potential(one, ch);
    CHECK(max_abs(mu1) < 1e-12);

    Field c(g, 0.7);
    Field muc = chemical_potential(c, ch);
    for (std::size_t i = 0; i < muc.size(); ++i)
        CHECK(muc[i] ==
              doctest::Approx(0.7 * 0.7 * 0.7 - 0.7).epsilon(1e-12).scale(1.0));
}

TEST_CASE("total energy of constants") {
    auto g = unit_grid(16);
    FlowSpec ch = FlowSpec::cahn_hilliard(0.06);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(total_energy(Field(g, 0.0), ch) == doctest::Approx(pi2).epsilon(1e-13));
    CHECK(total_energy(Field(g, 1.0), ch) ==
          doctest::Approx(0.0).scale(pi2).epsilon(1e-14));
}

TEST_CASE("total energy matches direct real-space quadrature") {
    auto g = unit_grid(64);
    FlowSpec ch = FlowSpec::cahn_hilliard(0.06);
    // phi = 0.1 cos(x): grad phi = -0.1 sin(x), known in closed form
    Field f(g);
    for (int i = 0; i < g->nx(); ++i)
        for (int j = 0; j < g->ny(); ++j) f.at(i, j) = 0.1 * std::cos(i * g->dx());
    double direct = quadrature(*g, [&](std::size_t n) {
        std::size_t i = n / g->ny();
        double x = i * g->dx();
        double grad = -0.1 * std::sin(x);
        return well(0.1 * std::cos(x)) + 0.5 * 0.06 * grad * grad;
    });
    CHECK(total_energy(f, ch) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("modified energy reduces to the plain energy at zero jump") {
    auto g = unit_grid(16);
    FlowSpec ch = FlowSpec::cahn_hilliard(0.06);
    Field f = seeded_field(g, 5, 0.3, 0.5);
    CHECK(modified_energy(f, f, ch) ==
          doctest::Approx(total_energy(f, ch)).epsilon(1e-14));

    // L annihilates constants and F(1) = 0
    Field one(g, 1.0), zero(g, 0.0);
    CHECK(modified_energy(one, zero, ch) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
}

TEST_CASE("jump term keeps the modified energy above the plain energy") {
    auto g = unit_grid(16);
    FlowSpec ch = FlowSpec::cahn_hilliard(0.06);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Field a = seeded_field(g, 2 * seed, 0.0, 1.0);
        Field b = seeded_field(g, 2 * seed + 1, 0.0, 1.0);
        double e = total_energy(a, ch);
        double em = modified_energy(a, b, ch);
        CHECK(em >= e - 1e-12 * std::max(1.0, std::abs(em)));
        CHECK(e >= 0.0);
    }
}

TEST_CASE("flow spec symbols have the required zero-mode values") {
    auto g = unit_grid(16);
    FlowSpec ch = FlowSpec::cahn_hilliard(0.06);
    FlowSpec ac = FlowSpec::allen_cahn(0.06);
    CHECK(ch.sigma_G(g).values()[0] == 0.0);  // mass-conserving
    CHECK(ac.sigma_G(g).values()[0] == 1.0);
    CHECK(ch.sigma_L(g).values()[0] == 0.0);
    for (double v : ch.sigma_L(g).values()) CHECK(v >= 0.0);
    for (double v : ch.sigma_G(g).values()) CHECK(v >= 0.0);
    CHECK_THROWS_AS(FlowSpec::cahn_hilliard(0.0), std::invalid_argument);
}
