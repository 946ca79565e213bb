// test_spectral.cpp
// Grid construction, transform round trips, diagonal operators, resolvent
// consistency, inner products, and the Parseval identity.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gflow/fft.hpp"
#include "gflow/field.hpp"
#include "gflow/grid.hpp"
#include "gflow/symbol.hpp"

#include "test_support.hpp"

using namespace gflow;
using namespace testsup;

namespace {

Field cosine_x(const GridPtr& g, int mode = 1, double amp = 1.0) {
    Field f(g);
    for (int i = 0; i < g->nx(); ++i)
        for (int j = 0; j < g->ny(); ++j)
            f.at(i, j) = amp * std::cos(mode * i * g->dx() * kTwoPi / g->lx());
    return f;
}

} // namespace

TEST_CASE("make_grid wavenumber tables follow signed FFT ordering") {
    auto g = make_grid(8, 8, kTwoPi, kTwoPi);
    const double (*exp8)[8] = nullptr;
    (void)exp8;
    std::vector<double> expect = {0, 1, 2, 3, -4, -3, -2, -1};
    for (int i = 0; i < 8; ++i) {
        CHECK(g->kx()[i] == doctest::Approx(expect[i]).epsilon(1e-15));
        CHECK(g->ky()[i] == doctest::Approx(expect[i]).epsilon(1e-15));
    }
    CHECK(g->dx() == doctest::Approx(kTwoPi / 8));

    // wavenumbers scale as 2*pi/l
    auto gh = make_grid(8, 8, std::numbers::pi, std::numbers::pi);
    std::vector<double> expect2 = {0, 2, 4, 6, -8, -6, -4, -2};
    for (int i = 0; i < 8; ++i)
        CHECK(gh->kx()[i] == doctest::Approx(expect2[i]).epsilon(1e-15));
}

TEST_CASE("make_grid rejects bad dimensions") {
    CHECK_THROWS_AS(make_grid(7, 8, kTwoPi, kTwoPi), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 6, kTwoPi, kTwoPi), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 8, kTwoPi, kTwoPi), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 8, 0.0, kTwoPi), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 8, kTwoPi, -1.0), std::invalid_argument);
}

TEST_CASE("forward transform of a constant hits only the zero mode") {
    auto g = unit_grid(16);
    Field f(g, 0.75);
    SpectralField F = fft_forward(f);
    CHECK(F[0].real() == doctest::Approx(0.75 * 16 * 16).epsilon(1e-14));
    CHECK(std::abs(F[0].imag()) < 1e-10);
    for (std::size_t k = 1; k < F.size(); ++k)
        CHECK(std::abs(F[k]) < 1e-10 * 16 * 16);
}

TEST_CASE("cos(x) occupies only the +-1 x-modes") {
    auto g = unit_grid(16);
    Field f = cosine_x(g);
    SpectralField F = fft_forward(f);
    const int nyh = g->ny() / 2 + 1;
    const double n2 = double(g->size());
    for (int i = 0; i < g->nx(); ++i)
        for (int j = 0; j < nyh; ++j) {
            double mag = std::abs(F[std::size_t(i) * nyh + j]);
            if ((i == 1 || i == 15) && j == 0)
                CHECK(mag == doctest::Approx(n2 / 2).epsilon(1e-12));
            else
                CHECK(mag < 1e-11 * n2);
        }
}

TEST_CASE("round trip reproduces 100 seeded random fields to 1e-13 max norm") {
    auto g = unit_grid(24);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Field f = seeded_field(g, seed);
        Field back = fft_inverse(fft_forward(f));
        CHECK(max_abs_diff(f, back) <= 1e-13 * std::max(1.0, max_abs(f)));
    }
}

TEST_CASE("grid mismatch is rejected") {
    auto g1 = unit_grid(16);
    auto g2 = unit_grid(32);
    Field a(g1), b(g2);
    CHECK_THROWS_AS(inner_product(a, b), std::invalid_argument);
    SpectralField F = fft_forward(a);
    CHECK_THROWS_AS(apply_symbol_inplace(F, FourierSymbol::identity(g2)),
                    std::invalid_argument);
}

TEST_CASE("apply_symbol acts as Laplacian and bilaplacian on eigenfunctions") {
    auto g = unit_grid(16);

    Field f = cosine_x(g);
    Field lap = apply_symbol(f, FourierSymbol::laplacian(g));
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(lap[i] == doctest::Approx(-f[i]).epsilon(1e-12).scale(1.0));

    Field f2 = cosine_x(g, 2);
    Field bi = apply_symbol(f2, FourierSymbol::bilaplacian(g));
    for (std::size_t i = 0; i < f2.size(); ++i)
        CHECK(bi[i] == doctest::Approx(16.0 * f2[i]).epsilon(1e-12).scale(16.0));

    Field same = apply_symbol(f, FourierSymbol::identity(g));
    CHECK(max_abs_diff(same, f) < 1e-13);
}

TEST_CASE("apply_symbol is linear") {
    auto g = unit_grid(16);
    Field f = seeded_field(g, 7), h = seeded_field(g, 8);
    FourierSymbol s = FourierSymbol::bilaplacian(g);
    const double alpha = 0.37, beta = -1.91;

    Field combo(g);
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo[i] = alpha * f[i] + beta * h[i];
    Field lhs = apply_symbol(combo, s);

    Field sf = apply_symbol(f, s), sh = apply_symbol(h, s);
    double scale = std::max(max_abs(sf), max_abs(sh));
    for (std::size_t i = 0; i < lhs.size(); ++i)
        CHECK(std::abs(lhs[i] - (alpha * sf[i] + beta * sh[i])) <= 1e-13 * scale);
}

TEST_CASE("resolvent inverts (I + c Delta^2) for a single mode") {
    auto g = unit_grid(16);
    Field f = cosine_x(g);
    FourierSymbol gl = FourierSymbol::bilaplacian(g);

    Field half = solve_resolvent(f, gl, 1.0);  // |k|^4 = 1 on this mode
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(half[i] == doctest::Approx(0.5 * f[i]).epsilon(1e-12).scale(1.0));

    Field same = solve_resolvent(f, gl, 0.0);
    CHECK(max_abs_diff(same, f) < 1e-13);

    CHECK_THROWS_AS(solve_resolvent(f, gl, -0.5), std::invalid_argument);
}

TEST_CASE("resolvent inverse-consistency for random fields") {
    auto g = unit_grid(24);
    FourierSymbol gl = FourierSymbol::bilaplacian(g);
    for (double c : {0.0, 1e-6, 0.1, 10.0}) {
        Field f = seeded_field(g, 11);
        Field sol = solve_resolvent(f, gl, c);
        // forward operator (I + c Delta^2), applied spectrally
        SpectralField S = fft_forward(sol);
        FourierSymbol fwd = FourierSymbol::from_function(
            g, [c](double kx, double ky) {
                double k2 = kx * kx + ky * ky;
                return 1.0 + c * k2 * k2;
            });
        apply_symbol_inplace(S, fwd);
        Field back = fft_inverse(S);

        Field diff(g);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = back[i] - f[i];
        CHECK(l2_norm(diff) <= 1e-12 * l2_norm(f));
    }
}

TEST_CASE("inner products, norms, means") {
    auto g = unit_grid(16);
    Field one(g, 1.0);
    CHECK(inner_product(one, one) ==
          doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-13));

    Field f = cosine_x(g);
    CHECK(l2_norm(f) * l2_norm(f) ==
          doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi)
              .epsilon(1e-12));
    CHECK(mean(f) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(mean(one) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hk_seminorm matches the Laplacian norm on an eigenfunction") {
    auto g = unit_grid(16);
    Field f = cosine_x(g);
    CHECK(hk_seminorm(f, 1) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
    // |k|^2 = 1 mode: every order gives the same value
    CHECK(hk_seminorm(f, 2) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
}

TEST_CASE("Parseval: spectral sum equals the quadrature inner product") {
    auto g = unit_grid(24);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Field f = seeded_field(g, seed);
        double real_side = inner_product(f, f);
        double spec_side = spectral_l2sq(fft_forward(f));
        CHECK(spec_side == doctest::Approx(real_side).epsilon(1e-12));
    }
}
