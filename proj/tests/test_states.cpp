#include <doctest.h>

#include <cmath>
#include <numbers>

#include "psdec/states.hpp"
#include "psdec/transforms.hpp"
#include "test_support.hpp"

using namespace psdec;
using namespace psdec::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("coherent state formula and normalization") {
    const Grid1D g = default_grid();
    const WaveFunction vac = coherent_state(CoherentLabel{0.0, 0.0}, g);
    // psi(0) = pi^{-1/4}
    CHECK(std::abs(vac.amp(128) - std::pow(kPi, -0.25)) <= 1e-10);
    CHECK(std::abs(norm_squared(vac) - 1.0) <= 1e-10);

    const WaveFunction moved = coherent_state(CoherentLabel{2.0, 1.0}, g);
    CHECK(std::abs(norm_squared(moved) - 1.0) <= 1e-10);
    int peak = 0;
    double best = 0.0;
    for (int i = 0; i < g.n; ++i)
        if (std::norm(moved.amp(i)) > best) {
            best = std::norm(moved.amp(i));
            peak = i;
        }
    CHECK(std::abs(g.point(peak) - 2.0) <= g.dx());
}

TEST_CASE("coherent state rejects bad parameters") {
    const Grid1D g = default_grid();
    CHECK_THROWS_AS(coherent_state(CoherentLabel{9.0, 0.0}, g), std::invalid_argument);
    CHECK_THROWS_AS(coherent_state(CoherentLabel{-9.0, 0.0}, g), std::invalid_argument);
    CHECK_THROWS_AS(coherent_state(CoherentLabel{0.0, 0.0, -1.0}, g),
                    std::invalid_argument);
}

TEST_CASE("coherent state equals its Fock series") {
    // Wide grid so the n = 60 turning point keeps its margin.
    const Grid1D g = make_grid(512, 16.0);
    const WaveFunction direct = coherent_state(CoherentLabel{1.0, 0.0}, g);

    const Complex z = CoherentLabel{1.0, 0.0}.z();
    Eigen::VectorXcd series = Eigen::VectorXcd::Zero(g.n);
    Complex coeff = std::exp(-0.5 * std::norm(z));  // z^n / sqrt(n!) built up
    for (int n = 0; n <= 60; ++n) {
        series += coeff * fock_state(n, g).amp;
        coeff *= z / std::sqrt(static_cast<double>(n + 1));
    }
    CHECK((series - direct.amp).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("fock states: ground state, parity, orthonormality") {
    const Grid1D g = default_grid();
    const WaveFunction h0 = fock_state(0, g);
    for (int i = 0; i < g.n; i += 17) {
        const double x = g.point(i);
        CHECK(std::abs(h0.amp(i) - std::pow(kPi, -0.25) * std::exp(-0.5 * x * x)) <=
              1e-10);
    }

    const WaveFunction h1 = fock_state(1, g);
    CHECK(std::abs(h1.amp(128)) <= 1e-14);  // odd function vanishes at 0
    for (int i = 1; i < g.n; ++i)
        CHECK(std::abs(h1.amp(i) + h1.amp(g.n - i)) <= 1e-9);

    const Grid1D wide = make_grid(256, 12.0);
    std::vector<WaveFunction> h;
    for (int n = 0; n <= 20; ++n) h.push_back(fock_state(n, wide));
    for (int m = 0; m <= 20; ++m)
        for (int n = m; n <= 20; ++n) {
            const Complex ip = h[m].amp.dot(h[n].amp) * wide.dx();
            CHECK(std::abs(ip.real() - (m == n ? 1.0 : 0.0)) <= 1e-9);
        }
}

TEST_CASE("fock state rejects oversized n") {
    const Grid1D g = default_grid();
    CHECK_THROWS_AS(fock_state(201, make_grid(512, 40.0)), std::invalid_argument);
    CHECK_THROWS_AS(fock_state(40, g), std::invalid_argument);  // turning point 9
}

TEST_CASE("degenerate cat reduces to the coherent state") {
    const Grid1D g = default_grid();
    const CoherentLabel a{1.5, -0.5};
    const WaveFunction cat = cat_state(a, a, 0.0, g);
    const WaveFunction single = coherent_state(a, g);
    CHECK((cat.amp - single.amp).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("position cat structure") {
    const Grid1D g = default_grid();
    const WaveFunction cat =
        cat_state(CoherentLabel{3.0, 0.0}, CoherentLabel{-3.0, 0.0}, 0.0, g);
    CHECK(std::abs(norm_squared(cat) - 1.0) <= 1e-10);

    // |psi|^2 humps at +-3
    const auto density_at = [&](double x) {
        const int i = static_cast<int>(std::lround((x - g.x_min) / g.dx()));
        return std::norm(cat.amp(i));
    };
    CHECK(density_at(3.0) > 10.0 * density_at(0.0));
    CHECK(density_at(-3.0) > 10.0 * density_at(0.0));

    // Wigner interference fringes change sign along x = 0.
    const WignerFunction w = wigner_from_density(density_from_pure(cat));
    double wmin = 0.0, wmax = 0.0;
    for (int j = 0; j < w.grid.gp.n; ++j) {
        wmin = std::min(wmin, w.w(128, j));
        wmax = std::max(wmax, w.w(128, j));
    }
    CHECK(wmin < -0.1);
    CHECK(wmax > 0.1);
}

TEST_CASE("momentum cat marginal has humps at p = +-3") {
    const Grid1D g = default_grid();
    const WaveFunction cat =
        cat_state(CoherentLabel{0.0, 3.0}, CoherentLabel{0.0, -3.0}, 0.0, g);
    const WignerFunction w = wigner_from_density(density_from_pure(cat));
    const auto [px, pp] = marginals(w);

    int peak_hi = 0, peak_lo = 0;
    for (int j = 0; j < pp.grid.n; ++j) {
        const double p = pp.grid.point(j);
        if (p > 0 && pp.density(j) > pp.density(peak_hi)) peak_hi = j;
        if (p < 0 && pp.density(j) > pp.density(peak_lo)) peak_lo = j;
    }
    CHECK(pp.grid.point(peak_hi) == doctest::Approx(3.0).epsilon(0.05));
    CHECK(pp.grid.point(peak_lo) == doctest::Approx(-3.0).epsilon(0.05));

    // Cross-check against the direct momentum amplitude.
    for (int j = 60; j < pp.grid.n; j += 23) {
        const double p = pp.grid.point(j);
        const double expected = std::norm(momentum_amplitude(cat, p));
        CHECK(std::abs(pp.density(j) - expected) <= 1e-8);
    }
}

TEST_CASE("density_from_pure invariants") {
    const Grid1D g = default_grid();
    const DensityMatrix vac = vacuum_density(g);
    for (int i = 40; i < 220; i += 31)
        for (int j = 40; j < 220; j += 29) {
            const double x = g.point(i), y = g.point(j);
            const double expected =
                std::pow(kPi, -0.5) * std::exp(-0.5 * (x * x + y * y));
            CHECK(std::abs(vac.rho(i, j) - expected) <= 1e-10);
        }

    const DensityMatrix cat = position_cat_density(g);
    CHECK(std::abs(trace(cat) - 1.0) <= 1e-10);
    CHECK(std::abs(purity(cat) - 1.0) <= 1e-8);
    CHECK(hermiticity_defect(cat) == 0.0);
    CHECK(min_eigenvalue(cat) >= -1e-8);
}

TEST_CASE("coherent overlap law") {
    const Grid1D g = default_grid();
    const double pairs[][4] = {
        {0.0, 0.0, 1.0, 0.0},  {0.0, 0.0, 0.0, 2.0},   {1.0, -1.0, -1.5, 0.5},
        {2.0, 1.0, -1.0, 0.0}, {-2.0, -2.0, 1.0, 1.0},
    };
    for (const auto& q : pairs) {
        const WaveFunction za = coherent_state(CoherentLabel{q[0], q[1]}, g);
        const WaveFunction zb = coherent_state(CoherentLabel{q[2], q[3]}, g);
        const Complex ip = za.amp.dot(zb.amp) * g.dx();
        const double dx0 = q[0] - q[2], dp0 = q[1] - q[3];
        const double expected = std::exp(-0.5 * (dx0 * dx0 + dp0 * dp0));
        CHECK(std::abs(std::norm(ip) - expected) <= 1e-8);
    }
}

TEST_CASE("coherent states resolve the identity at desk scale") {
    // Wide grid so the z-lattice reaches ~6 sigma beyond the state support.
    const Grid1D g = make_grid(160, 14.0);
    const WaveFunction test =
        cat_state(CoherentLabel{1.5, 0.0}, CoherentLabel{-1.5, 1.0}, 0.5, g);

    const PhaseSpaceGrid ps = wigner_phase_space_grid(g);
    Eigen::VectorXcd rebuilt = Eigen::VectorXcd::Zero(g.n);
    for (int i = 0; i < ps.gx.n; ++i) {
        const double x0 = ps.gx.point(i);
        if (x0 < g.x_min + 5.0 || x0 > g.x_max - 5.0) continue;
        for (int j = 0; j < ps.gp.n; ++j) {
            const WaveFunction z =
                coherent_state(CoherentLabel{x0, ps.gp.point(j)}, g);
            const Complex amp = z.amp.dot(test.amp) * g.dx();
            rebuilt += amp * z.amp;
        }
    }
    rebuilt *= ps.gx.dx() * ps.gp.dx() / (2.0 * kPi);
    const double l2 = std::sqrt((rebuilt - test.amp).squaredNorm() * g.dx());
    CHECK(l2 <= 1e-6);
}
