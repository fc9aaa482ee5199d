#include <doctest.h>

#include <cmath>
#include <numbers>

#include "psdec/analysis.hpp"
#include "psdec/lindblad.hpp"
#include "test_support.hpp"

using namespace psdec;
using namespace psdec::testing;

namespace {
constexpr double kPi = std::numbers::pi;

WignerFunction position_lindblad_wigner(const DensityMatrix& rho, double gamma,
                                        double t) {
    return wigner_from_density(evolve_position_lindblad(rho, gamma, t));
}
}  // namespace

TEST_CASE("position Lindblad: identity, diagonal invariance, parameter checks") {
    const Grid1D g = default_grid();
    const DensityMatrix cat = position_cat_density(g);

    const DensityMatrix frozen = evolve_position_lindblad(cat, 0.2, 0.0);
    CHECK(linf(frozen.rho, cat.rho) == 0.0);

    const DensityMatrix out = evolve_position_lindblad(cat, 0.37, 2.3);
    for (int i = 0; i < g.n; ++i) CHECK(out.rho(i, i) == cat.rho(i, i));

    CHECK_THROWS_AS(evolve_position_lindblad(cat, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(evolve_position_lindblad(cat, 0.1, -1.0), std::invalid_argument);
}

TEST_CASE("position Lindblad closed form matches the RK4 oracle") {
    const Grid1D g = default_grid();
    const DensityMatrix cat = position_cat_density(g);
    const DensityMatrix analytic = evolve_position_lindblad(cat, 0.2, kPi / 4.0);

    EvolutionSpec spec;
    spec.mode = DecoherenceMode::position;
    spec.gamma = 0.2;
    spec.t = kPi / 4.0;
    const DensityMatrix oracle =
        evolve_master_oracle(cat, spec, default_oracle_dt(spec, g));
    CHECK(linf(analytic.rho, oracle.rho) <= 1e-6);
}

TEST_CASE("phase-space Lindblad: identity and the 1/(3 pi) peak") {
    const Grid1D g = default_grid();
    const WignerFunction w = wigner_from_density(vacuum_density(g));

    const WignerFunction same = evolve_phase_space_lindblad(w, 0.5, 0.0);
    CHECK(linf(same.w, w.w) == 0.0);

    // gamma t = 1: peak 1/(pi (1 + 2 gamma t)).
    const WignerFunction spread = evolve_phase_space_lindblad(w, 0.5, 2.0);
    CHECK(spread.w(128, 128) == doctest::Approx(1.0 / (3.0 * kPi)).epsilon(1e-10));
    CHECK_THROWS_AS(evolve_phase_space_lindblad(w, -0.5, 1.0), std::invalid_argument);
}

TEST_CASE("phase-space Lindblad matches the RK4 oracle on the momentum cat") {
    const Grid1D g = default_grid();
    const DensityMatrix cat = momentum_cat_density(g);
    const WignerFunction analytic =
        evolve_phase_space_lindblad(wigner_from_density(cat), 0.1, 1.0);

    EvolutionSpec spec;
    spec.mode = DecoherenceMode::phase_space;
    spec.gamma = 0.1;
    spec.t = 1.0;
    const DensityMatrix oracle =
        evolve_master_oracle(cat, spec, default_oracle_dt(spec, g));
    const FieldDistance d = compare_fields(analytic, wigner_from_density(oracle));
    CHECK(d.l2 <= 1e-4);
}

TEST_CASE("harmonic rotation: orbit, period, composition") {
    const Grid1D g = default_grid();
    const WignerFunction start = wigner_from_density(coherent_density(g, 3.0, 0.0));

    // Quarter period moves (3,0) to (0,-3).
    const WignerFunction quarter = evolve_harmonic_rotation(start, 1.0, 1.0, kPi / 2.0);
    const WignerFunction expected = wigner_from_density(coherent_density(g, 0.0, -3.0));
    CHECK(linf(quarter.w, expected.w) <= 1e-6);

    // Full period is the identity.
    const WignerFunction full = evolve_harmonic_rotation(start, 1.0, 1.0, 2.0 * kPi);
    CHECK(linf(full.w, start.w) <= 1e-6);

    // Four quarter turns equal one full turn.
    WignerFunction stepped = start;
    for (int k = 0; k < 4; ++k)
        stepped = evolve_harmonic_rotation(stepped, 1.0, 1.0, kPi / 2.0);
    CHECK(linf(stepped.w, full.w) <= 1e-6);

    CHECK_THROWS_AS(evolve_harmonic_rotation(start, 0.0, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve_harmonic_rotation(start, 1.0, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("composed evolution without Hamiltonian reduces to the propagators") {
    const Grid1D g = default_grid();
    const WignerFunction w = wigner_from_density(momentum_cat_density(g));

    EvolutionSpec spec;
    spec.mode = DecoherenceMode::phase_space;
    spec.gamma = 0.3;
    spec.t = 1.5;
    const WignerFunction composed = evolve_composed(w, spec);
    const WignerFunction direct = evolve_phase_space_lindblad(w, 0.3, 1.5);
    CHECK(linf(composed.w, direct.w) == 0.0);
}

TEST_CASE("isotropic diffusion commutes with rotation") {
    const Grid1D g = default_grid();
    const WignerFunction w = wigner_from_density(momentum_cat_density(g));
    const double gamma = 0.1, t = 1.2;

    const WignerFunction rot_then_diff = evolve_phase_space_lindblad(
        evolve_harmonic_rotation(w, 1.0, 1.0, t), gamma, t);
    const WignerFunction diff_then_rot = evolve_harmonic_rotation(
        evolve_phase_space_lindblad(w, gamma, t), 1.0, 1.0, t);
    CHECK(linf(rot_then_diff.w, diff_then_rot.w) <= 1e-8);
}

TEST_CASE("Strang-split position decoherence matches the RK4 oracle") {
    const Grid1D g = default_grid();
    const DensityMatrix cat = momentum_cat_density(g);

    EvolutionSpec spec;
    spec.mode = DecoherenceMode::position;
    spec.gamma = 0.2;
    spec.omega = 1.0;
    spec.mass = 1.0;
    spec.t = kPi / 4.0;
    spec.n_steps = 64;
    const WignerFunction split = evolve_composed(wigner_from_density(cat), spec);
    const DensityMatrix oracle =
        evolve_master_oracle(cat, spec, default_oracle_dt(spec, g));
    const FieldDistance d = compare_fields(split, wigner_from_density(oracle));
    CHECK(d.l2 <= 1e-3);
}

TEST_CASE("verify_steps flags too-coarse splitting") {
    const Grid1D g = default_grid();
    const WignerFunction w = wigner_from_density(momentum_cat_density(g));

    EvolutionSpec spec;
    spec.mode = DecoherenceMode::position;
    spec.gamma = 0.2;
    spec.omega = 1.0;
    spec.t = kPi / 4.0;
    spec.n_steps = 1;
    spec.verify_steps = true;
    CHECK_THROWS_AS(evolve_composed(w, spec), std::domain_error);

    spec.n_steps = 64;
    CHECK_NOTHROW(evolve_composed(w, spec));
}

TEST_CASE("master oracle: unitary limit keeps purity and moves the center") {
    const Grid1D g = default_grid();
    const DensityMatrix start = coherent_density(g, 3.0, 0.0);

    EvolutionSpec spec;
    spec.mode = DecoherenceMode::position;
    spec.gamma = 0.0;
    spec.omega = 1.0;
    spec.t = kPi / 2.0;
    const DensityMatrix evolved = evolve_master_oracle(start, spec, 0.001);
    CHECK(std::abs(purity(evolved) - 1.0) <= 1e-6);

    const StateMetrics m = stats_of(evolved);
    CHECK(std::abs(m.mean_x - 0.0) <= 1e-5);
    CHECK(std::abs(m.mean_p - (-3.0)) <= 1e-5);
}

TEST_CASE("master oracle: dephasing keeps the diagonal, diffusion obeys the variance law") {
    const Grid1D g = default_grid();
    const DensityMatrix cat = position_cat_density(g);

    EvolutionSpec dephase;
    dephase.mode = DecoherenceMode::position;
    dephase.gamma = 0.2;
    dephase.t = 0.5;
    const DensityMatrix out = evolve_master_oracle(cat, dephase, 0.001);
    for (int i = 0; i < g.n; ++i)
        CHECK(std::abs(out.rho(i, i).real() - cat.rho(i, i).real()) <= 1e-8);

    EvolutionSpec diffuse;
    diffuse.mode = DecoherenceMode::phase_space;
    diffuse.gamma = 1.0;
    diffuse.t = 1.0;
    const DensityMatrix vac = vacuum_density(g);
    const StateMetrics m = stats_of(evolve_master_oracle(vac, diffuse, 0.001));
    CHECK(std::abs(m.var_x - 1.5) <= 1e-5);
    CHECK(std::abs(m.var_p - 1.5) <= 1e-5);
}

TEST_CASE("master oracle recovers from an unstable starting step") {
    const Grid1D g = default_grid();
    const DensityMatrix cat = position_cat_density(g);
    EvolutionSpec spec;
    spec.mode = DecoherenceMode::position;
    spec.gamma = 0.2;
    spec.t = 0.25;
    // dt far beyond the stability limit; the integrator must halve its way in.
    const DensityMatrix oracle = evolve_master_oracle(cat, spec, 0.25);
    const DensityMatrix analytic = evolve_position_lindblad(cat, 0.2, 0.25);
    CHECK(linf(oracle.rho, analytic.rho) <= 1e-6);
}

TEST_CASE("semigroup property of both analytic propagators") {
    const Grid1D g = default_grid();
    const DensityMatrix cat = position_cat_density(g);

    const DensityMatrix two_legs = evolve_position_lindblad(
        evolve_position_lindblad(cat, 0.2, 0.6), 0.2, 0.9);
    const DensityMatrix one_leg = evolve_position_lindblad(cat, 0.2, 1.5);
    CHECK(linf(two_legs.rho, one_leg.rho) <= 1e-9);

    const WignerFunction w = wigner_from_density(momentum_cat_density(g));
    const WignerFunction w_two = evolve_phase_space_lindblad(
        evolve_phase_space_lindblad(w, 0.1, 4.0), 0.1, 6.0);
    const WignerFunction w_one = evolve_phase_space_lindblad(w, 0.1, 10.0);
    CHECK(linf(w_two.w, w_one.w) <= 1e-9);
}

TEST_CASE("phase-space decoherence conserves means and grows variance by gamma t") {
    const Grid1D g = default_grid();
    const WignerFunction w = wigner_from_density(momentum_cat_density(g));
    const StateMetrics before = phase_space_stats(w);

    for (double t : {1.0, 5.0}) {
        const StateMetrics after =
            phase_space_stats(evolve_phase_space_lindblad(w, 0.1, t));
        CHECK(std::abs(after.mean_x - before.mean_x) <= 1e-7);
        CHECK(std::abs(after.mean_p - before.mean_p) <= 1e-7);
        CHECK(std::abs((after.var_x - before.var_x) - 0.1 * t) <= 1e-5);
        CHECK(std::abs((after.var_p - before.var_p) - 0.1 * t) <= 1e-5);
    }
}

TEST_CASE("position monitoring keeps interference that phase-space monitoring kills") {
    const Grid1D g = default_grid();
    const DensityMatrix cat = momentum_cat_density(g);
    const WignerFunction w0 = wigner_from_density(cat);
    const double neg0 = phase_space_stats(w0).negativity_volume;
    CHECK(neg0 > 0.1);

    // Position monitoring at gamma = 0.2 to t = pi/4 barely touches the
    // x-direction fringes of a momentum cat.
    const WignerFunction w_pos = position_lindblad_wigner(cat, 0.2, kPi / 4.0);
    CHECK(phase_space_stats(w_pos).negativity_volume > 0.5 * neg0);

    // Phase-space monitoring at gamma = 0.1 to t = 8 pi wipes them out.
    const WignerFunction w_ps =
        evolve_phase_space_lindblad(w0, 0.1, 8.0 * kPi);
    CHECK(phase_space_stats(w_ps).negativity_volume < 1e-6);

    // Under position monitoring the position marginal is frozen while the
    // momentum marginal spreads.
    const auto [px0, pp0] = marginals(w0);
    const auto [px1, pp1] = marginals(w_pos);
    CHECK((px1.density - px0.density).cwiseAbs().maxCoeff() <= 1e-8);
    const StateMetrics m0 = phase_space_stats(w0);
    const StateMetrics m1 = phase_space_stats(w_pos);
    CHECK(m1.var_p > m0.var_p + 0.1);
    CHECK(std::abs(m1.var_x - m0.var_x) <= 1e-6);
}

TEST_CASE("default oracle dt follows the stiffness guide") {
    EvolutionSpec spec;
    spec.gamma = 0.0;
    CHECK(default_oracle_dt(spec, default_grid()) == 0.001);
    spec.gamma = 0.2;
    CHECK(default_oracle_dt(spec, default_grid()) == 0.001);
    spec.gamma = 40.0;
    CHECK(default_oracle_dt(spec, default_grid()) ==
          doctest::Approx(0.1 / 4000.0).epsilon(1e-12));
}
