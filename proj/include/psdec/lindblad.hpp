#pragma once

#include "psdec/states.hpp"
#include "psdec/transforms.hpp"

namespace psdec {

enum class DecoherenceMode { position, phase_space };

struct EvolutionSpec {
    double gamma = 0.0;  // decoherence rate
    double omega = 0.0;  // harmonic frequency; 0 means no Hamiltonian
    double mass = 1.0;
    DecoherenceMode mode = DecoherenceMode::position;
    double t = 0.0;
    int n_steps = 1;       // splitting steps for the composed propagator
    double sigma = 1.0;    // POVM squeeze for phase-space decoherence
    bool verify_steps = false;  // re-run with halved steps and compare
};

/// Closed form of the position-monitoring master equation:
/// rho_t(x,y) = exp(-gamma (x-y)^2 t / 2) rho_0(x,y). The diagonal is
/// exactly invariant.
DensityMatrix evolve_position_lindblad(const DensityMatrix& rho0, double gamma,
                                       double t);

/// Heat-kernel propagator of the x+p monitoring equation: Gaussian
/// convolution with per-axis variances (gamma t sigma^2, gamma t / sigma^2).
WignerFunction evolve_phase_space_lindblad(const WignerFunction& w0, double gamma,
                                           double t, double sigma = 1.0);

/// Advection along the classical harmonic flow (x_dot = p/m, p_dot =
/// -m omega^2 x), resampled by spectral shears; exact for band-limited
/// fields. A full period is the identity.
WignerFunction evolve_harmonic_rotation(const WignerFunction& w0, double omega,
                                        double mass, double t);

/// Decoherence composed with the harmonic Hamiltonian. Phase-space mode with
/// sigma = 1 composes exactly (the isotropic kernel commutes with rotation);
/// otherwise Strang splitting with spec.n_steps steps.
WignerFunction evolve_composed(const WignerFunction& w0, const EvolutionSpec& spec);

/// RK4 integration of the full master equation in the position basis, with
/// p built by spectral differentiation. Slow, independent reference for the
/// analytic propagators. Halves dt until the trace drift over the run stays
/// below 1e-8; aborts with diagnostics when it cannot.
DensityMatrix evolve_master_oracle(const DensityMatrix& rho0,
                                   const EvolutionSpec& spec, double dt);

/// dt = min(0.001, 0.1/(gamma x_max^2)), the stiffness-guided default.
double default_oracle_dt(const EvolutionSpec& spec, const Grid1D& grid);

}  // namespace psdec
