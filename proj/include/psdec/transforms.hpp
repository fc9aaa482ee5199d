#pragma once

#include <utility>

#include "psdec/grid.hpp"
#include "psdec/states.hpp"

namespace psdec {

/// Real quasi-probability W(x_i, p_j); integrates to 1, |W| <= 1/pi.
struct WignerFunction {
    PhaseSpaceGrid grid;
    RealArray w;
};

/// Nonnegative Husimi density Q(x_i, p_j); integrates to 1.
struct HusimiFunction {
    PhaseSpaceGrid grid;
    RealArray q;
};

/// chi(q_i, k_j) on the Fourier-dual phase-space grid; chi(0,0) = 1/(2 pi)
/// for a unit-normalized Wigner function.
struct CharacteristicFunction {
    PhaseSpaceGrid dual_grid;
    ComplexArray chi;
};

/// Momentum lattice conjugate to the half-coordinate offsets of the Wigner
/// integral: spacing pi/(n dx), n samples centered at 0.
Grid1D wigner_momentum_grid(const Grid1D& gx);
PhaseSpaceGrid wigner_phase_space_grid(const Grid1D& gx);

/// W(x,p) = (1/pi) int rho(x+nu, x-nu) exp(-2 i p nu) d nu, evaluated by FFT
/// over the anti-diagonal offsets for every grid center.
WignerFunction wigner_from_density(const DensityMatrix& rho);

/// Inverse Weyl transform rho(x,y) = int W((x+y)/2, mu) exp(i mu (x-y)) d mu.
/// Entries between lattice centers come from a spectral half-sample shift, so
/// the pair is an exact inverse for states that decay on the grid.
DensityMatrix density_from_wigner(const WignerFunction& w);

/// Q(x0,p0) = <z|rho|z>/(2 pi), computed as the Wigner function smoothed with
/// per-axis variances (sigma^2/2, 1/(2 sigma^2)).
HusimiFunction husimi_from_density(const DensityMatrix& rho, double sigma = 1.0);

/// chi(q,k) = (1/2 pi) int exp(-i q x - i k p) W(x,p) dx dp.
CharacteristicFunction characteristic_from_wigner(const WignerFunction& w);
WignerFunction wigner_from_characteristic(const CharacteristicFunction& chi);

struct MarginalDensity {
    Grid1D grid;
    Eigen::VectorXd density;
};

/// Position and momentum marginal densities of a Wigner function.
std::pair<MarginalDensity, MarginalDensity> marginals(const WignerFunction& w);

}  // namespace psdec
