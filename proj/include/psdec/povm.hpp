#pragma once

#include <cstdint>
#include <vector>

#include "psdec/states.hpp"
#include "psdec/transforms.hpp"

namespace psdec {

/// Axis-aligned rectangle in phase space; bounds may be infinite.
struct PhaseSpaceRegion {
    double x_lo, x_hi, p_lo, p_hi;
};

struct MeasurementRecord {
    CoherentLabel outcome;
    DensityMatrix post_state;
};

/// Probability of a detection landing in the region: the Husimi density
/// integrated over the rectangle, with fractional weights for cells the
/// boundary cuts through.
double povm_probability(const DensityMatrix& rho, const PhaseSpaceRegion& region);

/// m unrecorded phase-space measurements: Gaussian damping exp(-m(x-y)^2/2)
/// of the off-diagonals and a variance-m Gaussian average along each
/// diagonal. The diagonal average runs as a zero-padded FFT convolution in
/// the rotated coordinates; the state must vanish at the matrix edge.
DensityMatrix povm_channel(const DensityMatrix& rho, int m, double sigma = 1.0);

/// Wigner-space form of the channel: Gaussian smoothing with per-axis
/// variances (m sigma^2, m/sigma^2). m = 1/2 reproduces the Husimi density;
/// any m >= 1/2 yields a nonnegative result.
WignerFunction povm_smooth_wigner(const WignerFunction& w, double m,
                                  double sigma = 1.0);

/// Draws phase-space outcomes from the Husimi density of a fixed state by
/// inverse-CDF sampling on the flattened grid, deterministic in the seed.
class PovmSampler {
public:
    PovmSampler(const DensityMatrix& rho, std::uint64_t seed);

    CoherentLabel next();
    const Grid1D& state_grid() const { return grid_; }

private:
    Grid1D grid_;
    PhaseSpaceGrid ps_grid_;
    std::vector<double> cdf_;  // over flattened (x-major) Husimi cells
    std::uint64_t rng_state_;

    double next_uniform();
};

/// One measurement on rho: the sampled label and the coherent post-state.
MeasurementRecord sample_povm_outcome(const DensityMatrix& rho, std::uint64_t seed);

}  // namespace psdec
