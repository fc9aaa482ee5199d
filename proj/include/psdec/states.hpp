#pragma once

#include <Eigen/Dense>

#include "psdec/grid.hpp"

namespace psdec {

/// Phase-space label of a coherent state, z = (x0 + i p0)/sqrt(2), with an
/// optional squeeze sigma (width in x; sigma = 1 is the round state).
struct CoherentLabel {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma = 1.0;

    Complex z() const { return Complex(x0, p0) / std::sqrt(2.0); }
    static CoherentLabel from_z(Complex z, double sigma = 1.0) {
        return CoherentLabel{std::sqrt(2.0) * z.real(), std::sqrt(2.0) * z.imag(), sigma};
    }
};

/// Pure state sampled on a Grid1D, normalized so sum |amp|^2 dx = 1.
struct WaveFunction {
    Grid1D grid;
    Eigen::VectorXcd amp;
};

/// Position-representation density matrix rho(x_i, x_j); Hermitian with
/// unit trace under the dx quadrature weight.
struct DensityMatrix {
    Grid1D grid;
    Eigen::MatrixXcd rho;
};

/// <x|z> = (pi sigma^2)^(-1/4) exp(-(x-x0)^2/(2 sigma^2) + i p0 (x-x0)).
/// The center must keep a 5-sigma margin to both grid edges.
WaveFunction coherent_state(const CoherentLabel& label, const Grid1D& grid);

/// Harmonic-oscillator eigenstate h_n, built with the normalized Hermite
/// recurrence h_{n+1} = sqrt(2/(n+1)) x h_n - sqrt(n/(n+1)) h_{n-1}.
WaveFunction fock_state(int n, const Grid1D& grid);

/// N (|a> + e^{i rel_phase} |b>) with N absorbing the <a|b> overlap.
WaveFunction cat_state(const CoherentLabel& a, const CoherentLabel& b,
                       double rel_phase, const Grid1D& grid);

DensityMatrix density_from_pure(const WaveFunction& psi);

double norm_squared(const WaveFunction& psi);
double trace(const DensityMatrix& rho);
double hermiticity_defect(const DensityMatrix& rho);

/// tr(rho^2) under the quadrature weight: sum |rho_ab|^2 dx^2.
double purity(const DensityMatrix& rho);

}  // namespace psdec
