#include "psdec/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psdec {

namespace {

void check_margin(const CoherentLabel& label, const Grid1D& grid) {
    const double margin = 5.0 * label.sigma;
    if (label.x0 - grid.x_min < margin || grid.x_max - label.x0 < margin)
        throw std::invalid_argument(
            "coherent_state: center too close to the grid boundary");
    // Phase oscillations must stay resolvable on the lattice.
    const double nyquist = std::numbers::pi / grid.dx();
    if (std::abs(label.p0) > 0.8 * nyquist)
        throw std::invalid_argument(
            "coherent_state: momentum too large for the grid spacing");
}

void renormalize(WaveFunction& psi) {
    const double n2 = norm_squared(psi);
    if (!(n2 > 0.0)) throw std::domain_error("state has zero norm");
    psi.amp /= std::sqrt(n2);
}

}  // namespace

double norm_squared(const WaveFunction& psi) {
    return psi.amp.squaredNorm() * psi.grid.dx();
}

double trace(const DensityMatrix& rho) {
    return rho.rho.diagonal().sum().real() * rho.grid.dx();
}

double hermiticity_defect(const DensityMatrix& rho) {
    return (rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff();
}

double purity(const DensityMatrix& rho) {
    const double dx = rho.grid.dx();
    return rho.rho.squaredNorm() * dx * dx;
}

WaveFunction coherent_state(const CoherentLabel& label, const Grid1D& grid) {
    if (!(label.sigma > 0.0))
        throw std::invalid_argument("coherent_state: sigma must be positive");
    check_margin(label, grid);

    WaveFunction psi{grid, Eigen::VectorXcd(grid.n)};
    const double norm =
        std::pow(std::numbers::pi * label.sigma * label.sigma, -0.25);
    for (int i = 0; i < grid.n; ++i) {
        const double u = grid.point(i) - label.x0;
        psi.amp(i) = norm * std::exp(-0.5 * u * u / (label.sigma * label.sigma)) *
                     std::exp(Complex(0.0, label.p0 * u));
    }
    renormalize(psi);
    return psi;
}

WaveFunction fock_state(int n, const Grid1D& grid) {
    if (n < 0) throw std::invalid_argument("fock_state: n must be >= 0");
    if (n > 200) throw std::invalid_argument("fock_state: n exceeds 200");
    const double turning_point = std::sqrt(2.0 * n + 1.0);
    if (grid.x_max - turning_point < 4.0 || -grid.x_min - turning_point < 4.0)
        throw std::invalid_argument(
            "fock_state: grid too narrow for the classical turning point");

    WaveFunction psi{grid, Eigen::VectorXcd(grid.n)};
    const double h0_norm = std::pow(std::numbers::pi, -0.25);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.point(i);
        double hm1 = 0.0;
        double h = h0_norm * std::exp(-0.5 * x * x);
        for (int k = 0; k < n; ++k) {
            const double hp1 = std::sqrt(2.0 / (k + 1)) * x * h -
                               std::sqrt(static_cast<double>(k) / (k + 1)) * hm1;
            hm1 = h;
            h = hp1;
        }
        psi.amp(i) = h;
    }
    renormalize(psi);
    return psi;
}

WaveFunction cat_state(const CoherentLabel& a, const CoherentLabel& b,
                       double rel_phase, const Grid1D& grid) {
    const WaveFunction pa = coherent_state(a, grid);
    const WaveFunction pb = coherent_state(b, grid);
    WaveFunction psi{grid, pa.amp + std::exp(Complex(0.0, rel_phase)) * pb.amp};
    renormalize(psi);
    return psi;
}

DensityMatrix density_from_pure(const WaveFunction& psi) {
    DensityMatrix rho{psi.grid, psi.amp * psi.amp.adjoint()};
    return rho;
}

}  // namespace psdec
