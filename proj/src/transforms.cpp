#include "psdec/transforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "psdec/fft.hpp"

namespace psdec {

namespace {

constexpr double kPi = std::numbers::pi;

void require_wigner_layout(const WignerFunction& w) {
    if (!w.grid.gx.symmetric() || !w.grid.gp.symmetric())
        throw std::invalid_argument("wigner grid must be symmetric about 0");
}

void require_square_wigner(const WignerFunction& w) {
    require_wigner_layout(w);
    if (!same_grid(w.grid.gp, wigner_momentum_grid(w.grid.gx)))
        throw std::invalid_argument(
            "momentum axis is not the spectral dual of the position grid");
}

}  // namespace

Grid1D wigner_momentum_grid(const Grid1D& gx) {
    const double dp = kPi / (gx.n * gx.dx());
    const double half = 0.5 * gx.n * dp;
    return Grid1D{gx.n, -half, half};
}

PhaseSpaceGrid wigner_phase_space_grid(const Grid1D& gx) {
    return PhaseSpaceGrid{gx, wigner_momentum_grid(gx)};
}

WignerFunction wigner_from_density(const DensityMatrix& rho) {
    if (!rho.grid.symmetric())
        throw std::invalid_argument("density grid must be symmetric about 0");
    if (hermiticity_defect(rho) > 1e-10)
        throw std::invalid_argument("wigner_from_density: input not Hermitian");

    const int n = rho.grid.n;
    const int h = n / 2;
    const double dx = rho.grid.dx();

    // Row i holds rho along the anti-diagonal through center x_i, offset
    // nu = (s - h) dx, zero-extended outside the matrix.
    ComplexArray a = ComplexArray::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(-h, std::max(-i, i - n + 1));
        const int hi = std::min(h - 1, std::min(n - 1 - i, i));
        for (int l = lo; l <= hi; ++l) a(i, l + h) = rho.rho(i + l, i - l);
    }
    fft::centered_transform_rows(a, fft::kForward);

    WignerFunction w{wigner_phase_space_grid(rho.grid), a.real() * (dx / kPi)};
    return w;
}

DensityMatrix density_from_wigner(const WignerFunction& w) {
    require_square_wigner(w);
    const int n = w.grid.gx.n;
    const int h = n / 2;
    const double dx = w.grid.gx.dx();
    const double scale = kPi / dx / n;

    // Anti-diagonals through the lattice centers (entries with a+b even).
    ComplexArray even = w.w.cast<Complex>() * scale;
    fft::centered_transform_rows(even, fft::kBackward);

    // Entries with a+b odd live on half-lattice centers: shift W by dx/2
    // along x, then invert with a half-sample offset in nu.
    ComplexArray odd = w.w.cast<Complex>();
    fft::transform_cols(odd, fft::kForward);
    for (int i = 0; i < n; ++i) {
        const double q = fft::natural_frequency(i, n, dx);
        odd.row(i) *= std::exp(Complex(0.0, 0.5 * q * dx)) / static_cast<double>(n);
    }
    fft::transform_cols(odd, fft::kBackward);
    odd *= scale;
    for (int j = 0; j < n; ++j)
        odd.col(j) *= std::exp(Complex(0.0, kPi * (j - h) / n));
    fft::centered_transform_rows(odd, fft::kBackward);

    DensityMatrix rho{w.grid.gx, Eigen::MatrixXcd(n, n)};
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if ((a + b) % 2 == 0)
                rho.rho(a, b) = even((a + b) / 2, (a - b) / 2 + h);
            else
                rho.rho(a, b) = odd((a + b - 1) / 2, (a - b - 1) / 2 + h);
        }
    }
    rho.rho = 0.5 * (rho.rho + rho.rho.adjoint()).eval();
    return rho;
}

HusimiFunction husimi_from_density(const DensityMatrix& rho, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("husimi_from_density: sigma must be positive");
    const WignerFunction w = wigner_from_density(rho);
    const double s2 = sigma * sigma;
    RealField smoothed =
        gaussian_convolve(RealField{w.grid, w.w}, 0.5 * s2, 0.5 / s2);
    return HusimiFunction{w.grid, std::move(smoothed.values)};
}

CharacteristicFunction characteristic_from_wigner(const WignerFunction& w) {
    require_wigner_layout(w);
    const double dx = w.grid.gx.dx(), dp = w.grid.gp.dx();
    ComplexArray chi = w.w.cast<Complex>();
    fft::centered_transform_2d(chi, fft::kForward);
    chi *= dx * dp / (2.0 * kPi);
    PhaseSpaceGrid dual{fourier_dual(w.grid.gx), fourier_dual(w.grid.gp)};
    return CharacteristicFunction{dual, std::move(chi)};
}

WignerFunction wigner_from_characteristic(const CharacteristicFunction& chi) {
    const double dq = chi.dual_grid.gx.dx(), dk = chi.dual_grid.gp.dx();
    ComplexArray w = chi.chi;
    fft::centered_transform_2d(w, fft::kBackward);
    w *= dq * dk / (2.0 * kPi);
    PhaseSpaceGrid grid{fourier_dual(chi.dual_grid.gx), fourier_dual(chi.dual_grid.gp)};
    return WignerFunction{grid, w.real()};
}

std::pair<MarginalDensity, MarginalDensity> marginals(const WignerFunction& w) {
    MarginalDensity px{w.grid.gx, w.w.rowwise().sum() * w.grid.gp.dx()};
    MarginalDensity pp{w.grid.gp, w.w.colwise().sum().transpose() * w.grid.gx.dx()};
    return {std::move(px), std::move(pp)};
}

}  // namespace psdec
