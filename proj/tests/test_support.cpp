#include "test_support.hpp"

#include <cmath>
#include <numbers>

namespace psdec::testing {

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::VectorXd gauss_kernel_samples(double spacing, double var, int count,
                                     int center) {
    Eigen::VectorXd k(count);
    const double norm = 1.0 / std::sqrt(2.0 * kPi * var);
    for (int i = 0; i < count; ++i) {
        const double u = (i - center) * spacing;
        k(i) = norm * std::exp(-0.5 * u * u / var);
    }
    return k;
}
}  // namespace

RealField convolve_direct(const RealField& f, double var_x, double var_p) {
    const int nx = f.grid.gx.n, np = f.grid.gp.n;
    const double dx = f.grid.gx.dx(), dp = f.grid.gp.dx();

    RealArray tmp = f.values;
    if (var_p > 0.0) {
        tmp.setZero();
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < np; ++j) {
                double acc = 0.0;
                for (int jj = 0; jj < np; ++jj) {
                    const double u = (j - jj) * dp;
                    acc += f.values(i, jj) * std::exp(-0.5 * u * u / var_p);
                }
                tmp(i, j) = acc * dp / std::sqrt(2.0 * kPi * var_p);
            }
    }
    RealArray out = tmp;
    if (var_x > 0.0) {
        out.setZero();
        for (int j = 0; j < np; ++j)
            for (int i = 0; i < nx; ++i) {
                double acc = 0.0;
                for (int ii = 0; ii < nx; ++ii) {
                    const double u = (i - ii) * dx;
                    acc += tmp(ii, j) * std::exp(-0.5 * u * u / var_x);
                }
                out(i, j) = acc * dx / std::sqrt(2.0 * kPi * var_x);
            }
    }
    return RealField{f.grid, std::move(out)};
}

double wigner_point_direct(const DensityMatrix& rho, int x_index, double p) {
    const int n = rho.grid.n;
    const double dx = rho.grid.dx();
    Complex acc = 0.0;
    for (int l = -n / 2; l < n / 2; ++l) {
        const int a = x_index + l, b = x_index - l;
        if (a < 0 || a >= n || b < 0 || b >= n) continue;
        const double nu = l * dx;
        acc += rho.rho(a, b) * std::exp(Complex(0.0, -2.0 * p * nu));
    }
    return acc.real() * dx / kPi;
}

RealField husimi_direct(const DensityMatrix& rho, double sigma) {
    const int n = rho.grid.n;
    const double dx = rho.grid.dx();
    const PhaseSpaceGrid grid = wigner_phase_space_grid(rho.grid);

    RealField out{grid, RealArray(n, n)};
    const double prefactor =
        dx * dx / (2.0 * kPi * std::sqrt(kPi * sigma * sigma));
    Eigen::VectorXd g(n);
    Eigen::VectorXcd diag_sum(2 * n - 1);
    for (int i = 0; i < n; ++i) {
        const double x0 = grid.gx.point(i);
        for (int a = 0; a < n; ++a) {
            const double u = rho.grid.point(a) - x0;
            g(a) = std::exp(-0.5 * u * u / (sigma * sigma));
        }
        diag_sum.setZero();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                diag_sum(b - a + n - 1) += g(a) * rho.rho(a, b) * g(b);
        for (int j = 0; j < n; ++j) {
            const double p0 = grid.gp.point(j);
            Complex acc = 0.0;
            for (int d = -(n - 1); d <= n - 1; ++d)
                acc += diag_sum(d + n - 1) * std::exp(Complex(0.0, p0 * d * dx));
            out.values(i, j) = prefactor * acc.real();
        }
    }
    return out;
}

double husimi_point_direct(const DensityMatrix& rho, double x0, double p0,
                           double sigma) {
    const int n = rho.grid.n;
    const double dx = rho.grid.dx();
    const double norm = std::pow(kPi * sigma * sigma, -0.25);
    Eigen::VectorXcd psi(n);
    for (int a = 0; a < n; ++a) {
        const double u = rho.grid.point(a) - x0;
        psi(a) = norm * std::exp(-0.5 * u * u / (sigma * sigma)) *
                 std::exp(Complex(0.0, p0 * u));
    }
    const Complex q = psi.adjoint() * (rho.rho * psi);
    return q.real() * dx * dx / (2.0 * kPi);
}

DensityMatrix povm_channel_direct(const DensityMatrix& rho, int m) {
    const int n = rho.grid.n;
    const double dx = rho.grid.dx();
    const double var = static_cast<double>(m);
    DensityMatrix out{rho.grid, Eigen::MatrixXcd::Zero(n, n)};
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            Complex acc = 0.0;
            for (int l = -n; l <= n; ++l) {
                const int aa = a + l, bb = b + l;
                if (aa < 0 || aa >= n || bb < 0 || bb >= n) continue;
                const double lambda = l * dx;
                acc += rho.rho(aa, bb) * std::exp(-0.5 * lambda * lambda / var);
            }
            const double v = (a - b) * dx;
            out.rho(a, b) = acc * dx / std::sqrt(2.0 * kPi * var) *
                            std::exp(-0.5 * m * v * v);
        }
    }
    return out;
}

Eigen::VectorXd gauss1d_convolve_direct(const Eigen::VectorXd& f, double dx,
                                        double var) {
    const int n = static_cast<int>(f.size());
    Eigen::VectorXd out(n);
    const Eigen::VectorXd k = gauss_kernel_samples(dx, var, 2 * n + 1, n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += f(j) * k(i - j + n);
        out(i) = acc * dx;
    }
    return out;
}

Complex momentum_amplitude(const WaveFunction& psi, double p) {
    Complex acc = 0.0;
    for (int a = 0; a < psi.grid.n; ++a)
        acc += psi.amp(a) * std::exp(Complex(0.0, -p * psi.grid.point(a)));
    return acc * psi.grid.dx() / std::sqrt(2.0 * kPi);
}

double min_eigenvalue(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        rho.rho * rho.grid.dx(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Grid1D default_grid() { return make_grid(256, 10.0); }

DensityMatrix vacuum_density(const Grid1D& g) {
    return density_from_pure(coherent_state(CoherentLabel{0.0, 0.0}, g));
}

DensityMatrix coherent_density(const Grid1D& g, double x0, double p0) {
    return density_from_pure(coherent_state(CoherentLabel{x0, p0}, g));
}

DensityMatrix position_cat_density(const Grid1D& g) {
    return density_from_pure(
        cat_state(CoherentLabel{3.0, 0.0}, CoherentLabel{-3.0, 0.0}, 0.0, g));
}

DensityMatrix momentum_cat_density(const Grid1D& g) {
    return density_from_pure(
        cat_state(CoherentLabel{0.0, 3.0}, CoherentLabel{0.0, -3.0}, 0.0, g));
}

StateMetrics stats_of(const DensityMatrix& rho) {
    return phase_space_stats(wigner_from_density(rho));
}

double linf(const RealArray& a, const RealArray& b) {
    return (a - b).abs().maxCoeff();
}

double linf(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace psdec::testing
