#pragma once

#include <complex>
#include <functional>
#include <string>

#include <Eigen/Core>

namespace psdec {

using Complex = std::complex<double>;

// Row-major: x is the slow axis, so values(i, j) samples (x_i, p_j) and the
// memory order matches the on-disk field format.
using RealArray = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexArray = Eigen::Array<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Uniform sample lattice x_i = x_min + i*dx, i = 0..n-1 (x_max excluded).
struct Grid1D {
    int n = 0;
    double x_min = 0.0;
    double x_max = 0.0;

    double dx() const { return (x_max - x_min) / n; }
    double point(int i) const { return x_min + i * dx(); }
    double half_width() const { return 0.5 * (x_max - x_min); }
    bool symmetric() const;
};

bool same_grid(const Grid1D& a, const Grid1D& b);

/// Symmetric grid on [-half_width, half_width) with n samples.
Grid1D make_grid(int n, double half_width);

/// Dual lattice with spacing 2*pi/(n*dx), centered at 0, n samples.
Grid1D fourier_dual(const Grid1D& g);

struct PhaseSpaceGrid {
    Grid1D gx;
    Grid1D gp;
};

bool same_grid(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b);

template <class Scalar>
struct Field2D {
    PhaseSpaceGrid grid;
    Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> values;
};

using RealField = Field2D<double>;
using ComplexField = Field2D<Complex>;

/// Grid quadrature of the field: sum * dx * dp.
double field_integral(const RealField& f);

/// Largest magnitude on the outermost rows/columns.
double boundary_magnitude(const RealArray& values);
double boundary_magnitude(const ComplexArray& values);

/// Convolution with the normalized Gaussian kernel of per-axis variances
/// (var_x, var_p), evaluated spectrally: multiply the Fourier transform by
/// exp(-var_x q^2/2 - var_p k^2/2). Variance 0 on an axis is the identity on
/// that axis. Periodic boundaries; the input must decay at the domain edge
/// (warned when the boundary magnitude exceeds 1e-10).
RealField gaussian_convolve(const RealField& f, double var_x, double var_p);
ComplexField gaussian_convolve(const ComplexField& f, double var_x, double var_p);

/// Same kernel applied to raw samples on the given grid.
void gaussian_convolve_in_place(const PhaseSpaceGrid& grid, ComplexArray& values,
                                double var_x, double var_p);

// Warning sink; defaults to stderr. A scenario run installs a collector so
// warnings land in the manifest.
void warn(const std::string& message);
void set_warning_sink(std::function<void(const std::string&)> sink);

}  // namespace psdec
