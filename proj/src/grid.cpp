#include "psdec/grid.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "psdec/fft.hpp"

namespace psdec {

namespace {

std::function<void(const std::string&)>& warning_sink() {
    static std::function<void(const std::string&)> sink;
    return sink;
}

void check_finite(const ComplexArray& values) {
    if (!values.isFinite().all())
        throw std::domain_error("field contains non-finite samples");
}

void check_finite(const RealArray& values) {
    if (!values.isFinite().all())
        throw std::domain_error("field contains non-finite samples");
}

}  // namespace

void warn(const std::string& message) {
    if (auto& sink = warning_sink(); sink)
        sink(message);
    else
        std::cerr << "warning: " << message << "\n";
}

void set_warning_sink(std::function<void(const std::string&)> sink) {
    warning_sink() = std::move(sink);
}

bool Grid1D::symmetric() const {
    return std::abs(x_min + x_max) <= 1e-12 * std::max(1.0, std::abs(x_max));
}

bool same_grid(const Grid1D& a, const Grid1D& b) {
    const double tol = 1e-12 * std::max(1.0, std::abs(a.x_max - a.x_min));
    return a.n == b.n && std::abs(a.x_min - b.x_min) <= tol &&
           std::abs(a.x_max - b.x_max) <= tol;
}

bool same_grid(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
    return same_grid(a.gx, b.gx) && same_grid(a.gp, b.gp);
}

Grid1D make_grid(int n, double half_width) {
    if (n < 8) throw std::invalid_argument("grid needs at least 8 samples");
    if (!(half_width > 0.0))
        throw std::invalid_argument("grid half_width must be positive");
    return Grid1D{n, -half_width, half_width};
}

Grid1D fourier_dual(const Grid1D& g) {
    const double dw = 2.0 * std::numbers::pi / (g.n * g.dx());
    const double half = 0.5 * g.n * dw;
    return Grid1D{g.n, -half, half};
}

double field_integral(const RealField& f) {
    return f.values.sum() * f.grid.gx.dx() * f.grid.gp.dx();
}

double boundary_magnitude(const RealArray& values) {
    const Eigen::Index nx = values.rows(), np = values.cols();
    double m = values.row(0).abs().maxCoeff();
    m = std::max(m, values.row(nx - 1).abs().maxCoeff());
    m = std::max(m, values.col(0).abs().maxCoeff());
    return std::max(m, values.col(np - 1).abs().maxCoeff());
}

double boundary_magnitude(const ComplexArray& values) {
    const Eigen::Index nx = values.rows(), np = values.cols();
    double m = values.row(0).abs().maxCoeff();
    m = std::max(m, values.row(nx - 1).abs().maxCoeff());
    m = std::max(m, values.col(0).abs().maxCoeff());
    return std::max(m, values.col(np - 1).abs().maxCoeff());
}

void gaussian_convolve_in_place(const PhaseSpaceGrid& grid, ComplexArray& values,
                                double var_x, double var_p) {
    if (var_x < 0.0 || var_p < 0.0)
        throw std::invalid_argument("gaussian_convolve: variance must be >= 0");
    check_finite(values);
    if (var_x == 0.0 && var_p == 0.0) return;

    if (const double b = boundary_magnitude(values); b > 1e-10)
        warn("gaussian_convolve: field magnitude " + std::to_string(b) +
             " at the domain boundary exceeds 1e-10; periodic wrap error may "
             "be significant");

    const int nx = grid.gx.n, np = grid.gp.n;
    const double dx = grid.gx.dx(), dp = grid.gp.dx();

    fft::transform_2d(values, fft::kForward);
    Eigen::ArrayXd mul_x(nx), mul_p(np);
    for (int i = 0; i < nx; ++i) {
        const double q = fft::natural_frequency(i, nx, dx);
        mul_x(i) = std::exp(-0.5 * var_x * q * q);
    }
    for (int j = 0; j < np; ++j) {
        const double k = fft::natural_frequency(j, np, dp);
        mul_p(j) = std::exp(-0.5 * var_p * k * k);
    }
    const double scale = 1.0 / (static_cast<double>(nx) * np);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < np; ++j) values(i, j) *= mul_x(i) * mul_p(j) * scale;
    fft::transform_2d(values, fft::kBackward);
}

RealField gaussian_convolve(const RealField& f, double var_x, double var_p) {
    check_finite(f.values);
    ComplexArray work = f.values.cast<Complex>();
    gaussian_convolve_in_place(f.grid, work, var_x, var_p);
    return RealField{f.grid, work.real()};
}

ComplexField gaussian_convolve(const ComplexField& f, double var_x, double var_p) {
    ComplexArray work = f.values;
    gaussian_convolve_in_place(f.grid, work, var_x, var_p);
    return ComplexField{f.grid, std::move(work)};
}

}  // namespace psdec
