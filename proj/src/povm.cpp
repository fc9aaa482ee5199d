#include "psdec/povm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "psdec/fft.hpp"
#include "psdec/parallel.hpp"

namespace psdec {

namespace {

// Fraction of the cell centered on sample i that lies inside [lo, hi].
double cell_weight(const Grid1D& g, int i, double lo, double hi) {
    const double half = 0.5 * g.dx();
    const double c = g.point(i);
    const double overlap = std::min(c + half, hi) - std::max(c - half, lo);
    return std::clamp(overlap / g.dx(), 0.0, 1.0);
}

// The diagonal average is a zero-padded linear convolution, so the margin
// contract reduces to the state vanishing at the matrix edge.
void check_state_inside(const DensityMatrix& rho, double tol) {
    if (boundary_magnitude(ComplexArray(rho.rho.array())) > tol)
        throw std::invalid_argument(
            "povm_channel: state does not vanish at the grid boundary; the "
            "diagonal averaging would truncate");
}

}  // namespace

double povm_probability(const DensityMatrix& rho, const PhaseSpaceRegion& region) {
    if (!(region.x_lo < region.x_hi) || !(region.p_lo < region.p_hi))
        throw std::invalid_argument("povm_probability: empty region");

    const HusimiFunction q = husimi_from_density(rho);
    const Grid1D& gx = q.grid.gx;
    const Grid1D& gp = q.grid.gp;
    if (region.x_hi <= gx.x_min - 0.5 * gx.dx() ||
        region.x_lo >= gx.x_max - 0.5 * gx.dx() ||
        region.p_hi <= gp.x_min - 0.5 * gp.dx() ||
        region.p_lo >= gp.x_max - 0.5 * gp.dx())
        throw std::invalid_argument("povm_probability: region outside the grid");

    Eigen::VectorXd wx(gx.n), wp(gp.n);
    for (int i = 0; i < gx.n; ++i) wx(i) = cell_weight(gx, i, region.x_lo, region.x_hi);
    for (int j = 0; j < gp.n; ++j) wp(j) = cell_weight(gp, j, region.p_lo, region.p_hi);

    double sum = 0.0;
    for (int i = 0; i < gx.n; ++i) {
        if (wx(i) == 0.0) continue;
        double row = 0.0;
        for (int j = 0; j < gp.n; ++j) row += q.q(i, j) * wp(j);
        sum += wx(i) * row;
    }
    return sum * gx.dx() * gp.dx();
}

DensityMatrix povm_channel(const DensityMatrix& rho, int m, double sigma) {
    if (m < 1) throw std::invalid_argument("povm_channel: m must be >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("povm_channel: sigma must be positive");
    if (!rho.rho.array().isFinite().all())
        throw std::domain_error("povm_channel: non-finite density matrix");
    check_state_inside(rho, 1e-6);

    const int n = rho.grid.n;
    const double dx = rho.grid.dx();
    const double var = m * sigma * sigma;  // diagonal averaging variance

    // Sampled Gaussian kernel, renormalized so the discrete average is
    // exactly trace-preserving for interior content.
    const int half_support = static_cast<int>(std::ceil(10.0 * std::sqrt(var) / dx));
    const int klen = 2 * half_support + 1;
    Eigen::VectorXd kernel(klen);
    for (int t = 0; t < klen; ++t) {
        const double u = (t - half_support) * dx;
        kernel(t) = std::exp(-0.5 * u * u / var);
    }
    kernel /= kernel.sum() * dx;

    const int padded = n + klen;
    Eigen::VectorXcd kernel_hat = Eigen::VectorXcd::Zero(padded);
    kernel_hat.head(klen) = kernel.cast<Complex>();
    fft::transform_vector(kernel_hat, fft::kForward);

    DensityMatrix out{rho.grid, Eigen::MatrixXcd(n, n)};
    parallel_for(n, [&](int d) {
        Eigen::VectorXcd buf = Eigen::VectorXcd::Zero(padded);
        const int len = n - d;
        for (int t = 0; t < len; ++t) buf(t) = rho.rho(t + d, t);
        fft::transform_vector(buf, fft::kForward);
        buf.array() *= kernel_hat.array();
        fft::transform_vector(buf, fft::kBackward);
        const double v = d * dx;
        const double damp =
            std::exp(-0.5 * m * v * v / (sigma * sigma)) * dx / padded;
        for (int t = 0; t < len; ++t) {
            const Complex val = buf(t + half_support) * damp;
            out.rho(t + d, t) = val;
            out.rho(t, t + d) = std::conj(val);
        }
    });
    return out;
}

WignerFunction povm_smooth_wigner(const WignerFunction& w, double m, double sigma) {
    if (!(m > 0.0)) throw std::invalid_argument("povm_smooth_wigner: m must be positive");
    if (!(sigma > 0.0))
        throw std::invalid_argument("povm_smooth_wigner: sigma must be positive");
    const double s2 = sigma * sigma;
    RealField smoothed = gaussian_convolve(RealField{w.grid, w.w}, m * s2, m / s2);
    return WignerFunction{w.grid, std::move(smoothed.values)};
}

PovmSampler::PovmSampler(const DensityMatrix& rho, std::uint64_t seed)
    : grid_(rho.grid), rng_state_(seed) {
    const HusimiFunction q = husimi_from_density(rho);
    ps_grid_ = q.grid;
    cdf_.resize(static_cast<std::size_t>(q.q.rows()) * q.q.cols());
    double running = 0.0;
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < q.q.rows(); ++i)
        for (Eigen::Index j = 0; j < q.q.cols(); ++j) {
            running += std::max(q.q(i, j), 0.0);
            cdf_[k++] = running;
        }
    if (!(running > 0.0))
        throw std::domain_error("PovmSampler: Husimi density has no mass");
}

double PovmSampler::next_uniform() {
    // splitmix64; fixed output stream regardless of platform.
    rng_state_ += 0x9E3779B97f4A7C15ULL;
    std::uint64_t z = rng_state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

CoherentLabel PovmSampler::next() {
    const int np = ps_grid_.gp.n;
    const double target = next_uniform() * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    const std::size_t k = std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
    const double prev = k == 0 ? 0.0 : cdf_[k - 1];
    const double frac = (target - prev) / (cdf_[k] - prev);

    const int i = static_cast<int>(k) / np;
    const int j = static_cast<int>(k) % np;
    const double p = ps_grid_.gp.point(j) + (frac - 0.5) * ps_grid_.gp.dx();
    const double x = ps_grid_.gx.point(i) + (next_uniform() - 0.5) * ps_grid_.gx.dx();
    return CoherentLabel{x, p};
}

MeasurementRecord sample_povm_outcome(const DensityMatrix& rho, std::uint64_t seed) {
    PovmSampler sampler(rho, seed);
    const double margin = 5.0 * rho.grid.dx() + 5.0;
    CoherentLabel label = sampler.next();
    for (int attempt = 0; attempt < 128; ++attempt) {
        if (label.x0 - rho.grid.x_min >= margin && rho.grid.x_max - label.x0 >= margin)
            break;
        label = sampler.next();
    }
    return MeasurementRecord{label, density_from_pure(coherent_state(label, rho.grid))};
}

}  // namespace psdec
