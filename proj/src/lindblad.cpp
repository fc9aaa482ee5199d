#include "psdec/lindblad.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "psdec/fft.hpp"

namespace psdec {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonneg(double value, const char* what) {
    if (!(value >= 0.0)) throw std::invalid_argument(std::string(what) + " must be >= 0");
}

void check_wigner_boundary(const WignerFunction& w, const char* who) {
    const double b = boundary_magnitude(w.w);
    if (b > 1e-6)
        throw std::invalid_argument(std::string(who) +
                                    ": state magnitude at the grid boundary is " +
                                    std::to_string(b) + "; margin violated");
}

// Substitution W'(x,p) = W(x + a p, p) via a per-column spectral shift.
void shear_x(const PhaseSpaceGrid& g, ComplexArray& vals, double a) {
    if (a == 0.0) return;
    const int nx = g.gx.n, np = g.gp.n;
    const double dx = g.gx.dx();
    fft::transform_cols(vals, fft::kForward);
    for (int i = 0; i < nx; ++i) {
        const double q = fft::natural_frequency(i, nx, dx);
        for (int j = 0; j < np; ++j)
            vals(i, j) *= std::exp(Complex(0.0, q * a * g.gp.point(j))) /
                          static_cast<double>(nx);
    }
    fft::transform_cols(vals, fft::kBackward);
}

// Substitution W'(x,p) = W(x, p + b x) via a per-row spectral shift.
void shear_p(const PhaseSpaceGrid& g, ComplexArray& vals, double b) {
    if (b == 0.0) return;
    const int nx = g.gx.n, np = g.gp.n;
    const double dp = g.gp.dx();
    fft::transform_rows(vals, fft::kForward);
    for (int i = 0; i < nx; ++i) {
        const double x = g.gx.point(i);
        for (int j = 0; j < np; ++j) {
            const double k = fft::natural_frequency(j, np, dp);
            vals(i, j) *= std::exp(Complex(0.0, k * b * x)) / static_cast<double>(np);
        }
    }
    fft::transform_rows(vals, fft::kBackward);
}

// Advection by the inverse harmonic flow over angle theta = omega t:
// (x,p) -> (x cos - p sin/(m w), p cos + m w x sin), factored into three
// shears; angles above pi/2 are split into equal sub-rotations.
void rotate_in_place(const PhaseSpaceGrid& g, RealArray& w, double theta,
                     double momega) {
    if (theta == 0.0) return;
    const int parts = std::max(1, static_cast<int>(std::ceil(std::abs(theta) / (0.5 * kPi))));
    const double sub = theta / parts;
    const double a = -std::tan(0.5 * sub) / momega;
    const double b = momega * std::sin(sub);

    ComplexArray vals = w.cast<Complex>();
    for (int k = 0; k < parts; ++k) {
        shear_x(g, vals, a);
        shear_p(g, vals, b);
        shear_x(g, vals, a);
    }
    w = vals.real();
}

WignerFunction position_damp_wigner(const WignerFunction& w0, double var_p) {
    // Eq. of motion for position monitoring in phase space is pure momentum
    // diffusion: convolve along p only.
    RealField out = gaussian_convolve(RealField{w0.grid, w0.w}, 0.0, var_p);
    return WignerFunction{w0.grid, std::move(out.values)};
}

WignerFunction evolve_composed_once(const WignerFunction& w0,
                                    const EvolutionSpec& spec, int n_steps) {
    const double t = spec.t;
    if (t == 0.0) return w0;

    if (spec.omega == 0.0) {
        if (spec.mode == DecoherenceMode::phase_space)
            return evolve_phase_space_lindblad(w0, spec.gamma, t, spec.sigma);
        return position_damp_wigner(w0, spec.gamma * t);
    }

    if (spec.mode == DecoherenceMode::phase_space && spec.sigma == 1.0) {
        WignerFunction w = evolve_harmonic_rotation(w0, spec.omega, spec.mass, t);
        return evolve_phase_space_lindblad(w, spec.gamma, t, 1.0);
    }

    // Strang splitting; consecutive half-rotations are merged.
    const double dt = t / n_steps;
    const double momega = spec.mass * spec.omega;
    const double s2 = spec.sigma * spec.sigma;
    WignerFunction w = w0;
    rotate_in_place(w.grid, w.w, 0.5 * spec.omega * dt, momega);
    for (int k = 0; k < n_steps; ++k) {
        if (spec.mode == DecoherenceMode::phase_space)
            w.w = gaussian_convolve(RealField{w.grid, w.w}, spec.gamma * dt * s2,
                                    spec.gamma * dt / s2)
                      .values;
        else
            w = position_damp_wigner(w, spec.gamma * dt);
        rotate_in_place(w.grid, w.w,
                        (k + 1 < n_steps ? 1.0 : 0.5) * spec.omega * dt, momega);
    }
    return w;
}

}  // namespace

DensityMatrix evolve_position_lindblad(const DensityMatrix& rho0, double gamma,
                                       double t) {
    require_nonneg(gamma, "gamma");
    require_nonneg(t, "t");
    const int n = rho0.grid.n;
    DensityMatrix out{rho0.grid, Eigen::MatrixXcd(n, n)};
    for (int b = 0; b < n; ++b) {
        const double xb = rho0.grid.point(b);
        for (int a = 0; a < n; ++a) {
            const double v = rho0.grid.point(a) - xb;
            out.rho(a, b) = rho0.rho(a, b) * std::exp(-0.5 * gamma * t * v * v);
        }
    }
    return out;
}

WignerFunction evolve_phase_space_lindblad(const WignerFunction& w0, double gamma,
                                           double t, double sigma) {
    require_nonneg(gamma, "gamma");
    require_nonneg(t, "t");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (gamma * t == 0.0) return w0;
    check_wigner_boundary(w0, "evolve_phase_space_lindblad");
    const double s2 = sigma * sigma;
    RealField out = gaussian_convolve(RealField{w0.grid, w0.w}, gamma * t * s2,
                                      gamma * t / s2);
    return WignerFunction{w0.grid, std::move(out.values)};
}

WignerFunction evolve_harmonic_rotation(const WignerFunction& w0, double omega,
                                        double mass, double t) {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    check_wigner_boundary(w0, "evolve_harmonic_rotation");
    WignerFunction w = w0;
    rotate_in_place(w.grid, w.w, omega * t, mass * omega);
    if (const double b = boundary_magnitude(w.w); b > 1e-6)
        throw std::domain_error(
            "evolve_harmonic_rotation: rotated state reaches the grid boundary "
            "(magnitude " + std::to_string(b) + ")");
    return w;
}

WignerFunction evolve_composed(const WignerFunction& w0, const EvolutionSpec& spec) {
    require_nonneg(spec.gamma, "gamma");
    require_nonneg(spec.omega, "omega");
    require_nonneg(spec.t, "t");
    if (!(spec.mass > 0.0)) throw std::invalid_argument("mass must be positive");
    if (spec.n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
    if (spec.t > 0.0) check_wigner_boundary(w0, "evolve_composed");

    WignerFunction w = evolve_composed_once(w0, spec, spec.n_steps);
    if (spec.verify_steps && spec.omega > 0.0 &&
        !(spec.mode == DecoherenceMode::phase_space && spec.sigma == 1.0)) {
        const WignerFunction check = evolve_composed_once(w0, spec, 2 * spec.n_steps);
        const double linf = (w.w - check.w).abs().maxCoeff();
        if (linf > 1e-4)
            throw std::domain_error(
                "evolve_composed: n_steps too small; halving the step changes "
                "the result by " + std::to_string(linf));
    }
    return w;
}

double default_oracle_dt(const EvolutionSpec& spec, const Grid1D& grid) {
    const double scale = spec.gamma * grid.x_max * grid.x_max;
    double dt = 0.001;
    if (scale > 0.0) dt = std::min(dt, 0.1 / scale);
    return dt;
}

namespace {

class MasterIntegrator {
public:
    MasterIntegrator(const Grid1D& grid, const EvolutionSpec& spec)
        : grid_(grid), spec_(spec), n_(grid.n) {
        damp_ = Eigen::MatrixXd(n_, n_);
        for (int b = 0; b < n_; ++b)
            for (int a = 0; a < n_; ++a) {
                const double v = grid.point(a) - grid.point(b);
                damp_(a, b) = -0.5 * spec.gamma * v * v;
            }
        k_ = Eigen::VectorXd(n_);
        for (int a = 0; a < n_; ++a)
            k_(a) = fft::natural_frequency(a, n_, grid.dx());
        potential_ = Eigen::VectorXd(n_);
        for (int a = 0; a < n_; ++a) {
            const double x = grid.point(a);
            potential_(a) = 0.5 * spec.mass * spec.omega * spec.omega * x * x;
        }
        needs_spectral_ = (spec.mode == DecoherenceMode::phase_space &&
                           spec.gamma > 0.0) || spec.omega > 0.0;
    }

    // Lindblad right-hand side; relies on rho being Hermitian so that every
    // right multiplication is the adjoint of a left one.
    Eigen::MatrixXcd rhs(const Eigen::MatrixXcd& rho) const {
        Eigen::MatrixXcd out = damp_.cast<Complex>().cwiseProduct(rho);
        if (!needs_spectral_) return out;

        Eigen::MatrixXcd freq = rho;
        fft::transform_matrix_cols(freq, fft::kForward);

        if (spec_.mode == DecoherenceMode::phase_space && spec_.gamma > 0.0) {
            Eigen::MatrixXcd p_rho = scaled_inverse(freq, k_);
            Eigen::MatrixXcd p2_rho = scaled_inverse(freq, k_.array().square());
            Eigen::MatrixXcd rho_p = p_rho.adjoint();
            fft::transform_matrix_cols(rho_p, fft::kForward);
            Eigen::MatrixXcd p_rho_p = scaled_inverse(rho_p, k_);
            out += spec_.gamma *
                   (p_rho_p - 0.5 * (p2_rho + p2_rho.adjoint())).eval();
        }
        if (spec_.omega > 0.0) {
            Eigen::MatrixXcd h_rho =
                scaled_inverse(freq, k_.array().square() / (2.0 * spec_.mass));
            h_rho += potential_.asDiagonal() * rho;
            out += Complex(0.0, -1.0) * (h_rho - h_rho.adjoint()).eval();
        }
        return out;
    }

private:
    template <class Diag>
    Eigen::MatrixXcd scaled_inverse(const Eigen::MatrixXcd& freq,
                                    const Diag& diag) const {
        Eigen::MatrixXcd out = freq;
        for (int a = 0; a < n_; ++a) out.row(a) *= diag(a) / static_cast<double>(n_);
        fft::transform_matrix_cols(out, fft::kBackward);
        return out;
    }

    Grid1D grid_;
    EvolutionSpec spec_;
    int n_;
    Eigen::MatrixXd damp_;
    Eigen::VectorXd k_;
    Eigen::VectorXd potential_;
    bool needs_spectral_ = false;
};

}  // namespace

DensityMatrix evolve_master_oracle(const DensityMatrix& rho0,
                                   const EvolutionSpec& spec, double dt) {
    require_nonneg(spec.gamma, "gamma");
    require_nonneg(spec.omega, "omega");
    require_nonneg(spec.t, "t");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(spec.mass > 0.0)) throw std::invalid_argument("mass must be positive");
    if (hermiticity_defect(rho0) > 1e-10)
        throw std::invalid_argument("evolve_master_oracle: input not Hermitian");
    if (spec.t == 0.0) return rho0;

    const MasterIntegrator integrator(rho0.grid, spec);
    const double dx = rho0.grid.dx();
    const double trace0 = trace(rho0);

    long steps = static_cast<long>(std::ceil(spec.t / dt));
    std::string diagnostics;
    for (int attempt = 0; attempt < 7; ++attempt) {
        const double step = spec.t / steps;
        Eigen::MatrixXcd rho = 0.5 * (rho0.rho + rho0.rho.adjoint());
        bool ok = true;
        for (long s = 0; s < steps; ++s) {
            const Eigen::MatrixXcd k1 = integrator.rhs(rho);
            const Eigen::MatrixXcd k2 = integrator.rhs(rho + (0.5 * step) * k1);
            const Eigen::MatrixXcd k3 = integrator.rhs(rho + (0.5 * step) * k2);
            const Eigen::MatrixXcd k4 = integrator.rhs(rho + step * k3);
            rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if ((s & 31) == 31 || s + 1 == steps) {
                const double tr = rho.diagonal().sum().real() * dx;
                if (!std::isfinite(tr) || std::abs(tr - trace0) > 1e-6) {
                    std::ostringstream msg;
                    msg << "trace drift " << tr - trace0 << " after step " << s + 1
                        << " of " << steps << " (dt=" << step << ")";
                    diagnostics = msg.str();
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            const double drift = std::abs(rho.diagonal().sum().real() * dx - trace0);
            if (drift < 1e-8)
                return DensityMatrix{rho0.grid, 0.5 * (rho + rho.adjoint())};
            diagnostics = "final trace drift " + std::to_string(drift);
        }
        steps *= 2;
    }
    throw std::runtime_error("evolve_master_oracle: unstable integration; " +
                             diagnostics);
}

}  // namespace psdec
