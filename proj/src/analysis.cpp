#include "psdec/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psdec {

StateMetrics phase_space_stats(const WignerFunction& w) {
    const Grid1D& gx = w.grid.gx;
    const Grid1D& gp = w.grid.gp;
    const double area = gx.dx() * gp.dx();

    StateMetrics m;
    m.trace = w.w.sum() * area;
    m.min_wigner = w.w.minCoeff();
    m.negativity_volume = 0.5 * (w.w.abs() - w.w).sum() * area;
    const double w2 = w.w.square().sum() * area;
    m.purity = 2.0 * std::numbers::pi * w2;
    m.l2_norm = std::sqrt(w2);

    double sx = 0.0, sp = 0.0, sxx = 0.0, spp = 0.0;
    for (int i = 0; i < gx.n; ++i) {
        const double x = gx.point(i);
        double row = 0.0, row_p = 0.0, row_pp = 0.0;
        for (int j = 0; j < gp.n; ++j) {
            const double v = w.w(i, j);
            const double p = gp.point(j);
            row += v;
            row_p += v * p;
            row_pp += v * p * p;
        }
        sx += x * row;
        sxx += x * x * row;
        sp += row_p;
        spp += row_pp;
    }
    const double norm = m.trace != 0.0 ? m.trace : 1.0;
    m.mean_x = sx * area / norm;
    m.mean_p = sp * area / norm;
    m.var_x = sxx * area / norm - m.mean_x * m.mean_x;
    m.var_p = spp * area / norm - m.mean_p * m.mean_p;
    return m;
}

FieldDistance compare_fields(const RealField& a, const RealField& b) {
    if (!same_grid(a.grid, b.grid))
        throw std::invalid_argument("compare_fields: grid mismatch");
    const RealArray diff = a.values - b.values;
    FieldDistance d;
    d.linf = diff.abs().maxCoeff();
    d.l2 = std::sqrt(diff.square().sum() * a.grid.gx.dx() * a.grid.gp.dx());
    return d;
}

FieldDistance compare_fields(const WignerFunction& a, const WignerFunction& b) {
    return compare_fields(as_field(a), as_field(b));
}

}  // namespace psdec
