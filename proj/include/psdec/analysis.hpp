#pragma once

#include "psdec/transforms.hpp"

namespace psdec {

struct StateMetrics {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
    double negativity_volume = 0.0;  // integral of (|W| - W)/2
    double purity = 0.0;             // 2 pi integral of W^2
    double min_wigner = 0.0;
    double trace = 0.0;
    double l2_norm = 0.0;
};

StateMetrics phase_space_stats(const WignerFunction& w);

struct FieldDistance {
    double l2 = 0.0;
    double linf = 0.0;
};

FieldDistance compare_fields(const RealField& a, const RealField& b);
FieldDistance compare_fields(const WignerFunction& a, const WignerFunction& b);

inline RealField as_field(const WignerFunction& w) { return RealField{w.grid, w.w}; }
inline RealField as_field(const HusimiFunction& q) { return RealField{q.grid, q.q}; }

}  // namespace psdec
