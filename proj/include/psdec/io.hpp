#pragma once

#include <string>
#include <variant>

#include "psdec/analysis.hpp"
#include "psdec/states.hpp"
#include "psdec/transforms.hpp"

namespace psdec::io {

// Shared field format: two comment lines
//   # nx,np,x_min,x_max,p_min,p_max
//   # <values>
// followed by nx*np rows "x,p,value" (or "x,p,re,im"), row-major with x slow.
void write_field_csv(const std::string& path, const RealField& f);
void write_field_csv(const std::string& path, const ComplexField& f);
RealField read_real_field_csv(const std::string& path);
ComplexField read_complex_field_csv(const std::string& path);
std::variant<RealField, ComplexField> read_field_csv(const std::string& path);

// Wave functions use "# n,x_min,x_max" and rows "x,re,im".
void write_wavefunction_csv(const std::string& path, const WaveFunction& psi);
WaveFunction read_wavefunction_csv(const std::string& path);

// Density matrices are the complex field format with axes (x, y).
void write_density_csv(const std::string& path, const DensityMatrix& rho);
DensityMatrix read_density_csv(const std::string& path);

void write_wigner_csv(const std::string& path, const WignerFunction& w);
WignerFunction read_wigner_csv(const std::string& path);

std::string metrics_json(const StateMetrics& m);
void write_metrics_json(const std::string& path, const StateMetrics& m);

}  // namespace psdec::io
