#pragma once

#include <Eigen/Core>

#include "psdec/grid.hpp"

// Thin batched wrappers over FFTW. Plans are cached per shape and created
// with FFTW_ESTIMATE | FFTW_UNALIGNED, so execution on caller arrays is
// deterministic and alignment-agnostic. All transforms are unnormalized
// c2c; callers divide by n where needed.
namespace psdec::fft {

inline constexpr int kForward = -1;
inline constexpr int kBackward = +1;

/// In-place DFT of every row (the contiguous p axis of a row-major field).
void transform_rows(ComplexArray& a, int sign);

/// In-place DFT of every column (the x axis).
void transform_cols(ComplexArray& a, int sign);

/// In-place 2D DFT (rows then columns).
void transform_2d(ComplexArray& a, int sign);

/// In-place DFT of a contiguous vector.
void transform_vector(Eigen::Ref<Eigen::VectorXcd> v, int sign);

/// In-place DFT of every column of a column-major matrix (density matrices).
void transform_matrix_cols(Eigen::MatrixXcd& m, int sign);

/// Frequency sample j of an n-point DFT in FFTW's natural order, in units of
/// 2*pi/(n*dx): j for j < n/2, j-n otherwise.
double natural_frequency(int j, int n, double dx);

// Centered DFT: X_k = sum_j f_j exp(sign*i*w_k*x_j) with x_j = (j-n/2)*dx and
// w_k = (k-n/2)*dw, dw*dx = 2*pi/n. Implemented as parity phases around the
// raw DFT. Unnormalized like the raw transforms.
void centered_transform_rows(ComplexArray& a, int sign);
void centered_transform_cols(ComplexArray& a, int sign);
void centered_transform_2d(ComplexArray& a, int sign);

}  // namespace psdec::fft
