#pragma once

#include <cstddef>

#include "swim/activation.hpp"
#include "swim/matrix.hpp"

namespace swim::kernels {

/// Execution policy for the data-parallel kernels. Parallel variants split
/// work by output row only; per-element accumulation order is identical to
/// the serial reference, so both policies produce bitwise-equal results.
enum class Exec { Serial, Parallel };

/// Number of OpenMP threads used by Exec::Parallel (0 = library default).
void set_threads(int n);
int max_threads();

/// C = A * B. Throws on inner-dimension mismatch, reporting both shapes.
Matrix matmul(const Matrix& a, const Matrix& b, Exec exec = Exec::Parallel);

/// C = A * B^T (row-by-row dot products).
Matrix matmul_nt(const Matrix& a, const Matrix& b, Exec exec = Exec::Parallel);

/// One hidden layer: phi(X * W^T - b), with phi applied elementwise.
/// W is (neurons x inputs), b has one entry per neuron.
Matrix layer_forward(const Matrix& x, const Matrix& w, const std::vector<double>& b,
                     const Activation& act, Exec exec = Exec::Parallel);

/// Affine output map: X * W^T - b (no activation).
Matrix output_forward(const Matrix& x, const Matrix& w, const std::vector<double>& b,
                      Exec exec = Exec::Parallel);

}  // namespace swim::kernels
