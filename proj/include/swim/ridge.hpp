#pragma once

#include <vector>

#include "swim/matrix.hpp"

namespace swim {

/// Solution of the regularized output-layer problem. The model convention is
/// y = A * weights - bias (one bias per output column), so bias stores the
/// negated intercept of the joint least-squares fit.
struct RidgeSolution {
    Matrix weights;            // features x outputs
    std::vector<double> bias;  // one per output
    double residual_norm = 0.0;
};

/// Minimize ||[A|1] * Theta - B||_F^2 + lambda * ||Theta||_F^2 over Theta,
/// then split Theta into weights and (negated) bias. lambda = 0 is solved by
/// a complete orthogonal decomposition and yields the minimum-norm solution
/// for rank-deficient designs; lambda > 0 is solved by a QR factorization of
/// the row-augmented system, or in dual form when there are more columns
/// than rows. residual_norm is the Frobenius norm of [A|1] * Theta - B.
///
/// include_bias = false skips the appended ones column (test hook).
RidgeSolution solve_ridge(const Matrix& a, const Matrix& b, double lambda,
                          bool include_bias = true);

}  // namespace swim
