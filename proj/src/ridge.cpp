#include "swim/ridge.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace swim {

namespace {
using EMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EMap = Eigen::Map<const EMatrix>;
}  // namespace

RidgeSolution solve_ridge(const Matrix& a, const Matrix& b, double lambda,
                          bool include_bias) {
    if (a.rows() == 0) throw Error("solve_ridge: design matrix has no rows");
    if (a.rows() != b.rows()) {
        throw Error("solve_ridge: row counts disagree: design " + a.shape_str() +
                    " vs targets " + b.shape_str());
    }
    if (lambda < 0.0) throw Error("solve_ridge: lambda must be nonnegative");
    a.require_finite("solve_ridge design");
    b.require_finite("solve_ridge targets");

    const Eigen::Index m = static_cast<Eigen::Index>(a.rows());
    const Eigen::Index k = static_cast<Eigen::Index>(a.cols());
    const Eigen::Index o = static_cast<Eigen::Index>(b.cols());
    const Eigen::Index n = include_bias ? k + 1 : k;

    EMap amap(a.data(), m, k);
    EMap bmap(b.data(), m, o);

    Eigen::MatrixXd design(m, n);
    design.leftCols(k) = amap;
    if (include_bias) design.col(k).setOnes();

    Eigen::MatrixXd theta;
    if (lambda == 0.0) {
        theta = design.completeOrthogonalDecomposition().solve(bmap);
    } else if (n > m) {
        // Wide case: the ridge solution in dual form,
        // Theta = D^T (D D^T + lambda I)^-1 B, costs O(m^2 n) instead of O(n^2 m).
        Eigen::MatrixXd gram = design * design.transpose();
        gram.diagonal().array() += lambda;
        theta = design.transpose() * gram.llt().solve(Eigen::MatrixXd(bmap));
    } else {
        // Row-augmented system [design; sqrt(lambda) I] has full column rank,
        // so plain Householder QR is enough.
        Eigen::MatrixXd stacked(m + n, n);
        stacked.topRows(m) = design;
        stacked.bottomRows(n) = std::sqrt(lambda) * Eigen::MatrixXd::Identity(n, n);
        Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m + n, o);
        rhs.topRows(m) = bmap;
        theta = stacked.householderQr().solve(rhs);
    }

    RidgeSolution sol;
    sol.weights = Matrix::uninitialized(static_cast<std::size_t>(k),
                                        static_cast<std::size_t>(o));
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < o; ++j)
            sol.weights(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                theta(i, j);

    sol.bias.assign(static_cast<std::size_t>(o), 0.0);
    if (include_bias) {
        for (Eigen::Index j = 0; j < o; ++j)
            sol.bias[static_cast<std::size_t>(j)] = -theta(k, j);
    }

    sol.residual_norm = (design * theta - bmap).norm();
    if (!std::isfinite(sol.residual_norm))
        throw Error("solve_ridge: solve produced non-finite values");
    return sol;
}

}  // namespace swim
