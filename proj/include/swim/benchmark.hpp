#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swim/baseline.hpp"
#include "swim/sampler.hpp"

namespace swim {

/// One benchmark result. metric is "rel_l2_error", "accuracy", or a timing
/// label; data_digest identifies the train/test data a row was computed on
/// (rows of one seed share it across methods).
struct ExperimentRow {
    std::string method;
    std::size_t depth = 0;
    std::size_t width = 0;
    std::uint64_t seed = 0;
    std::string metric;
    double value = 0.0;
    double fit_seconds = 0.0;
    bool failed = false;
    std::string error;
    std::uint64_t data_digest = 0;
};

/// Width/depth study on the closed-form regression target below.
struct BarronSpec {
    std::size_t dim = 5;
    std::size_t train_points = 10000;
    std::size_t test_points = 10000;
    std::vector<std::size_t> widths;
    std::vector<std::size_t> depths{1};
    Activation activation = Activation::sine();
    std::vector<std::uint64_t> seeds{1, 2, 3};
    double ridge_lambda = 1e-10;
    double epsilon = 1e-6;
};

/// f(x) = sqrt(3/2) * (||x - a|| - ||x + a||) with a_j = 2j/D - 1. Odd,
/// vanishes at the origin, and has unit Barron norm in every dimension.
std::vector<double> barron_target(const Matrix& x);

/// sqrt( sum (pred - truth)^2 / sum truth^2 ). Rejects zero-norm truth.
double relative_l2_error(const std::vector<double>& pred, const std::vector<double>& truth);

/// M x D matrix of points uniform on [-1, 1]^D.
Matrix uniform_cube(std::size_t m, std::size_t d, Rng& rng);

/// FNV-1a over the raw matrix bytes; used to assert shared train/test data.
std::uint64_t matrix_digest(const Matrix& m);

/// Train/test data for one seed of the width/depth study. run_barron uses
/// exactly this, so rows of both methods within a seed see identical data.
void barron_data(const BarronSpec& spec, std::uint64_t seed, Matrix& train_x,
                 std::vector<double>& train_y, Matrix& test_x, std::vector<double>& test_y);

/// For each method (pair-sampled, random features) x depth x width x seed:
/// fit on shared per-seed data and record the test relative L2 error and the
/// wall-clock fit time. Fit failures mark the row failed and the run
/// continues.
std::vector<ExperimentRow> run_barron(const BarronSpec& spec);

/// Scaling plus rotation plus shift: x -> scale * rotation * x + shift.
struct RigidTransform {
    double scale = 1.0;
    Matrix rotation;            // D x D orthogonal
    std::vector<double> shift;  // length D

    /// Throws unless rotation is orthogonal to 1e-10 and scale is nonzero.
    void validate() const;
};

Matrix apply_transform(const RigidTransform& h, const Matrix& x);

/// Haar-random rotation with the given scale and a uniform shift in
/// [-shift_range, shift_range]^D.
RigidTransform random_rigid_transform(std::size_t dim, double scale, double shift_range,
                                      Rng& rng);

/// Composition h2(h1(x)) as a single transform.
RigidTransform compose(const RigidTransform& h2, const RigidTransform& h1);

/// Deterministic stratified fold assignment: per class, indices are shuffled
/// by the seed and dealt round-robin over folds. Throws if any class has
/// fewer rows than folds. labels are class indices; names (optional) improve
/// the error message.
std::vector<std::size_t> stratified_folds(const std::vector<std::size_t>& labels,
                                          std::size_t folds, std::uint64_t seed,
                                          const std::vector<std::string>& names = {});

struct ClassificationSpec {
    std::size_t folds = 10;
    std::vector<std::size_t> depths{1, 2, 3, 4, 5};
    std::size_t width = 500;
    Activation activation = Activation::tanh();
    double ridge_lambda = 1e-5;
    double epsilon = 1e-6;
    std::size_t pool_multiplier = 1;
    std::uint64_t seed = 0;
    /// Cap on rows actually used (0 = no cap); rows beyond it are dropped
    /// after a seeded shuffle.
    std::size_t max_rows = 5000;
};

struct ClassificationResult {
    std::vector<ExperimentRow> rows;        // one per (depth, fold)
    std::vector<double> mean_accuracy;      // per depth, in grid order
    std::size_t best_depth = 0;             // depth with the highest mean
};

/// Stratified k-fold study over the depth grid. labels are class indices
/// aligned with the rows of x; y is their one-hot encoding.
ClassificationResult run_classification(const Matrix& x, const Matrix& y,
                                        const std::vector<std::size_t>& labels,
                                        const ClassificationSpec& spec,
                                        const std::vector<std::string>& names = {});

struct TimingSpec {
    std::vector<std::size_t> layer_widths{500};
    std::vector<std::size_t> train_sizes;
    std::size_t repeats = 3;
    std::size_t dim = 5;
    Activation activation = Activation::relu();
    double ridge_lambda = 1e-10;
    std::uint64_t seed = 0;
};

struct TimingReport {
    std::vector<std::size_t> train_sizes;
    std::vector<double> median_seconds;  // per size
    double loglog_slope = 0.0;
    std::vector<double> doubling_ratios;  // median(2M)/median(M) for adjacent sizes
    std::vector<ExperimentRow> rows;
};

/// Median fit time at each training-set size for a fixed architecture, plus
/// the log-log slope of time against size. Requires at least 3 sizes, each
/// at least 10x the widest layer, and throws if the smallest median is under
/// 10 ms (timer too coarse to trust).
TimingReport timing_scaling(const TimingSpec& spec);

}  // namespace swim
