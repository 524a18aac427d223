#include "swim/benchmark.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace swim {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

// Distinct stream tags so data generation never shares draws with fitting.
constexpr std::uint64_t kDataStreamTag = 0x64617461u;   // train/test draws
constexpr std::uint64_t kFoldStreamTag = 0x666f6c64u;   // fold shuffles

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<double> barron_target(const Matrix& x) {
    const std::size_t d = x.cols();
    if (d < 1) throw Error("barron_target: dimension must be >= 1");
    std::vector<double> a(d);
    for (std::size_t j = 0; j < d; ++j)
        a[j] = 2.0 * static_cast<double>(j + 1) / static_cast<double>(d) - 1.0;
    const double scale = std::sqrt(1.5);
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double minus = 0.0, plus = 0.0;
        const auto row = x.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double dm = row[j] - a[j];
            const double dp = row[j] + a[j];
            minus += dm * dm;
            plus += dp * dp;
        }
        out[i] = scale * (std::sqrt(minus) - std::sqrt(plus));
    }
    return out;
}

double relative_l2_error(const std::vector<double>& pred, const std::vector<double>& truth) {
    if (pred.size() != truth.size())
        throw Error("relative_l2_error: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - truth[i];
        num += d * d;
        den += truth[i] * truth[i];
    }
    if (!(den > 0.0)) throw Error("relative_l2_error: truth has zero norm");
    return std::sqrt(num / den);
}

Matrix uniform_cube(std::size_t m, std::size_t d, Rng& rng) {
    Matrix x = Matrix::uninitialized(m, d);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < d; ++j) x(i, j) = rng.uniform(-1.0, 1.0);
    return x;
}

std::uint64_t matrix_digest(const Matrix& m) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(m.data());
    const std::size_t n = m.size() * sizeof(double);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

void barron_data(const BarronSpec& spec, std::uint64_t seed, Matrix& train_x,
                 std::vector<double>& train_y, Matrix& test_x, std::vector<double>& test_y) {
    Rng rng = substream(seed, kDataStreamTag);
    train_x = uniform_cube(spec.train_points, spec.dim, rng);
    test_x = uniform_cube(spec.test_points, spec.dim, rng);
    train_y = barron_target(train_x);
    test_y = barron_target(test_x);
}

namespace {

Matrix column_matrix(const std::vector<double>& v) {
    Matrix m = Matrix::uninitialized(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

std::vector<double> first_column(const Matrix& m) {
    std::vector<double> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, 0);
    return v;
}

}  // namespace

std::vector<ExperimentRow> run_barron(const BarronSpec& spec) {
    if (spec.dim < 1) throw Error("run_barron: dimension must be >= 1");
    if (spec.widths.empty() || spec.depths.empty() || spec.seeds.empty())
        throw Error("run_barron: widths, depths and seeds must be nonempty");

    std::vector<ExperimentRow> rows;
    for (std::uint64_t seed : spec.seeds) {
        Matrix train_x, test_x;
        std::vector<double> train_y, test_y;
        barron_data(spec, seed, train_x, train_y, test_x, test_y);
        const std::uint64_t digest = matrix_digest(train_x) ^ (matrix_digest(test_x) << 1);
        const Matrix train_targets = column_matrix(train_y);

        for (std::size_t depth : spec.depths) {
            for (std::size_t width : spec.widths) {
                for (const char* method : {"swim", "random_features"}) {
                    ExperimentRow row;
                    row.method = method;
                    row.depth = depth;
                    row.width = width;
                    row.seed = seed;
                    row.metric = "rel_l2_error";
                    row.data_digest = digest;
                    const auto start = clock_type::now();
                    try {
                        SampledNetwork net;
                        if (std::string(method) == "swim") {
                            FitConfig cfg;
                            cfg.layer_widths.assign(depth, width);
                            cfg.activation = spec.activation;
                            cfg.epsilon = spec.epsilon;
                            cfg.ridge_lambda = spec.ridge_lambda;
                            cfg.seed = seed;
                            net = fit(train_x, train_targets, cfg);
                        } else {
                            BaselineConfig cfg;
                            cfg.layer_widths.assign(depth, width);
                            cfg.ridge_lambda = spec.ridge_lambda;
                            cfg.seed = seed;
                            net = fit_random_features(train_x, train_targets, cfg);
                        }
                        row.fit_seconds = seconds_since(start);
                        row.value = relative_l2_error(first_column(forward(net, test_x)), test_y);
                    } catch (const std::exception& e) {
                        row.fit_seconds = seconds_since(start);
                        row.failed = true;
                        row.error = e.what();
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

void RigidTransform::validate() const {
    if (scale == 0.0) throw Error("rigid transform: scale must be nonzero");
    const std::size_t d = rotation.rows();
    if (rotation.cols() != d) throw Error("rigid transform: rotation must be square");
    if (shift.size() != d) throw Error("rigid transform: shift length must match dimension");
    double dev = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < d; ++k) dot += rotation(k, i) * rotation(k, j);
            const double target = i == j ? 1.0 : 0.0;
            dev += (dot - target) * (dot - target);
        }
    }
    if (std::sqrt(dev) > 1e-10)
        throw Error("rigid transform: rotation is not orthogonal");
}

Matrix apply_transform(const RigidTransform& h, const Matrix& x) {
    if (x.cols() != h.rotation.rows())
        throw Error("apply_transform: width " + std::to_string(x.cols()) +
                    " does not match transform dimension " + std::to_string(h.rotation.rows()));
    const std::size_t d = x.cols();
    Matrix out = Matrix::uninitialized(x.rows(), d);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto row = x.row(i);
        for (std::size_t r = 0; r < d; ++r) {
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) acc += h.rotation(r, k) * row[k];
            out(i, r) = h.scale * acc + h.shift[r];
        }
    }
    return out;
}

RigidTransform random_rigid_transform(std::size_t dim, double scale, double shift_range,
                                      Rng& rng) {
    Eigen::MatrixXd g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the sign convention so Q is Haar-distributed.
    for (std::size_t j = 0; j < dim; ++j)
        if (r((Eigen::Index)j, (Eigen::Index)j) < 0.0) q.col((Eigen::Index)j) *= -1.0;

    RigidTransform h;
    h.scale = scale;
    h.rotation = Matrix::uninitialized(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) h.rotation(i, j) = q((Eigen::Index)i, (Eigen::Index)j);
    h.shift.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) h.shift[i] = rng.uniform(-shift_range, shift_range);
    h.validate();
    return h;
}

RigidTransform compose(const RigidTransform& h2, const RigidTransform& h1) {
    if (h1.rotation.rows() != h2.rotation.rows())
        throw Error("compose: transform dimensions differ");
    RigidTransform out;
    out.scale = h2.scale * h1.scale;
    out.rotation = kernels::matmul(h2.rotation, h1.rotation, kernels::Exec::Serial);
    const std::size_t d = h1.shift.size();
    out.shift.resize(d);
    for (std::size_t r = 0; r < d; ++r) {
        double acc = 0.0;
        for (std::size_t k = 0; k < d; ++k) acc += h2.rotation(r, k) * h1.shift[k];
        out.shift[r] = h2.scale * acc + h2.shift[r];
    }
    return out;
}

std::vector<std::size_t> stratified_folds(const std::vector<std::size_t>& labels,
                                          std::size_t folds, std::uint64_t seed,
                                          const std::vector<std::string>& names) {
    if (folds < 2) throw Error("stratified_folds: need at least 2 folds");
    if (labels.empty()) throw Error("stratified_folds: no rows");
    const std::size_t n_classes = *std::max_element(labels.begin(), labels.end()) + 1;
    if (n_classes < 2) throw Error("stratified_folds: need at least 2 classes");

    std::vector<std::vector<std::size_t>> by_class(n_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

    std::vector<std::size_t> fold_of(labels.size());
    for (std::size_t c = 0; c < n_classes; ++c) {
        auto& idx = by_class[c];
        if (idx.size() < folds) {
            const std::string name =
                c < names.size() ? "'" + names[c] + "'" : std::to_string(c);
            throw Error("stratified_folds: class " + name + " has " +
                        std::to_string(idx.size()) + " rows, fewer than " +
                        std::to_string(folds) + " folds");
        }
        Rng rng = substream(seed ^ kFoldStreamTag, c);
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng.index(i)]);
        for (std::size_t pos = 0; pos < idx.size(); ++pos) fold_of[idx[pos]] = pos % folds;
    }
    return fold_of;
}

ClassificationResult run_classification(const Matrix& x, const Matrix& y,
                                        const std::vector<std::size_t>& labels,
                                        const ClassificationSpec& spec,
                                        const std::vector<std::string>& names) {
    if (x.rows() != y.rows() || x.rows() != labels.size())
        throw Error("run_classification: rows of x, y and labels must agree");
    if (spec.depths.empty()) throw Error("run_classification: empty depth grid");

    // Optional row cap (seeded) so desk-scale runs stay desk-scale.
    std::vector<std::size_t> keep(labels.size());
    std::iota(keep.begin(), keep.end(), 0);
    if (spec.max_rows > 0 && labels.size() > spec.max_rows) {
        Rng rng = substream(spec.seed ^ kFoldStreamTag, 0xca9);
        for (std::size_t i = keep.size(); i > 1; --i)
            std::swap(keep[i - 1], keep[rng.index(i)]);
        keep.resize(spec.max_rows);
        std::sort(keep.begin(), keep.end());
    }

    Matrix xs = Matrix::uninitialized(keep.size(), x.cols());
    Matrix ys = Matrix::uninitialized(keep.size(), y.cols());
    std::vector<std::size_t> ls(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        std::copy(x.row(keep[i]).begin(), x.row(keep[i]).end(), xs.row(i).begin());
        std::copy(y.row(keep[i]).begin(), y.row(keep[i]).end(), ys.row(i).begin());
        ls[i] = labels[keep[i]];
    }

    const std::vector<std::size_t> fold_of = stratified_folds(ls, spec.folds, spec.seed, names);

    ClassificationResult result;
    result.mean_accuracy.assign(spec.depths.size(), 0.0);
    for (std::size_t di = 0; di < spec.depths.size(); ++di) {
        const std::size_t depth = spec.depths[di];
        double acc_sum = 0.0;
        for (std::size_t f = 0; f < spec.folds; ++f) {
            std::vector<std::size_t> train_idx, test_idx;
            for (std::size_t i = 0; i < ls.size(); ++i)
                (fold_of[i] == f ? test_idx : train_idx).push_back(i);

            Matrix tx = Matrix::uninitialized(train_idx.size(), xs.cols());
            Matrix ty = Matrix::uninitialized(train_idx.size(), ys.cols());
            for (std::size_t i = 0; i < train_idx.size(); ++i) {
                std::copy(xs.row(train_idx[i]).begin(), xs.row(train_idx[i]).end(),
                          tx.row(i).begin());
                std::copy(ys.row(train_idx[i]).begin(), ys.row(train_idx[i]).end(),
                          ty.row(i).begin());
            }
            Matrix vx = Matrix::uninitialized(test_idx.size(), xs.cols());
            for (std::size_t i = 0; i < test_idx.size(); ++i)
                std::copy(xs.row(test_idx[i]).begin(), xs.row(test_idx[i]).end(),
                          vx.row(i).begin());

            ExperimentRow row;
            row.method = "swim";
            row.depth = depth;
            row.width = spec.width;
            row.seed = mix64(spec.seed ^ mix64(depth * 1315423911u + f));
            row.metric = "accuracy";
            const auto start = clock_type::now();
            try {
                FitConfig cfg;
                cfg.layer_widths.assign(depth, spec.width);
                cfg.activation = spec.activation;
                cfg.epsilon = spec.epsilon;
                cfg.pool_multiplier = spec.pool_multiplier;
                cfg.ridge_lambda = spec.ridge_lambda;
                cfg.seed = row.seed;
                SampledNetwork net = fit(tx, ty, cfg);
                row.fit_seconds = seconds_since(start);
                const auto pred = predict_classes(net, vx);
                std::size_t correct = 0;
                for (std::size_t i = 0; i < test_idx.size(); ++i)
                    if (pred[i] == ls[test_idx[i]]) ++correct;
                row.value = test_idx.empty()
                                ? 0.0
                                : static_cast<double>(correct) / static_cast<double>(test_idx.size());
            } catch (const std::exception& e) {
                row.fit_seconds = seconds_since(start);
                row.failed = true;
                row.error = e.what();
            }
            acc_sum += row.value;
            result.rows.push_back(std::move(row));
        }
        result.mean_accuracy[di] = acc_sum / static_cast<double>(spec.folds);
    }

    std::size_t best = 0;
    for (std::size_t di = 1; di < spec.depths.size(); ++di)
        if (result.mean_accuracy[di] > result.mean_accuracy[best]) best = di;
    result.best_depth = spec.depths[best];
    return result;
}

TimingReport timing_scaling(const TimingSpec& spec) {
    if (spec.train_sizes.size() < 3)
        throw Error("timing_scaling: need at least 3 training-set sizes");
    if (spec.repeats < 1) throw Error("timing_scaling: repeats must be >= 1");
    const std::size_t max_width =
        *std::max_element(spec.layer_widths.begin(), spec.layer_widths.end());
    for (std::size_t m : spec.train_sizes) {
        if (m < 10 * max_width)
            throw Error("timing_scaling: size " + std::to_string(m) +
                        " is below 10x the architecture width " + std::to_string(max_width));
    }
    std::vector<std::size_t> sizes = spec.train_sizes;
    std::sort(sizes.begin(), sizes.end());

    TimingReport report;
    report.train_sizes = sizes;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const std::size_t m = sizes[si];
        Rng rng = substream(spec.seed ^ kDataStreamTag, m);
        Matrix x = uniform_cube(m, spec.dim, rng);
        Matrix y = column_matrix(barron_target(x));
        std::vector<double> times;
        for (std::size_t r = 0; r < spec.repeats; ++r) {
            FitConfig cfg;
            cfg.layer_widths = spec.layer_widths;
            cfg.activation = spec.activation;
            cfg.ridge_lambda = spec.ridge_lambda;
            cfg.seed = mix64(spec.seed + r);
            const auto start = clock_type::now();
            SampledNetwork net = fit(x, y, cfg);
            const double t = seconds_since(start);
            times.push_back(t);
            ExperimentRow row;
            row.method = "swim";
            row.depth = spec.layer_widths.size();
            row.width = max_width;
            row.seed = cfg.seed;
            row.metric = "fit_seconds@M=" + std::to_string(m);
            row.value = t;
            row.fit_seconds = t;
            report.rows.push_back(std::move(row));
        }
        report.median_seconds.push_back(median(times));
    }

    if (report.median_seconds.front() < 0.010) {
        throw Error("timing_scaling: smallest median is " +
                    std::to_string(report.median_seconds.front() * 1e3) +
                    " ms (< 10 ms); use larger training sizes");
    }

    // Least-squares slope of log(time) against log(M).
    const std::size_t n = sizes.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(static_cast<double>(sizes[i]));
        const double ly = std::log(report.median_seconds[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    report.loglog_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    for (std::size_t i = 0; i + 1 < n; ++i)
        report.doubling_ratios.push_back(report.median_seconds[i + 1] /
                                         report.median_seconds[i]);
    return report;
}

}  // namespace swim
