#include "swim/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "swim/ridge.hpp"

namespace swim {

const char* norm_name(Norm n) { return n == Norm::L2 ? "l2" : "linf"; }

Norm parse_norm(const std::string& name) {
    if (name == "l2") return Norm::L2;
    if (name == "linf") return Norm::Linf;
    throw Error("unknown norm '" + name + "' (expected l2|linf)");
}

void FitConfig::validate() const {
    if (layer_widths.empty()) throw Error("fit config: at least one hidden layer required");
    for (std::size_t w : layer_widths)
        if (w < 1) throw Error("fit config: layer widths must be >= 1");
    if (!(epsilon > 0.0)) throw Error("fit config: epsilon must be > 0");
    if (pool_multiplier < 1) throw Error("fit config: pool multiplier must be >= 1");
    if (ridge_lambda < 0.0) throw Error("fit config: ridge lambda must be >= 0");
}

std::string FitConfig::echo() const {
    std::ostringstream os;
    os << "layers=[";
    for (std::size_t i = 0; i < layer_widths.size(); ++i)
        os << (i ? "," : "") << layer_widths[i];
    os << "] activation=" << activation.name() << " s1=" << activation.s1
       << " s2=" << activation.s2 << " epsilon=" << epsilon
       << " pool_mult=" << pool_multiplier << " ridge=" << ridge_lambda
       << " y_norm=" << norm_name(y_norm) << " x_norm=" << norm_name(x_norm);
    return os.str();
}

namespace {

double diff_norm(std::span<const double> a, std::span<const double> b, Norm norm) {
    if (norm == Norm::Linf) {
        double m = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(b[k] - a[k]));
        return m;
    }
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = b[k] - a[k];
        sq += d * d;
    }
    return std::sqrt(sq);
}

bool spans_equal(std::span<const double> a, std::span<const double> b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] != b[k]) return false;
    return true;
}

std::size_t pool_size(std::size_t n_neurons, std::size_t m, std::size_t multiplier) {
    const std::size_t ceil_ratio = (n_neurons + m - 1) / m;
    return multiplier * ceil_ratio * m;
}

}  // namespace

double pair_weight(std::span<const double> r1, std::span<const double> r2,
                   std::span<const double> y1, std::span<const double> y2,
                   std::size_t layer, const FitConfig& cfg) {
    if (spans_equal(r1, r2)) return 0.0;
    const double dy = diff_norm(y1, y2, cfg.y_norm);
    const double dx = diff_norm(r1, r2, cfg.x_norm);
    const double floor = layer == 1 ? 0.0 : cfg.epsilon;
    return dy / std::max(dx, floor);
}

PairPool build_pool(const Matrix& x, const Matrix& y, const Matrix& reps, std::size_t layer,
                    std::size_t n_neurons, const FitConfig& cfg, Rng& rng) {
    const std::size_t m = reps.rows();
    if (x.rows() != m || y.rows() != m)
        throw Error("build_pool: x, y and representations disagree on row count");
    if (m < 2) throw Error("build_pool: need at least 2 training rows");
    PairPool pool;
    pool.layer = layer;
    const std::size_t want = pool_size(n_neurons, m, cfg.pool_multiplier);
    const std::size_t budget = 50 * want;
    pool.pairs.reserve(want);
    std::size_t attempts = 0;
    while (pool.pairs.size() < want && attempts < budget) {
        ++attempts;
        const auto i = static_cast<std::uint32_t>(rng.index(m));
        const auto j = static_cast<std::uint32_t>(rng.index(m));
        if (rows_equal(reps, i, j)) continue;
        pool.pairs.emplace_back(i, j);
    }
    if (pool.pairs.empty()) {
        throw Error("fit: layer " + std::to_string(layer) +
                    " is degenerate: no candidate pair with distinct representations");
    }

    pool.weights.resize(pool.pairs.size());
    const std::int64_t n = static_cast<std::int64_t>(pool.pairs.size());
    // Weight evaluation is read-only on the pool and touches no RNG state,
    // so it can run in parallel without changing the draw sequence.
#pragma omp parallel for schedule(static) num_threads(kernels::max_threads())
    for (std::int64_t k = 0; k < n; ++k) {
        const auto [i, j] = pool.pairs[static_cast<std::size_t>(k)];
        pool.weights[static_cast<std::size_t>(k)] =
            pair_weight(reps.row(i), reps.row(j), y.row(i), y.row(j), layer, cfg);
    }
    pool.fallback_uniform =
        std::all_of(pool.weights.begin(), pool.weights.end(), [](double w) { return w == 0.0; });
    return pool;
}

std::vector<NeuronPair> sample_pairs(const PairPool& pool, std::size_t n, Rng& rng) {
    if (pool.pairs.empty()) throw Error("sample_pairs: empty pool");
    std::vector<NeuronPair> out;
    out.reserve(n);
    if (pool.fallback_uniform) {
        for (std::size_t k = 0; k < n; ++k) out.push_back(pool.pairs[rng.index(pool.pairs.size())]);
        return out;
    }
    std::vector<double> cum(pool.weights.size());
    double total = 0.0;
    for (std::size_t k = 0; k < pool.weights.size(); ++k) {
        total += pool.weights[k];
        cum[k] = total;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double u = rng.unit() * total;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::size_t idx = std::min<std::size_t>(
            static_cast<std::size_t>(it - cum.begin()), cum.size() - 1);
        out.push_back(pool.pairs[idx]);
    }
    return out;
}

namespace {

LayerParams build_layer(const Matrix& reps, const std::vector<NeuronPair>& pairs,
                        const Activation& act) {
    LayerParams layer;
    layer.weights = Matrix::uninitialized(pairs.size(), reps.cols());
    layer.biases.resize(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [i, j] = pairs[k];
        auto [w, b] = weight_from_pair(reps.row(i), reps.row(j), act);
        std::copy(w.begin(), w.end(), layer.weights.row(k).begin());
        layer.biases[k] = b;
    }
    return layer;
}

SampledNetwork fit_impl(const Matrix& x, const Matrix& y, const FitConfig& cfg,
                        const std::vector<std::vector<NeuronPair>>* forced_pairs) {
    cfg.validate();
    if (x.rows() < 2) throw Error("fit: need at least 2 training rows");
    if (x.rows() != y.rows()) {
        throw Error("fit: inputs " + x.shape_str() + " and targets " + y.shape_str() +
                    " disagree on row count");
    }
    x.require_finite("fit inputs");
    y.require_finite("fit targets");
    if (cfg.output_width != 0 && cfg.output_width != y.cols()) {
        throw Error("fit: configured output width " + std::to_string(cfg.output_width) +
                    " does not match target width " + std::to_string(y.cols()));
    }
    if (forced_pairs && forced_pairs->size() != cfg.layer_widths.size()) {
        throw Error("fit: forced pair list does not cover every layer");
    }

    SampledNetwork net;
    net.input_dim = x.cols();
    net.activation = cfg.activation;
    net.meta.seed = cfg.seed;
    net.meta.config_echo = cfg.echo();

    Matrix reps = x;
    for (std::size_t l = 1; l <= cfg.layer_widths.size(); ++l) {
        const std::size_t width = cfg.layer_widths[l - 1];
        std::vector<NeuronPair> pairs;
        if (forced_pairs) {
            pairs = (*forced_pairs)[l - 1];
            if (pairs.size() != width) {
                throw Error("fit: forced pairs for layer " + std::to_string(l) +
                            " do not match its width");
            }
            for (const auto& [i, j] : pairs) {
                if (i >= reps.rows() || j >= reps.rows())
                    throw Error("fit: forced pair index out of range");
                if (rows_equal(reps, i, j)) {
                    throw Error("fit: layer " + std::to_string(l) +
                                " forced pair has coinciding representations");
                }
            }
        } else {
            Rng rng = substream(cfg.seed, l);
            PairPool pool = build_pool(x, y, reps, l, width, cfg, rng);
            pairs = sample_pairs(pool, width, rng);
        }
        net.hidden.push_back(build_layer(reps, pairs, cfg.activation));
        net.meta.sampled_pairs.push_back(std::move(pairs));
        reps = kernels::layer_forward(reps, net.hidden.back().weights, net.hidden.back().biases,
                                      cfg.activation);
        if (!reps.all_finite()) {
            throw Error("fit: non-finite representations after layer " + std::to_string(l));
        }
    }

    RidgeSolution sol = solve_ridge(reps, y, cfg.ridge_lambda);
    net.output_weights = Matrix::uninitialized(sol.weights.cols(), sol.weights.rows());
    for (std::size_t i = 0; i < sol.weights.rows(); ++i)
        for (std::size_t j = 0; j < sol.weights.cols(); ++j)
            net.output_weights(j, i) = sol.weights(i, j);
    net.output_bias = sol.bias;
    net.meta.train_residual_norm = sol.residual_norm;
    net.validate();
    return net;
}

}  // namespace

SampledNetwork fit(const Matrix& x, const Matrix& y, const FitConfig& cfg) {
    return fit_impl(x, y, cfg, nullptr);
}

SampledNetwork fit_with_pairs(const Matrix& x, const Matrix& y, const FitConfig& cfg,
                              const std::vector<std::vector<NeuronPair>>& pairs_per_layer) {
    return fit_impl(x, y, cfg, &pairs_per_layer);
}

}  // namespace swim
