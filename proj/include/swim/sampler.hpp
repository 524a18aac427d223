#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swim/network.hpp"
#include "swim/rng.hpp"

namespace swim {

enum class Norm { L2, Linf };

const char* norm_name(Norm n);
Norm parse_norm(const std::string& name);

/// Configuration of a pair-sampled fit.
struct FitConfig {
    /// Hidden widths N_1..N_L. The output width is fixed by the targets; set
    /// output_width to cross-check it (0 = take from Y).
    std::vector<std::size_t> layer_widths;
    std::size_t output_width = 0;
    Activation activation = Activation::tanh();
    /// Distance floor of the pair density for layers past the first (the
    /// first layer always uses a zero floor).
    double epsilon = 1e-6;
    /// Pool size multiplier: the per-layer candidate pool holds
    /// pool_multiplier * ceil(N_l / M) * M pairs.
    std::size_t pool_multiplier = 1;
    double ridge_lambda = 1e-10;
    Norm y_norm = Norm::Linf;
    Norm x_norm = Norm::L2;
    std::uint64_t seed = 0;

    void validate() const;
    std::string echo() const;
};

/// Candidate pairs for one layer with their unnormalized sampling weights.
/// Stored pairs always have distinct layer-(l-1) representations.
/// fallback_uniform is set exactly when every weight is zero (constant
/// targets); sampling then degrades to uniform over the pool.
struct PairPool {
    std::size_t layer = 0;
    std::vector<NeuronPair> pairs;
    std::vector<double> weights;
    bool fallback_uniform = false;
};

/// Unnormalized sampling weight of one candidate pair: the target difference
/// over the (floored) representation distance, and 0 for coinciding
/// representations. The floor is cfg.epsilon for layer > 1 and 0 for the
/// first layer.
double pair_weight(std::span<const double> r1, std::span<const double> r2,
                   std::span<const double> y1, std::span<const double> y2,
                   std::size_t layer, const FitConfig& cfg);

/// Draw the layer-l candidate pool: uniform ordered index pairs over the
/// training set, rejecting pairs whose representations coincide, until the
/// pool is full or the retry budget (50 per slot) runs out. Throws if not a
/// single valid pair was found.
PairPool build_pool(const Matrix& x, const Matrix& y, const Matrix& reps, std::size_t layer,
                    std::size_t n_neurons, const FitConfig& cfg, Rng& rng);

/// n draws from the pool, with replacement, proportional to the weights
/// (uniform in fallback mode). Cumulative-sum inversion; zero-weight entries
/// are never drawn.
std::vector<NeuronPair> sample_pairs(const PairPool& pool, std::size_t n, Rng& rng);

/// Full pair-sampled fit: per layer, build the pool, sample one pair per
/// neuron against the layer-(l-1) representations, construct weights and
/// biases from the pairs, then solve the regularized linear problem for the
/// output map. Deterministic: two runs with the same inputs and seed return
/// bitwise-identical parameters.
SampledNetwork fit(const Matrix& x, const Matrix& y, const FitConfig& cfg);

/// Fit with externally chosen pair indices per layer (no pool, no RNG).
/// Exists for the transform-invariance studies, which need the same pairs on
/// two differently-transformed copies of the data.
SampledNetwork fit_with_pairs(const Matrix& x, const Matrix& y, const FitConfig& cfg,
                              const std::vector<std::vector<NeuronPair>>& pairs_per_layer);

}  // namespace swim
