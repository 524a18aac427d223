#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swim/activation.hpp"
#include "swim/kernels.hpp"
#include "swim/matrix.hpp"

namespace swim {

/// One hidden layer: weights (neurons x inputs) and one bias per neuron.
/// Every weight row has strictly positive Euclidean norm; the pair-based
/// construction cannot produce zero rows.
struct LayerParams {
    Matrix weights;
    std::vector<double> biases;
};

/// Index pair (into the training set) that produced one neuron.
using NeuronPair = std::pair<std::uint32_t, std::uint32_t>;

struct NetworkMeta {
    std::uint64_t seed = 0;
    std::string config_echo;
    double train_residual_norm = 0.0;
    /// Class names in first-seen order for classifiers; empty for regression.
    std::vector<std::string> class_labels;
    /// Data pairs sampled per hidden layer (not persisted; empty after load
    /// or for data-agnostic baselines).
    std::vector<std::vector<NeuronPair>> sampled_pairs;
};

/// Fully-connected network whose hidden parameters were constructed from
/// data pairs (or a data-agnostic baseline) and whose output layer solves a
/// linear problem. Immutable after fitting; forward evaluation is safe from
/// multiple threads.
struct SampledNetwork {
    std::size_t input_dim = 0;
    std::vector<LayerParams> hidden;
    Activation activation;
    Matrix output_weights;            // outputs x last hidden width
    std::vector<double> output_bias;  // one per output
    NetworkMeta meta;

    bool trained() const { return output_weights.rows() > 0; }
    std::size_t output_dim() const { return output_weights.rows(); }
    std::size_t depth() const { return hidden.size(); }

    /// Throws if layer shapes do not chain from input_dim to the output map,
    /// or if any hidden weight row is zero.
    void validate() const;
};

/// Construct one neuron from a pair of points:
///   w = s1 * (x2 - x1) / ||x2 - x1||^2,   b = <w, x1> + s2.
/// The points must differ; equal points are rejected (the sampling density
/// assigns them probability zero, so a caller hitting this has a bug).
std::pair<std::vector<double>, double> weight_from_pair(std::span<const double> x1,
                                                        std::span<const double> x2,
                                                        const Activation& act);

/// Output of hidden layer `upto` on every row of x; upto = 0 returns x.
Matrix forward_hidden(const SampledNetwork& net, const Matrix& x, std::size_t upto,
                      kernels::Exec exec = kernels::Exec::Parallel);

/// Full network output: output_weights * phi_L(x) - output_bias, per row.
Matrix forward(const SampledNetwork& net, const Matrix& x,
               kernels::Exec exec = kernels::Exec::Parallel);

/// Argmax decode of the network outputs; ties break to the lowest index.
/// Requires a trained network with at least two outputs.
std::vector<std::size_t> predict_classes(const SampledNetwork& net, const Matrix& x);

/// Five-neuron relu gadget that adds the constant c on part of the line and
/// vanishes elsewhere. Used as a verification fixture.
///
/// The published rendering of this gadget does not reproduce its own closed
/// form (no sign pattern of its five terms can vanish identically left of c1
/// while staying constant right of c2), so the neurons here carry corrected
/// coefficients: the ramp-on slope is split a2 - a1 across two neurons at c1,
/// a third neuron stops the ramp at c2, and a cancelling pair keeps the c3
/// breakpoint. The closed-form offset of the linear segment is
/// d = a1*c3 - a2*c2 (minus, not plus), which joins 0 at c1 and c at c2.
struct ConstantBlock {
    double c;
    double c1, c2, c3;
    double a1, a2, a3;

    ConstantBlock(double c, double c1, double c2, double c3);
};

/// Sum of the five relu neurons at x.
double constant_block_eval(const ConstantBlock& blk, double x);

/// Closed form: 0 for x <= c1, a3*x + d on (c1, c2], c for x > c2.
double constant_block_piecewise(const ConstantBlock& blk, double x);

}  // namespace swim
