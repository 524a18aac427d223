#include "swim/network.hpp"

#include <cmath>

namespace swim {

void SampledNetwork::validate() const {
    std::size_t width = input_dim;
    for (std::size_t l = 0; l < hidden.size(); ++l) {
        const LayerParams& layer = hidden[l];
        if (layer.weights.cols() != width) {
            throw Error("network: layer " + std::to_string(l + 1) + " expects input width " +
                        std::to_string(layer.weights.cols()) + " but previous width is " +
                        std::to_string(width));
        }
        if (layer.biases.size() != layer.weights.rows()) {
            throw Error("network: layer " + std::to_string(l + 1) +
                        " bias length does not match neuron count");
        }
        for (std::size_t i = 0; i < layer.weights.rows(); ++i) {
            double sq = 0.0;
            for (double v : layer.weights.row(i)) sq += v * v;
            if (!(sq > 0.0)) {
                throw Error("network: layer " + std::to_string(l + 1) + " neuron " +
                            std::to_string(i) + " has a zero weight row");
            }
        }
        width = layer.weights.rows();
    }
    if (trained()) {
        if (output_weights.cols() != width) {
            throw Error("network: output map expects width " +
                        std::to_string(output_weights.cols()) + " but last hidden width is " +
                        std::to_string(width));
        }
        if (output_bias.size() != output_weights.rows()) {
            throw Error("network: output bias length does not match output dimension");
        }
    }
}

std::pair<std::vector<double>, double> weight_from_pair(std::span<const double> x1,
                                                        std::span<const double> x2,
                                                        const Activation& act) {
    if (x1.size() != x2.size()) throw Error("weight_from_pair: point dimensions differ");
    double sq = 0.0;
    for (std::size_t k = 0; k < x1.size(); ++k) {
        const double d = x2[k] - x1[k];
        sq += d * d;
    }
    if (sq == 0.0) throw Error("weight_from_pair: points are identical");
    std::vector<double> w(x1.size());
    const double scale = act.s1 / sq;
    for (std::size_t k = 0; k < x1.size(); ++k) w[k] = scale * (x2[k] - x1[k]);
    double b = 0.0;
    for (std::size_t k = 0; k < x1.size(); ++k) b += w[k] * x1[k];
    b += act.s2;
    return {std::move(w), b};
}

Matrix forward_hidden(const SampledNetwork& net, const Matrix& x, std::size_t upto,
                      kernels::Exec exec) {
    if (x.cols() != net.input_dim) {
        throw Error("forward: input width " + std::to_string(x.cols()) +
                    " does not match network input dimension " + std::to_string(net.input_dim));
    }
    if (upto > net.hidden.size()) {
        throw Error("forward_hidden: layer index " + std::to_string(upto) + " exceeds depth " +
                    std::to_string(net.hidden.size()));
    }
    if (upto == 0) return x;
    Matrix reps = kernels::layer_forward(x, net.hidden[0].weights, net.hidden[0].biases,
                                         net.activation, exec);
    for (std::size_t l = 1; l < upto; ++l) {
        reps = kernels::layer_forward(reps, net.hidden[l].weights, net.hidden[l].biases,
                                      net.activation, exec);
    }
    return reps;
}

Matrix forward(const SampledNetwork& net, const Matrix& x, kernels::Exec exec) {
    if (!net.trained()) throw Error("forward: network has no output layer");
    Matrix reps = forward_hidden(net, x, net.hidden.size(), exec);
    return kernels::output_forward(reps, net.output_weights, net.output_bias, exec);
}

std::vector<std::size_t> predict_classes(const SampledNetwork& net, const Matrix& x) {
    if (!net.trained()) throw Error("predict_classes: network has no output layer");
    if (net.output_dim() < 2) {
        throw Error("predict_classes: needs at least 2 outputs, network has " +
                    std::to_string(net.output_dim()));
    }
    const Matrix out = forward(net, x);
    std::vector<std::size_t> labels(out.rows());
    for (std::size_t i = 0; i < out.rows(); ++i) {
        std::size_t best = 0;
        double best_v = out(i, 0);
        for (std::size_t j = 1; j < out.cols(); ++j) {
            if (out(i, j) > best_v) {  // strict: ties keep the lowest index
                best_v = out(i, j);
                best = j;
            }
        }
        labels[i] = best;
    }
    return labels;
}

ConstantBlock::ConstantBlock(double c, double c1, double c2, double c3)
    : c(c), c1(c1), c2(c2), c3(c3) {
    if (!(c1 < c2 && c2 < c3)) throw Error("constant_block: requires c1 < c2 < c3");
    if (c == 0.0) throw Error("constant_block: c must be nonzero");
    a1 = c / (c3 - c2);
    a2 = a1 * (c1 - c3) / (c1 - c2);
    a3 = a2 - a1;
}

double constant_block_eval(const ConstantBlock& blk, double x) {
    const auto relu = [](double v) { return v > 0.0 ? v : 0.0; };
    const double f1 = blk.a2 * relu(x - blk.c1);
    const double f2 = -blk.a1 * relu(x - blk.c1);
    const double f3 = -blk.a3 * relu(x - blk.c2);
    const double f4 = blk.a1 * relu(x - blk.c3);
    const double f5 = -blk.a1 * relu(x - blk.c3);
    return f1 + f2 + f3 + f4 + f5;
}

double constant_block_piecewise(const ConstantBlock& blk, double x) {
    if (x <= blk.c1) return 0.0;
    if (x <= blk.c2) return blk.a3 * x + (blk.a1 * blk.c3 - blk.a2 * blk.c2);
    return blk.c;
}

}  // namespace swim
