#include "swim/baseline.hpp"

#include <sstream>

#include "swim/ridge.hpp"
#include "swim/rng.hpp"

namespace swim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void BaselineConfig::validate() const {
    if (layer_widths.empty())
        throw Error("baseline config: at least one hidden layer required");
    for (std::size_t w : layer_widths)
        if (w < 1) throw Error("baseline config: layer widths must be >= 1");
    if (ridge_lambda < 0.0) throw Error("baseline config: ridge lambda must be >= 0");
}

SampledNetwork fit_random_features(const Matrix& x, const Matrix& y,
                                   const BaselineConfig& cfg) {
    cfg.validate();
    if (x.rows() < 1) throw Error("fit_random_features: need at least 1 training row");
    if (x.rows() != y.rows()) {
        throw Error("fit_random_features: inputs " + x.shape_str() + " and targets " +
                    y.shape_str() + " disagree on row count");
    }
    x.require_finite("fit_random_features inputs");
    y.require_finite("fit_random_features targets");

    SampledNetwork net;
    net.input_dim = x.cols();
    net.activation = Activation::sine();
    net.meta.seed = cfg.seed;
    {
        std::ostringstream os;
        os << "random_features layers=[";
        for (std::size_t i = 0; i < cfg.layer_widths.size(); ++i)
            os << (i ? "," : "") << cfg.layer_widths[i];
        os << "] ridge=" << cfg.ridge_lambda;
        net.meta.config_echo = os.str();
    }

    std::size_t fan_in = x.cols();
    for (std::size_t l = 1; l <= cfg.layer_widths.size(); ++l) {
        const std::size_t width = cfg.layer_widths[l - 1];
        Rng rng = substream(cfg.seed, l);
        LayerParams layer;
        layer.weights = Matrix::uninitialized(width, fan_in);
        for (std::size_t i = 0; i < width; ++i)
            for (std::size_t j = 0; j < fan_in; ++j) layer.weights(i, j) = rng.normal();
        layer.biases.resize(width);
        for (std::size_t i = 0; i < width; ++i) layer.biases[i] = rng.uniform(-kPi, kPi);
        net.hidden.push_back(std::move(layer));
        fan_in = width;
    }

    Matrix reps = forward_hidden(net, x, net.hidden.size());
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

}  // namespace swim
