#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "swim/network.hpp"
#include "swim/rng.hpp"
#include "swim/sampler.hpp"

using namespace swim;

namespace {

SampledNetwork tiny_net() {
    SampledNetwork net;
    net.input_dim = 2;
    net.activation = Activation::relu();
    net.hidden.push_back({Matrix{{1, 0}, {0, 1}}, {0.0, 0.0}});
    net.output_weights = Matrix{{1, 1}, {1, -1}};
    net.output_bias = {0.0, 0.0};
    return net;
}

Matrix random_matrix(std::size_t m, std::size_t n, Rng& rng, double lo = -1.0, double hi = 1.0) {
    Matrix a = Matrix::uninitialized(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(lo, hi);
    return a;
}

}  // namespace

TEST_CASE("activation constants") {
    const Activation relu = Activation::relu();
    CHECK(relu.s1 == 1.0);
    CHECK(relu.s2 == 0.0);
    const Activation th = Activation::tanh();
    CHECK(th.s1 == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(th.s2 == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-15));
    const Activation sn = Activation::sine();
    CHECK(std::sin(-sn.s2) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::sin(sn.s1 - sn.s2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(Activation::parse("gelu"), Error);
}

TEST_CASE("weight_from_pair relu hand case") {
    const std::vector<double> x1{0, 0}, x2{2, 0};
    auto [w, b] = weight_from_pair(x1, x2, Activation::relu());
    CHECK(w[0] == 0.5);
    CHECK(w[1] == 0.0);
    CHECK(b == 0.0);
}

TEST_CASE("weight_from_pair tanh 1-D lands on -1/2 and +1/2") {
    const std::vector<double> x1{0.0}, x2{1.0};
    auto [w, b] = weight_from_pair(x1, x2, Activation::tanh());
    CHECK(w[0] == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(b == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-15));
    CHECK(std::tanh(w[0] * 0.0 - b) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::tanh(w[0] * 1.0 - b) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("weight_from_pair maps the pair to 0 and 1 under relu") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 1 + rng.index(6);
        std::vector<double> x1(d), x2(d);
        for (std::size_t k = 0; k < d; ++k) {
            x1[k] = rng.uniform(-2, 2);
            x2[k] = rng.uniform(-2, 2);
        }
        if (x1 == x2) continue;
        auto [w, b] = weight_from_pair(x1, x2, Activation::relu());
        double d1 = -b, d2 = -b;
        for (std::size_t k = 0; k < d; ++k) {
            d1 += w[k] * x1[k];
            d2 += w[k] * x2[k];
        }
        CHECK(std::fabs(std::max(d1, 0.0)) <= 1e-12);
        CHECK(std::fabs(std::max(d2, 0.0) - 1.0) <= 1e-12);
    }
}

TEST_CASE("weight_from_pair rejects identical points") {
    const std::vector<double> x{1, 2};
    CHECK_THROWS_AS(weight_from_pair(x, x, Activation::relu()), Error);
}

TEST_CASE("forward_hidden layer 0 returns input verbatim") {
    SampledNetwork net = tiny_net();
    Matrix x{{3, -4}};
    CHECK(forward_hidden(net, x, 0) == x);
}

TEST_CASE("forward_hidden clamps negatives under relu") {
    SampledNetwork net;
    net.input_dim = 2;
    net.activation = Activation::relu();
    net.hidden.push_back({Matrix{{1, 0}}, {0.0}});
    Matrix x{{-1, 5}};
    Matrix h = forward_hidden(net, x, 1);
    CHECK(h.rows() == 1);
    CHECK(h(0, 0) == 0.0);
}

TEST_CASE("forward_hidden tanh midpoint is zero") {
    SampledNetwork net;
    net.input_dim = 1;
    net.activation = Activation::tanh();
    const double ln3 = std::log(3.0);
    net.hidden.push_back({Matrix{{ln3}}, {ln3 / 2.0}});
    Matrix x{{0.5}};
    CHECK(forward_hidden(net, x, 1)(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("forward rejects width mismatch") {
    SampledNetwork net = tiny_net();
    Matrix x{{1, 2, 3}};
    CHECK_THROWS_AS(forward(net, x), Error);
}

TEST_CASE("zero output weights and bias -3 give the constant 3") {
    SampledNetwork net = tiny_net();
    net.output_weights = Matrix(1, 2);
    net.output_bias = {-3.0};
    Matrix out = forward(net, Matrix{{0.2, 0.4}, {1, 1}});
    CHECK(out(0, 0) == 3.0);
    CHECK(out(1, 0) == 3.0);
}

TEST_CASE("predict_classes argmax with lowest-index ties") {
    // Identity-ish network that just forwards two inputs to two outputs.
    SampledNetwork net = tiny_net();
    net.output_weights = Matrix{{1, 0}, {0, 1}};
    Matrix x{{0.1, 0.9}, {0.5, 0.5}, {0.9, 0.1}};
    auto cls = predict_classes(net, x);
    CHECK(cls == std::vector<std::size_t>{1, 0, 0});

    SampledNetwork three = tiny_net();
    three.output_weights = Matrix{{1, 0}, {0, 1}, {0, 0}};
    three.output_bias = {0.0, 0.0, -0.0};
    auto c3 = predict_classes(three, Matrix{{0.2, 0.7}});
    CHECK(c3 == std::vector<std::size_t>{1});
}

TEST_CASE("predict_classes rejects untrained or single-output networks") {
    SampledNetwork net = tiny_net();
    net.output_weights = Matrix();
    CHECK_THROWS_AS(predict_classes(net, Matrix{{1, 2}}), Error);
    net = tiny_net();
    net.output_weights = Matrix{{1, 0}};
    net.output_bias = {0.0};
    CHECK_THROWS_AS(predict_classes(net, Matrix{{1, 2}}), Error);
}

TEST_CASE("network validate catches broken shapes and zero rows") {
    SampledNetwork net = tiny_net();
    CHECK_NOTHROW(net.validate());
    net.hidden[0].weights = Matrix{{0, 0}, {0, 1}};
    CHECK_THROWS_AS(net.validate(), Error);
    net = tiny_net();
    net.output_weights = Matrix{{1, 2, 3}};
    net.output_bias = {0.0};
    CHECK_THROWS_AS(net.validate(), Error);
}

TEST_CASE("constant block: derived coefficients and hand case") {
    ConstantBlock blk(1.0, 0.0, 1.0, 2.0);
    CHECK(blk.a1 == 1.0);
    CHECK(blk.a2 == 2.0);
    CHECK(blk.a3 == 1.0);
    CHECK(constant_block_eval(blk, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(constant_block_eval(blk, -1.0) == 0.0);
    CHECK(constant_block_eval(blk, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(ConstantBlock(1.0, 1.0, 0.5, 2.0), Error);
}

TEST_CASE("constant block: five-neuron sum equals the closed form on a grid") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const double c = rng.uniform(0.5, 3.0) * (trial % 4 == 0 ? -1.0 : 1.0);
        const double c1 = rng.uniform(-3.0, 3.0);
        const double c2 = c1 + rng.uniform(0.5, 2.0);
        const double c3 = c2 + rng.uniform(0.5, 2.0);
        ConstantBlock blk(c, c1, c2, c3);
        for (int g = 0; g < 1000; ++g) {
            const double x = (c1 - 1.0) + (c3 + 1.0 - (c1 - 1.0)) * g / 999.0;
            CHECK(std::fabs(constant_block_eval(blk, x) - constant_block_piecewise(blk, x)) <=
                  1e-12);
        }
        CHECK(constant_block_eval(blk, c1 - 0.5) == 0.0);
        CHECK(std::fabs(constant_block_eval(blk, c2 + 0.25 * (c3 - c2)) - c) <= 1e-12);
    }
}

TEST_CASE("positive homogeneity: per-neuron rescaling leaves relu output unchanged") {
    Rng rng(29);
    Matrix x = random_matrix(40, 3, rng);
    Matrix y = Matrix::uninitialized(40, 1);
    for (std::size_t i = 0; i < 40; ++i) y(i, 0) = std::sin(x(i, 0)) + x(i, 1) * x(i, 2);

    FitConfig cfg;
    cfg.layer_widths = {16};
    cfg.activation = Activation::relu();
    cfg.seed = 9;
    SampledNetwork net = fit(x, y, cfg);

    Matrix probes = random_matrix(200, 3, rng, -1.5, 1.5);
    const Matrix before = forward(net, probes);

    SampledNetwork scaled = net;
    for (std::size_t i = 0; i < 16; ++i) {
        const double omega = rng.uniform(0.05, 10.0);
        for (std::size_t j = 0; j < 3; ++j) scaled.hidden[0].weights(i, j) *= omega;
        scaled.hidden[0].biases[i] *= omega;
        scaled.output_weights(0, i) /= omega;
    }
    const Matrix after = forward(scaled, probes);
    for (std::size_t i = 0; i < probes.rows(); ++i)
        CHECK(std::fabs(after(i, 0) - before(i, 0)) <= 1e-12);
}
