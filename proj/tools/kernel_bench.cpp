// Compares the serial reference kernels against the OpenMP variants and
// checks that both produce bitwise-identical results.
#include <array>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "swim/kernels.hpp"
#include "swim/rng.hpp"

using namespace swim;
using kernels::Exec;

namespace {

using clock_type = std::chrono::steady_clock;

Matrix random_matrix(std::size_t m, std::size_t n, Rng& rng) {
    Matrix a = Matrix::uninitialized(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform(-1, 1);
    return a;
}

template <typename Fn>
double best_of(int repeats, Fn fn) {
    double best = 1e100;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = clock_type::now();
        fn();
        const double t = std::chrono::duration<double>(clock_type::now() - t0).count();
        if (t < best) best = t;
    }
    return best;
}

void report(const char* name, std::size_t m, std::size_t k, std::size_t n, double serial,
            double parallel, bool identical) {
    const double gflops = 2.0 * m * k * n / 1e9;
    std::printf("%-14s %6zux%-5zux%-5zu serial %8.4fs (%5.2f GF/s)  omp %8.4fs (%5.2f GF/s)  "
                "speedup %4.2fx  bitwise %s\n",
                name, m, k, n, serial, gflops / serial, parallel, gflops / parallel,
                serial / parallel, identical ? "equal" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    int repeats = 3;
    if (argc > 1) repeats = std::max(1, std::atoi(argv[1]));
    std::printf("kernel benchmark: %d repeats, %d threads\n", repeats, kernels::max_threads());

    Rng rng(1);
    const Activation act = Activation::tanh();

    const std::vector<std::array<std::size_t, 3>> shapes{
        {2000, 256, 256}, {4000, 512, 512}, {10000, 512, 512}};
    for (auto [m, k, n] : shapes) {
        Matrix a = random_matrix(m, k, rng);
        Matrix b = random_matrix(k, n, rng);
        Matrix cs, cp;
        const double ts = best_of(repeats, [&] { cs = kernels::matmul(a, b, Exec::Serial); });
        const double tp = best_of(repeats, [&] { cp = kernels::matmul(a, b, Exec::Parallel); });
        report("matmul", m, k, n, ts, tp, cs == cp);

        Matrix w = random_matrix(n, k, rng);
        std::vector<double> bias(n);
        for (auto& v : bias) v = rng.uniform(-1, 1);
        Matrix hs, hp;
        const double fs =
            best_of(repeats, [&] { hs = kernels::layer_forward(a, w, bias, act, Exec::Serial); });
        const double fp = best_of(
            repeats, [&] { hp = kernels::layer_forward(a, w, bias, act, Exec::Parallel); });
        report("layer_forward", m, k, n, fs, fp, hs == hp);
    }
    return 0;
}
