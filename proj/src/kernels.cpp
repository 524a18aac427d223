#include "swim/kernels.hpp"

#include <omp.h>

#include <atomic>
#include <cstdint>

namespace swim::kernels {

namespace {
std::atomic<int> g_threads{0};

int threads_for(Exec exec) {
    if (exec == Exec::Serial) return 1;
    const int n = g_threads.load();
    return n > 0 ? n : omp_get_max_threads();
}
}  // namespace

void set_threads(int n) { g_threads.store(n); }

int max_threads() {
    const int n = g_threads.load();
    return n > 0 ? n : omp_get_max_threads();
}

Matrix matmul(const Matrix& a, const Matrix& b, Exec exec) {
    if (a.cols() != b.rows()) {
        throw Error("matmul: inner dimensions disagree: " + a.shape_str() + " * " +
                    b.shape_str());
    }
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    Matrix c(m, n);  // zero-initialized; accumulated in place
    const double* ap = a.data();
    const double* bp = b.data();
    double* cp = c.data();
    const std::int64_t mi = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) num_threads(threads_for(exec))
    for (std::int64_t i = 0; i < mi; ++i) {
        double* crow = cp + i * n;
        const double* arow = ap + i * k;
        for (std::size_t p = 0; p < k; ++p) {
            const double av = arow[p];
            const double* brow = bp + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b, Exec exec) {
    if (a.cols() != b.cols()) {
        throw Error("matmul_nt: inner dimensions disagree: " + a.shape_str() + " * " +
                    b.shape_str() + "^T");
    }
    const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
    Matrix c = Matrix::uninitialized(m, n);
    const double* ap = a.data();
    const double* bp = b.data();
    double* cp = c.data();
    const std::int64_t mi = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) num_threads(threads_for(exec))
    for (std::int64_t i = 0; i < mi; ++i) {
        const double* arow = ap + i * k;
        double* crow = cp + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            const double* brow = bp + j * k;
            double acc = 0.0;
            for (std::size_t p = 0; p < k; ++p) acc += arow[p] * brow[p];
            crow[j] = acc;
        }
    }
    return c;
}

namespace {

template <typename Post>
Matrix affine_nt(const Matrix& x, const Matrix& w, const std::vector<double>& b, Exec exec,
                 Post post, const char* what) {
    if (x.cols() != w.cols()) {
        throw Error(std::string(what) + ": input width " + std::to_string(x.cols()) +
                    " does not match layer input size " + std::to_string(w.cols()));
    }
    if (b.size() != w.rows()) {
        throw Error(std::string(what) + ": bias length " + std::to_string(b.size()) +
                    " does not match neuron count " + std::to_string(w.rows()));
    }
    const std::size_t m = x.rows(), k = x.cols(), n = w.rows();
    Matrix c = Matrix::uninitialized(m, n);
    const double* xp = x.data();
    const double* wp = w.data();
    const double* bp = b.data();
    double* cp = c.data();
    const std::int64_t mi = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) num_threads(threads_for(exec))
    for (std::int64_t i = 0; i < mi; ++i) {
        const double* xrow = xp + i * k;
        double* crow = cp + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            const double* wrow = wp + j * k;
            double acc = 0.0;
            for (std::size_t p = 0; p < k; ++p) acc += xrow[p] * wrow[p];
            crow[j] = post(acc - bp[j]);
        }
    }
    return c;
}

}  // namespace

Matrix layer_forward(const Matrix& x, const Matrix& w, const std::vector<double>& b,
                     const Activation& act, Exec exec) {
    switch (act.kind) {
        case ActKind::Relu:
            return affine_nt(x, w, b, exec, [](double v) { return v > 0.0 ? v : 0.0; },
                             "layer_forward");
        case ActKind::Tanh:
            return affine_nt(x, w, b, exec, [](double v) { return std::tanh(v); },
                             "layer_forward");
        case ActKind::Sine:
            return affine_nt(x, w, b, exec, [](double v) { return std::sin(v); },
                             "layer_forward");
    }
    throw Error("layer_forward: unknown activation");
}

Matrix output_forward(const Matrix& x, const Matrix& w, const std::vector<double>& b,
                      Exec exec) {
    return affine_nt(x, w, b, exec, [](double v) { return v; }, "output_forward");
}

}  // namespace swim::kernels
