#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "swim/error.hpp"

namespace swim {

/// Dense row-major matrix of 64-bit floats. The only shape the project needs:
/// data points are rows, features/neurons are columns.
class Matrix {
public:
    Matrix() = default;

    /// Zero-initialized rows x cols matrix.
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    /// Construct from user-supplied row-major data. Rejects non-finite entries.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw Error("matrix: data length " + std::to_string(data_.size()) +
                        " does not match shape " + shape_str());
        }
        require_finite("matrix construction");
    }

    /// Nested-list literal, handy in tests: Matrix{{1,2},{3,4}}.
    Matrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw Error("matrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
        require_finite("matrix construction");
    }

    /// Uninitialized storage for kernel outputs; contents must be overwritten.
    static Matrix uninitialized(std::size_t rows, std::size_t cols) {
        Matrix m;
        m.rows_ = rows;
        m.cols_ = cols;
        m.data_.resize(rows * cols);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    void require_finite(const std::string& where) const {
        if (!all_finite()) throw Error(where + ": non-finite entry in " + shape_str() + " matrix");
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline bool rows_equal(const Matrix& m, std::size_t i, std::size_t j) {
    const double* a = m.data() + i * m.cols();
    const double* b = m.data() + j * m.cols();
    for (std::size_t k = 0; k < m.cols(); ++k)
        if (a[k] != b[k]) return false;
    return true;
}

}  // namespace swim
