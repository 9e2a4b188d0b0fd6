#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace xisis {

/// Dense column-major matrix: column k is contiguous, which is the access
/// pattern of marginal screening.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t k) { return data_[k * rows_ + i]; }
    double operator()(std::size_t i, std::size_t k) const { return data_[k * rows_ + i]; }

    std::span<double> column(std::size_t k) { return {data_.data() + k * rows_, rows_}; }
    std::span<const double> column(std::size_t k) const { return {data_.data() + k * rows_, rows_}; }

    const std::vector<double>& data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace xisis
