#pragma once

#include <span>
#include <vector>

#include "perhamm/kernels.hpp"
#include "perhamm/quadrature.hpp"

namespace perhamm {

/// Dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    /// out = this * x
    void multiply(std::span<const double> x, std::span<double> out) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Product-integration Nystrom discretization of w -> int_0^1 d^l k/dt^l (t, s) w(s) ds
/// on a Chebyshev-Lobatto grid: w is replaced by its polynomial interpolant and
/// each kernel branch is integrated against the Lagrange basis with
/// Gauss-Legendre on [0, t_q] and [t_q, 1] separately.
class NystromOperator {
public:
    /// `quad_nodes` <= 0 selects grid.intervals()/2 + 16 nodes per half.
    NystromOperator(const Kernel& kernel, Grid grid, int quad_nodes = 0);

    const Grid& grid() const { return grid_; }
    int order() const { return static_cast<int>(levels_.size()) - 1; }

    /// Weight matrix of derivative level l: (L^(l) w)(t_q) = sum_j W(q, j) w(t_j).
    const Matrix& weights(int level) const;

    void apply(int level, std::span<const double> w, std::span<double> out) const {
        weights(level).multiply(w, out);
    }

private:
    Grid grid_;
    std::vector<Matrix> levels_;
};

}  // namespace perhamm
