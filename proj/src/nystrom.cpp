#include "perhamm/nystrom.hpp"

#include "perhamm/errors.hpp"

namespace perhamm {

void Matrix::multiply(std::span<const double> x, std::span<double> out) const {
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* a = data_.data() + r * cols_;
        double sum = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) {
            sum += a[c] * x[c];
        }
        out[r] = sum;
    }
}

NystromOperator::NystromOperator(const Kernel& kernel, Grid grid, int quad_nodes) : grid_(std::move(grid)) {
    const std::size_t n = grid_.size();
    if (quad_nodes <= 0) {
        quad_nodes = grid_.intervals() / 2 + 16;
    }
    const QuadratureRule& ref = gauss_legendre(quad_nodes);
    levels_.assign(kernel.order() + 1, Matrix(n, n));
    std::vector<double> basis(n);
    std::vector<double> kvals(kernel.order() + 1);

    for (std::size_t q = 0; q < n; ++q) {
        const double t = grid_.nodes()[q];
        for (int half = 0; half < 2; ++half) {
            const double a = half == 0 ? 0.0 : t;
            const double b = half == 0 ? t : 1.0;
            if (b <= a) {
                continue;
            }
            const double scale = 0.5 * (b - a);
            const double centre = 0.5 * (a + b);
            for (std::size_t g = 0; g < ref.nodes.size(); ++g) {
                const double s = centre + scale * ref.nodes[g];
                const double w = scale * ref.weights[g];
                for (int l = 0; l <= kernel.order(); ++l) {
                    const PiecewiseBivariate& k = kernel.level(l);
                    kvals[l] = w * (half == 0 ? k.lower(t, s) : k.upper(t, s));
                }
                grid_.lagrange_basis(s, basis);
                for (int l = 0; l <= kernel.order(); ++l) {
                    auto row = levels_[l].row(q);
                    const double kv = kvals[l];
                    for (std::size_t j = 0; j < n; ++j) {
                        row[j] += kv * basis[j];
                    }
                }
            }
        }
    }
}

const Matrix& NystromOperator::weights(int level) const {
    if (level < 0 || level > order()) {
        throw ArgumentError("Nystrom operator has no derivative level " + std::to_string(level));
    }
    return levels_[level];
}

}  // namespace perhamm
