#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace perhamm {

/// Gauss-Legendre rule mapped to [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// `count`-point Gauss-Legendre rule on [-1, 1]; cached per count.
const QuadratureRule& gauss_legendre(int count);

/// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int count, double a, double b);

/// Integrate `f` over [a, b] with the `count`-point Gauss-Legendre rule.
double integrate(const std::function<double(double)>& f, double a, double b, int count);

/// Chebyshev-Lobatto grid on [0, 1] with Clenshaw-Curtis weights and
/// barycentric interpolation weights. Nodes are sorted ascending and include
/// both endpoints.
class Grid {
public:
    /// Grid with `intervals` + 1 nodes. Requires intervals >= 2.
    static Grid chebyshev_lobatto(int intervals);

    std::size_t size() const { return nodes_.size(); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& barycentric() const { return barycentric_; }
    int intervals() const { return static_cast<int>(nodes_.size()) - 1; }

    /// Values of every Lagrange basis polynomial at x, written into `basis` (size()).
    void lagrange_basis(double x, std::span<double> basis) const;

    /// Global polynomial interpolant of `values` evaluated at x.
    double interpolate(std::span<const double> values, double x) const;

    /// Quadrature of the sampled function over [0, 1].
    double integrate(std::span<const double> values) const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> barycentric_;
};

/// Local cubic Lagrange interpolation through the four nodes nearest x.
/// `nodes` must be sorted ascending with at least two entries.
double cubic_interpolate(std::span<const double> nodes, std::span<const double> values, double x);

/// Maximizer found by golden-section search on [a, b].
/// Returns (argmax, max) over every point evaluated, endpoints included.
std::pair<double, double> golden_section_max(const std::function<double(double)>& f, double a,
                                             double b, int iterations = 80);

/// Max of f over `resolution`+1 equispaced points of [0, 1], refined by three
/// golden-section passes around the best grid point. Grid points are scanned
/// in index order so ties resolve identically on every run.
std::pair<double, double> refined_grid_max(const std::function<double(double)>& f, int resolution);

}  // namespace perhamm
