#pragma once

#include <vector>

#include "perhamm/quadrature.hpp"

namespace perhamm {

/// Grid samples of every component and derivative level of a candidate
/// solution u = (u_1, ..., u_n).
struct DiscreteSolution {
    Grid grid;
    /// levels[i][l][q] = u_{i+1}^{(l)}(grid.nodes()[q])
    std::vector<std::vector<std::vector<double>>> levels;
    double residual = 0.0;
    double norm = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Largest magnitude removed by projecting level-0 grids onto the cone.
    double clamp = 0.0;

    /// All-zero solution with `orders[i] + 1` levels for component i.
    static DiscreteSolution zeros(const Grid& grid, const std::vector<int>& orders);

    std::size_t components() const { return levels.size(); }
    int order(int component) const;  // 1-based component

    /// Grid of u_component^(level); throws ArgumentError when absent.
    const std::vector<double>& values(int component, int level) const;
    std::vector<double>& values(int component, int level);

    /// max over every stored grid of |value|
    double max_norm() const;
    /// Refresh `norm` from the stored grids.
    void update_norm() { norm = max_norm(); }
    /// Smallest level-0 value over all components.
    double cone_minimum() const;
};

/// max over components/levels/nodes of |a - b|; shapes must agree.
double distance(const DiscreteSolution& a, const DiscreteSolution& b);

/// Worst ratio of |FD(level l) - level l+1| to (h_local^2 * (1 + norm)) over
/// interior nodes and l < m_i, using the three-point nonuniform difference.
double derivative_coherence(const DiscreteSolution& u);

/// Resample every grid onto `target` by barycentric interpolation.
DiscreteSolution resample(const DiscreteSolution& u, const Grid& target);

}  // namespace perhamm
