#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perhamm/nystrom.hpp"
#include "perhamm/solution.hpp"
#include "perhamm/system.hpp"
#include "perhamm/verify.hpp"

namespace perhamm {

/// Precomputed discretization of the operator T for one system on a
/// Chebyshev-Lobatto grid with `resolution` intervals.
class Discretization {
public:
    Discretization(const SystemSpec& spec, int resolution);

    const Grid& grid() const { return grid_; }
    int resolution() const { return grid_.intervals(); }
    const NystromOperator& op(int component) const { return ops_[component - 1]; }
    /// gamma_ij^(l) at the grid nodes.
    const std::vector<double>& gamma(int component, std::size_t term, int level) const {
        return gammas_[component - 1][term][level];
    }

private:
    Grid grid_;
    std::vector<NystromOperator> ops_;
    std::vector<std::vector<std::vector<std::vector<double>>>> gammas_;
};

/// T u on the discretization grid, every derivative level computed from the
/// corresponding derivative kernel. Level-0 grids of u are projected onto the
/// cone before f is evaluated, and level-0 outputs are clamped at 0; the
/// largest clamp is stored in `clamp`. `residual` holds ||u - T u||.
DiscreteSolution apply_T(const SystemSpec& spec, const Discretization& disc, const DiscreteSolution& u);

/// Same, building a discretization on u's grid.
DiscreteSolution apply_T(const SystemSpec& spec, const DiscreteSolution& u);

/// u <- (1 - damping) u + damping T u until ||u - T u|| <= tol.
/// Throws DivergenceError if the norm exceeds 1e12 or becomes non-finite.
DiscreteSolution solve_fixed_point(const SystemSpec& spec, const Discretization& disc,
                                   const DiscreteSolution& initial, double damping, int max_iter, double tol);

struct SolveOptions {
    int resolution = 200;
    double tol = 1e-10;
    int max_iter = 10000;
    double damping = 1.0;
};

struct StartOutcome {
    int index = 0;
    std::string profile;  // "constant" or "eigenfunction"
    double initial_norm = 0.0;
    double damping = 1.0;
    bool converged = false;
    int iterations = 0;
    double final_norm = 0.0;
    double residual = 0.0;
    std::string error;
};

struct FixedPoint {
    DiscreteSolution solution;
    /// -1 for the trivial solution, found by applying T to 0.
    int start = 0;
    bool in_annulus = false;
};

struct MultistartResult {
    std::vector<FixedPoint> fixed_points;  // distinct, in start order
    std::vector<StartOutcome> starts;
};

/// Damped Picard iteration from `starts` initial iterates with norms
/// log-spaced in [hyp.r, hyp.R]: even starts are constant profiles, odd
/// starts scale the eigenfunction of component hyp.i0. Damping is halved (down
/// to 1/64) after a divergence. Fixed points closer than 10 tol are merged.
/// The zero function is reported first when it is a fixed point.
MultistartResult solve_multistart(const SystemSpec& spec, const ExistenceHypotheses& hyp, int starts,
                                  std::uint64_t seed, const SolveOptions& options = {});

/// ||u - T u|| with u interpolated onto a grid of twice the resolution.
double refined_residual(const SystemSpec& spec, const DiscreteSolution& u);

}  // namespace perhamm
