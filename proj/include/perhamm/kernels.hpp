#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perhamm/expr.hpp"

namespace perhamm {

using BivariateFn = std::function<double(double t, double s)>;
using ScalarFn = std::function<double(double)>;

/// Function of (t, s) on [0,1]^2 given by one branch below the diagonal
/// (s <= t) and one above it (s > t).
struct PiecewiseBivariate {
    BivariateFn lower;
    BivariateFn upper;
    /// Whether the branches may disagree on s = t.
    bool jump_allowed = false;

    /// On s = t the lower branch is used.
    double operator()(double t, double s) const { return s <= t ? lower(t, s) : upper(t, s); }
};

/// A kernel k(t, s) together with its t-derivatives up to `order()` and
/// optional dominating functions Phi_l(s) >= |d^l k / dt^l (t, s)|.
class Kernel {
public:
    /// Throws ArgumentError if `levels` is empty, a level below the top one
    /// allows a jump, or `dominators` is neither empty nor one per level.
    /// Empty std::function entries in `dominators` mean "no dominator".
    Kernel(std::string name, std::vector<PiecewiseBivariate> levels, std::vector<ScalarFn> dominators = {});

    const std::string& name() const { return name_; }
    int order() const { return static_cast<int>(levels_.size()) - 1; }
    const PiecewiseBivariate& level(int l) const;
    bool has_dominator(int l) const;
    double dominator(int l, double s) const;

private:
    std::string name_;
    std::vector<PiecewiseBivariate> levels_;
    std::vector<ScalarFn> dominators_;
};

/// d^level k / dt^level (t, s). Throws ArgumentError for a level outside [0, order].
double eval_kernel(const Kernel& kernel, int level, double t, double s);

/// "green_2nd_dirichlet": Green's function of -u'' with u(0) = u(1) = 0, order 1.
/// "green_4th_beam": Green's function of u'''' with u(0) = u''(0) = u(1) = u''(1) = 0, order 3.
/// Throws LookupError for other names.
Kernel builtin_kernel(std::string_view name);
const std::vector<std::string>& builtin_kernel_names();

/// Text form of one kernel level: branch expressions in t and s, plus an
/// optional dominator expression in s.
struct LevelSource {
    std::string lower;
    std::string upper;
    bool jump = false;
    std::optional<std::string> dominator;
    friend bool operator==(const LevelSource&, const LevelSource&) = default;
};

/// Kernel whose levels are parsed from expression text.
Kernel kernel_from_expressions(std::string name, const std::vector<LevelSource>& levels);

/// sup over t of the integral over s of |d^level k / dt^level (t, s)|.
///
/// The t-sup is taken on `resolution`+1 equispaced points refined by
/// golden-section search around the best point; each s-integral is split at
/// s = t (and at sign changes of the integrand) with `resolution`-point
/// Gauss-Legendre on every piece.
double kernel_constant(const Kernel& kernel, int level, int resolution = 200);

/// s-integral of |d^level k / dt^level (t, s)| for fixed t.
double kernel_row_integral(const Kernel& kernel, int level, double t, int resolution = 200);

/// max over t in [0, 1] of |gamma^(level)(t)| for a derivative stack
/// stack[l] = gamma^(l). Throws ArgumentError if the level is not provided.
double gamma_norm(std::span<const Expr> stack, int level, int resolution = 200);

/// Sampled checks of the structural kernel assumptions on a (samples+1)^2 grid.
struct KernelDiagnostics {
    double max_diagonal_jump = 0.0;    // over levels without jump_allowed
    double min_level0 = 0.0;           // most negative level-0 value
    double max_domination_excess = 0.0;  // max of |level| - Phi over levels with a dominator
    bool finite = true;
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};
KernelDiagnostics diagnose_kernel(const Kernel& kernel, int samples = 200);

}  // namespace perhamm
