#include "perhamm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "perhamm/errors.hpp"
#include "perhamm/quadrature.hpp"

namespace perhamm {

Kernel::Kernel(std::string name, std::vector<PiecewiseBivariate> levels, std::vector<ScalarFn> dominators)
    : name_(std::move(name)), levels_(std::move(levels)), dominators_(std::move(dominators)) {
    if (levels_.empty()) {
        throw ArgumentError("kernel '" + name_ + "' needs at least level 0");
    }
    for (std::size_t l = 0; l < levels_.size(); ++l) {
        if (!levels_[l].lower || !levels_[l].upper) {
            throw ArgumentError("kernel '" + name_ + "' level " + std::to_string(l) + " is missing a branch");
        }
        if (levels_[l].jump_allowed && l + 1 != levels_.size()) {
            throw ArgumentError("kernel '" + name_ + "': only the top level may jump across s = t");
        }
    }
    if (levels_.size() == 1 && levels_[0].jump_allowed) {
        throw ArgumentError("kernel '" + name_ + "': level 0 must be continuous across s = t");
    }
    if (!dominators_.empty() && dominators_.size() != levels_.size()) {
        throw ArgumentError("kernel '" + name_ + "': dominators must be given for every level or none");
    }
}

const PiecewiseBivariate& Kernel::level(int l) const {
    if (l < 0 || l > order()) {
        throw ArgumentError("kernel '" + name_ + "' has no derivative level " + std::to_string(l));
    }
    return levels_[l];
}

bool Kernel::has_dominator(int l) const {
    return l >= 0 && l < static_cast<int>(dominators_.size()) && static_cast<bool>(dominators_[l]);
}

double Kernel::dominator(int l, double s) const {
    if (!has_dominator(l)) {
        throw ArgumentError("kernel '" + name_ + "' has no dominator for level " + std::to_string(l));
    }
    return dominators_[l](s);
}

double eval_kernel(const Kernel& kernel, int level, double t, double s) { return kernel.level(level)(t, s); }

namespace {

Kernel make_green_2nd_dirichlet() {
    std::vector<PiecewiseBivariate> levels{
        {[](double t, double s) { return s * (1.0 - t); },
         [](double t, double s) { return t * (1.0 - s); }, false},
        {[](double, double s) { return -s; }, [](double, double s) { return 1.0 - s; }, true},
    };
    std::vector<ScalarFn> dominators{
        [](double s) { return s * (1.0 - s); },
        [](double s) { return std::abs(s - 0.5) + 0.5; },
    };
    return Kernel("green_2nd_dirichlet", std::move(levels), std::move(dominators));
}

Kernel make_green_4th_beam() {
    std::vector<PiecewiseBivariate> levels{
        {[](double t, double s) { return s * (1.0 - t) * (2.0 * t - s * s - t * t) / 6.0; },
         [](double t, double s) { return t * (1.0 - s) * (2.0 * s - t * t - s * s) / 6.0; }, false},
        {[](double t, double s) { return s * (-6.0 * t + s * s + 3.0 * t * t + 2.0) / 6.0; },
         [](double t, double s) { return (1.0 - s) * (-s * s + 2.0 * s - 3.0 * t * t) / 6.0; }, false},
        {[](double t, double s) { return s * (t - 1.0); }, [](double t, double s) { return t * (s - 1.0); },
         false},
        {[](double, double s) { return s; }, [](double, double s) { return s - 1.0; }, true},
    };
    const double c = std::sqrt(3.0) / 27.0;
    std::vector<ScalarFn> dominators{
        [c](double s) {
            if (s <= 0.5) {
                return c * s * std::pow(1.0 - s * s, 1.5);
            }
            return c * (1.0 - s) * std::pow(s, 1.5) * std::pow(2.0 - s, 1.5);
        },
        [](double s) { return s * (2.0 + s * s) / 6.0; },
        [](double s) { return s * (1.0 - s); },
        [](double s) { return std::abs(s - 0.5) + 0.5; },
    };
    return Kernel("green_4th_beam", std::move(levels), std::move(dominators));
}

// Integral of |f| over [a, b], split where f changes sign.
double abs_integral(const std::function<double(double)>& f, double a, double b, int nodes) {
    if (b <= a) {
        return 0.0;
    }
    constexpr int kScan = 64;
    std::vector<double> cuts{a};
    double x_prev = a;
    double f_prev = f(a);
    for (int k = 1; k <= kScan; ++k) {
        const double x = (k == kScan) ? b : a + (b - a) * k / kScan;
        const double fx = f(x);
        if ((f_prev < 0.0 && fx > 0.0) || (f_prev > 0.0 && fx < 0.0)) {
            double lo = x_prev;
            double hi = x;
            double flo = f_prev;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            cuts.push_back(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = fx;
    }
    cuts.push_back(b);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        total += std::abs(integrate(f, cuts[k], cuts[k + 1], nodes));
    }
    return total;
}

}  // namespace

Kernel builtin_kernel(std::string_view name) {
    if (name == "green_2nd_dirichlet") {
        return make_green_2nd_dirichlet();
    }
    if (name == "green_4th_beam") {
        return make_green_4th_beam();
    }
    throw LookupError("unknown builtin kernel '" + std::string(name) + "'");
}

const std::vector<std::string>& builtin_kernel_names() {
    static const std::vector<std::string> names{"green_2nd_dirichlet", "green_4th_beam"};
    return names;
}

Kernel kernel_from_expressions(std::string name, const std::vector<LevelSource>& levels) {
    std::vector<PiecewiseBivariate> parsed;
    std::vector<ScalarFn> dominators;
    bool any_dominator = false;
    for (const auto& level : levels) {
        const Expr lower = parse(level.lower);
        const Expr upper = parse(level.upper);
        for (const Expr* e : {&lower, &upper}) {
            const ExprInfo info = analyze(*e);
            if (!info.symbols.empty() || !info.point_evals.empty() || info.has_integral) {
                throw ArgumentError("kernel branch '" + to_string(*e) + "' may only use t and s");
            }
        }
        parsed.push_back({[lower](double t, double s) { return eval_bivariate(lower, t, s); },
                          [upper](double t, double s) { return eval_bivariate(upper, t, s); }, level.jump});
        if (level.dominator) {
            const Expr phi = parse(*level.dominator);
            const ExprInfo info = analyze(phi);
            if (info.uses_t || !info.symbols.empty() || !info.point_evals.empty() || info.has_integral) {
                throw ArgumentError("dominator '" + *level.dominator + "' may only use s");
            }
            dominators.emplace_back([phi](double s) { return eval_bivariate(phi, 0.0, s); });
            any_dominator = true;
        } else {
            dominators.emplace_back();
        }
    }
    if (!any_dominator) {
        dominators.clear();
    }
    return Kernel(std::move(name), std::move(parsed), std::move(dominators));
}

double kernel_row_integral(const Kernel& kernel, int level, double t, int resolution) {
    const PiecewiseBivariate& k = kernel.level(level);
    const double below = abs_integral([&](double s) { return k.lower(t, s); }, 0.0, t, resolution);
    const double above = abs_integral([&](double s) { return k.upper(t, s); }, t, 1.0, resolution);
    return below + above;
}

double kernel_constant(const Kernel& kernel, int level, int resolution) {
    kernel.level(level);
    if (resolution < 8) {
        throw ArgumentError("kernel_constant: resolution must be >= 8");
    }
    const auto [argmax, value] =
        refined_grid_max([&](double t) { return kernel_row_integral(kernel, level, t, resolution); }, resolution);
    return std::max(0.0, value);
}

double gamma_norm(std::span<const Expr> stack, int level, int resolution) {
    if (level < 0 || level >= static_cast<int>(stack.size())) {
        throw ArgumentError("gamma derivative of order " + std::to_string(level) + " not provided");
    }
    if (resolution < 1) {
        throw ArgumentError("gamma_norm: resolution must be >= 1");
    }
    const Expr& g = stack[level];
    const PointValues none;
    const auto [argmax, value] =
        refined_grid_max([&](double t) { return std::abs(eval_point(g, t, none)); }, resolution);
    return value;
}

KernelDiagnostics diagnose_kernel(const Kernel& kernel, int samples) {
    KernelDiagnostics d;
    for (int l = 0; l <= kernel.order(); ++l) {
        const PiecewiseBivariate& k = kernel.level(l);
        for (int a = 0; a <= samples; ++a) {
            const double t = static_cast<double>(a) / samples;
            if (!k.jump_allowed) {
                d.max_diagonal_jump = std::max(d.max_diagonal_jump, std::abs(k.lower(t, t) - k.upper(t, t)));
            }
            for (int b = 0; b <= samples; ++b) {
                const double s = static_cast<double>(b) / samples;
                const double lo = k.lower(t, s);
                const double up = k.upper(t, s);
                if (!std::isfinite(lo) || !std::isfinite(up)) {
                    d.finite = false;
                    continue;
                }
                const double v = k(t, s);
                if (l == 0) {
                    d.min_level0 = std::min(d.min_level0, v);
                }
                if (kernel.has_dominator(l)) {
                    d.max_domination_excess =
                        std::max(d.max_domination_excess, std::abs(v) - kernel.dominator(l, s));
                }
            }
        }
    }
    std::ostringstream msg;
    if (!d.finite) {
        d.problems.emplace_back("kernel '" + kernel.name() + "' evaluates to a non-finite value");
    }
    if (d.max_diagonal_jump > 1e-12) {
        msg << "kernel '" << kernel.name() << "' jumps across s = t by " << d.max_diagonal_jump
            << " on a level that must be continuous";
        d.problems.push_back(msg.str());
        msg.str("");
    }
    if (d.min_level0 < -1e-14) {
        msg << "kernel '" << kernel.name() << "' is negative (" << d.min_level0 << ") at level 0";
        d.problems.push_back(msg.str());
        msg.str("");
    }
    if (d.max_domination_excess > 1e-10) {
        msg << "kernel '" << kernel.name() << "' exceeds its dominator by " << d.max_domination_excess;
        d.problems.push_back(msg.str());
    }
    return d;
}

}  // namespace perhamm
