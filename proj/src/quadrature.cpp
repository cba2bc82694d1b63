#include "perhamm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "perhamm/errors.hpp"

namespace perhamm {

namespace {

QuadratureRule compute_gauss_legendre(int count) {
    QuadratureRule rule;
    if (count == 1) {
        rule.nodes = {0.0};
        rule.weights = {2.0};
        return rule;
    }
    rule.nodes.resize(count);
    rule.weights.resize(count);
    const int half = (count + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration on P_n from the Chebyshev initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= count; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = count * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged root for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= count; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = count * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[count - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[count - 1 - i] = w;
    }
    if (count % 2 == 1) {
        rule.nodes[count / 2] = 0.0;
    }
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int count) {
    if (count < 1) {
        throw ArgumentError("Gauss-Legendre rule needs at least one node");
    }
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(count);
    if (it == cache.end()) {
        it = cache.emplace(count, compute_gauss_legendre(count)).first;
    }
    return it->second;
}

QuadratureRule gauss_legendre(int count, double a, double b) {
    const QuadratureRule& ref = gauss_legendre(count);
    QuadratureRule rule;
    rule.nodes.resize(ref.nodes.size());
    rule.weights.resize(ref.weights.size());
    const double half = 0.5 * (b - a);
    const double centre = 0.5 * (a + b);
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
        rule.nodes[i] = centre + half * ref.nodes[i];
        rule.weights[i] = half * ref.weights[i];
    }
    return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b, int count) {
    if (b <= a) {
        return 0.0;
    }
    const QuadratureRule& ref = gauss_legendre(count);
    const double half = 0.5 * (b - a);
    const double centre = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
        sum += ref.weights[i] * f(centre + half * ref.nodes[i]);
    }
    return half * sum;
}

Grid Grid::chebyshev_lobatto(int intervals) {
    if (intervals < 2) {
        throw ArgumentError("Chebyshev-Lobatto grid needs at least 2 intervals");
    }
    const int n = intervals;
    Grid grid;
    grid.nodes_.resize(n + 1);
    grid.weights_.assign(n + 1, 0.0);
    grid.barycentric_.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        grid.nodes_[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * j / n));
        grid.barycentric_[j] = (j % 2 == 0 ? 1.0 : -1.0) * ((j == 0 || j == n) ? 0.5 : 1.0);
    }
    grid.nodes_.front() = 0.0;
    grid.nodes_.back() = 1.0;
    if (n % 2 == 0) {
        grid.nodes_[n / 2] = 0.5;
    }

    // Clenshaw-Curtis weights on [-1, 1], halved for [0, 1].
    for (int j = 0; j <= n; ++j) {
        double v = 1.0;
        for (int k = 1; k <= n / 2; ++k) {
            const double b = (2 * k == n) ? 1.0 : 2.0;
            v -= b * std::cos(2.0 * k * j * std::numbers::pi / n) / (4.0 * k * k - 1.0);
        }
        const double c = (j == 0 || j == n) ? 1.0 : 2.0;
        grid.weights_[j] = 0.5 * c * v / n;
    }
    return grid;
}

void Grid::lagrange_basis(double x, std::span<double> basis) const {
    const std::size_t n = nodes_.size();
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = x - nodes_[j];
        if (d == 0.0) {
            std::fill(basis.begin(), basis.end(), 0.0);
            basis[j] = 1.0;
            return;
        }
        basis[j] = barycentric_[j] / d;
        denom += basis[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        basis[j] /= denom;
    }
}

double Grid::interpolate(std::span<const double> values, double x) const {
    double num = 0.0;
    double denom = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        const double d = x - nodes_[j];
        if (d == 0.0) {
            return values[j];
        }
        const double c = barycentric_[j] / d;
        num += c * values[j];
        denom += c;
    }
    return num / denom;
}

double Grid::integrate(std::span<const double> values) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        sum += weights_[j] * values[j];
    }
    return sum;
}

double cubic_interpolate(std::span<const double> nodes, std::span<const double> values, double x) {
    const std::size_t n = nodes.size();
    if (n < 2 || values.size() != n) {
        throw ArgumentError("cubic_interpolate: need matching node/value arrays of size >= 2");
    }
    const std::size_t points = std::min<std::size_t>(4, n);
    const auto upper = std::lower_bound(nodes.begin(), nodes.end(), x);
    std::size_t centre = static_cast<std::size_t>(upper - nodes.begin());
    // Window [first, first + points) containing x, centred where possible.
    std::size_t first = centre >= points / 2 ? centre - points / 2 : 0;
    first = std::min(first, n - points);
    double result = 0.0;
    for (std::size_t a = first; a < first + points; ++a) {
        double basis = 1.0;
        for (std::size_t b = first; b < first + points; ++b) {
            if (b != a) {
                basis *= (x - nodes[b]) / (nodes[a] - nodes[b]);
            }
        }
        result += basis * values[a];
    }
    return result;
}

std::pair<double, double> golden_section_max(const std::function<double(double)>& f, double a,
                                             double b, int iterations) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double best_x = a;
    double best_f = f(a);
    auto consider = [&](double x, double fx) {
        if (fx > best_f) {
            best_f = fx;
            best_x = x;
        }
    };
    consider(b, f(b));
    double x1 = b - ratio * (b - a);
    double x2 = a + ratio * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    consider(x1, f1);
    consider(x2, f2);
    for (int i = 0; i < iterations && (b - a) > 1e-15; ++i) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
            consider(x1, f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
            consider(x2, f2);
        }
    }
    return {best_x, best_f};
}

std::pair<double, double> refined_grid_max(const std::function<double(double)>& f, int resolution) {
    const double h = 1.0 / resolution;
    double best_x = 0.0;
    double best_f = f(0.0);
    for (int k = 1; k <= resolution; ++k) {
        const double x = (k == resolution) ? 1.0 : k * h;
        const double fx = f(x);
        if (fx > best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    double half_width = h;
    for (int pass = 0; pass < 3; ++pass) {
        const double a = std::max(0.0, best_x - half_width);
        const double b = std::min(1.0, best_x + half_width);
        const auto [x, fx] = golden_section_max(f, a, b);
        if (fx > best_f) {
            best_f = fx;
            best_x = x;
        }
        half_width *= 0.1;
    }
    return {best_x, best_f};
}

}  // namespace perhamm
