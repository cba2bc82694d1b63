#include "perhamm/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "perhamm/errors.hpp"

namespace perhamm {

namespace {

// Scale so the entry of largest magnitude becomes +1; returns that entry.
double normalize(std::vector<double>& v) {
    double peak = 0.0;
    for (double x : v) {
        if (std::abs(x) > std::abs(peak)) {
            peak = x;
        }
    }
    if (peak != 0.0) {
        for (double& x : v) {
            x /= peak;
        }
    }
    return peak;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

}  // namespace

EigenPair spectral_radius(const NystromOperator& op, double tol) {
    if (!(tol > 0.0)) {
        throw ArgumentError("spectral_radius: tol must be > 0");
    }
    const Matrix& a = op.weights(0);
    const std::size_t n = op.grid().size();
    std::vector<double> x(n, 1.0);
    std::vector<double> y(n);
    double rayleigh = 0.0;
    int iteration = 0;
    bool converged = false;
    while (iteration < kMaxPowerIterations) {
        ++iteration;
        a.multiply(x, y);
        const double next = dot(x, y) / dot(x, x);
        if (normalize(y) == 0.0) {
            throw DegenerateKernelError("kernel operator maps the start vector to zero");
        }
        x.swap(y);
        const double change = std::abs(next - rayleigh);
        rayleigh = next;
        if (iteration > 1 && change <= tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw ConvergenceError("power iteration did not converge in " + std::to_string(kMaxPowerIterations) +
                               " steps");
    }
    if (rayleigh <= tol) {
        throw DegenerateKernelError("spectral radius " + std::to_string(rayleigh) + " is not positive");
    }

    EigenPair pair;
    pair.spectral_radius = rayleigh;
    pair.characteristic_value = 1.0 / rayleigh;
    pair.iterations = iteration;
    pair.nodes = op.grid().nodes();
    a.multiply(x, y);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        residual = std::max(residual, std::abs(y[i] - rayleigh * x[i]));
    }
    pair.residual = residual;
    pair.eigenfunction = std::move(x);
    return pair;
}

EigenPair spectral_radius(const Kernel& kernel, int resolution, double tol) {
    if (resolution < 16) {
        throw ArgumentError("spectral_radius: resolution must be >= 16");
    }
    return spectral_radius(NystromOperator(kernel, Grid::chebyshev_lobatto(resolution)), tol);
}

PositivityBound check_c7_prime(const Kernel& kernel, double a, double b, int resolution) {
    if (!kernel.has_dominator(0)) {
        throw ArgumentError("kernel '" + kernel.name() + "' has no level-0 dominator");
    }
    if (!(0.0 <= a && a < b && b <= 1.0)) {
        throw ArgumentError("check_c7_prime: need 0 <= a < b <= 1");
    }
    if (resolution < 1) {
        throw ArgumentError("check_c7_prime: resolution must be >= 1");
    }
    double ratio = 1.0;
    for (int i = 0; i <= resolution; ++i) {
        const double t = (i == resolution) ? b : a + (b - a) * i / resolution;
        for (int j = 0; j <= resolution; ++j) {
            const double s = static_cast<double>(j) / resolution;
            const double phi = kernel.dominator(0, s);
            if (phi <= 1e-12) {
                continue;
            }
            ratio = std::min(ratio, eval_kernel(kernel, 0, t, s) / phi);
        }
    }
    PositivityBound out;
    out.c = std::clamp(ratio, 0.0, 1.0);
    out.holds = out.c > 0.0;
    return out;
}

}  // namespace perhamm
