#pragma once

#include <vector>

#include "perhamm/kernels.hpp"
#include "perhamm/nystrom.hpp"

namespace perhamm {

/// Dominant eigenvalue of L w(t) = int_0^1 k(t, s) w(s) ds and its nonnegative eigenfunction.
struct EigenPair {
    double spectral_radius = 0.0;
    /// 1 / spectral_radius
    double characteristic_value = 0.0;
    /// Eigenfunction at `nodes`, scaled so that its largest entry is +1.
    std::vector<double> eigenfunction;
    std::vector<double> nodes;
    /// max-norm of (A phi - r phi) for the discrete operator A.
    double residual = 0.0;
    int iterations = 0;
};

inline constexpr int kMaxPowerIterations = 100000;

/// Power iteration on the level-0 product-integration Nystrom matrix, started
/// from the all-ones vector, stopping when the Rayleigh quotient changes by at
/// most `tol`. Throws ConvergenceError after kMaxPowerIterations steps and
/// DegenerateKernelError if the radius is <= tol.
EigenPair spectral_radius(const Kernel& kernel, int resolution = 200, double tol = 1e-12);
EigenPair spectral_radius(const NystromOperator& op, double tol = 1e-12);

struct PositivityBound {
    /// Largest c in [0, 1] with k(t, s) >= c * Phi_0(s) on the sample grid.
    double c = 0.0;
    bool holds = false;
};

/// Grid check of k(t, s) >= c Phi_0(s) for t in [a, b], s in [0, 1], over
/// (resolution+1)^2 points, ignoring s where Phi_0(s) <= 1e-12.
/// Throws ArgumentError if the kernel has no level-0 dominator or the interval is invalid.
PositivityBound check_c7_prime(const Kernel& kernel, double a, double b, int resolution = 200);

}  // namespace perhamm
