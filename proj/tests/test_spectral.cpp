#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "perhamm/errors.hpp"
#include "perhamm/kernels.hpp"
#include "perhamm/nystrom.hpp"
#include "perhamm/spectral.hpp"

using namespace perhamm;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("Nystrom weights integrate the kernel against smooth functions") {
    Kernel k1 = builtin_kernel("green_2nd_dirichlet");
    NystromOperator op(k1, Grid::chebyshev_lobatto(64));
    const auto& nodes = op.grid().nodes();
    std::vector<double> w(nodes.size()), out(nodes.size()), dout(nodes.size());
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        w[q] = std::sin(pi * nodes[q]);
    }
    op.apply(0, w, out);
    op.apply(1, w, dout);
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        CHECK(std::abs(out[q] - std::sin(pi * nodes[q]) / (pi * pi)) < 1e-14);
        CHECK(std::abs(dout[q] - std::cos(pi * nodes[q]) / pi) < 1e-14);
    }
}

TEST_CASE("characteristic values of the builtin kernels") {
    EigenPair p1 = spectral_radius(builtin_kernel("green_2nd_dirichlet"));
    CHECK(std::abs(p1.characteristic_value - pi * pi) / (pi * pi) < 1e-10);
    CHECK(p1.residual <= 1e-9);
    CHECK(p1.spectral_radius * p1.characteristic_value == doctest::Approx(1.0));

    EigenPair p2 = spectral_radius(builtin_kernel("green_4th_beam"));
    CHECK(std::abs(p2.characteristic_value - std::pow(pi, 4)) / std::pow(pi, 4) < 1e-10);
    CHECK(p2.residual <= 1e-9);
}

TEST_CASE("eigenfunctions are normalised sines") {
    for (const char* name : {"green_2nd_dirichlet", "green_4th_beam"}) {
        EigenPair p = spectral_radius(builtin_kernel(name));
        double worst = 0.0;
        double top = 0.0;
        for (std::size_t q = 0; q < p.nodes.size(); ++q) {
            worst = std::max(worst, std::abs(p.eigenfunction[q] - std::sin(pi * p.nodes[q])));
            top = std::max(top, p.eigenfunction[q]);
            CHECK(p.eigenfunction[q] >= -1e-14);
        }
        CHECK(top == 1.0);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("the characteristic value is stable in the resolution") {
    Kernel k2 = builtin_kernel("green_4th_beam");
    double coarse = spectral_radius(k2, 50).characteristic_value;
    double fine = spectral_radius(k2, 400).characteristic_value;
    CHECK(std::abs(coarse - fine) / fine < 1e-10);
}

TEST_CASE("degenerate kernels are reported") {
    Kernel zero = kernel_from_expressions("zero", {{"0", "0", false, std::nullopt}});
    CHECK_THROWS_AS(spectral_radius(zero), DegenerateKernelError);
    CHECK_THROWS_AS(spectral_radius(builtin_kernel("green_2nd_dirichlet"), 8), ArgumentError);
}

TEST_CASE("positivity bound k >= c Phi_0 on a subinterval") {
    Kernel k1 = builtin_kernel("green_2nd_dirichlet");
    PositivityBound b = check_c7_prime(k1, 0.25, 0.75);
    CHECK(b.holds);
    // min over t in [1/4, 3/4] of min(t, 1 - t) is 1/4; the grid sees at least that.
    CHECK(b.c >= 0.25 - 1e-12);
    CHECK(b.c <= 0.26);

    PositivityBound whole = check_c7_prime(k1, 0.0, 1.0);
    CHECK(whole.c == doctest::Approx(0.0).epsilon(1e-12));

    Kernel bare = kernel_from_expressions("bare", {{"s*(1-t)", "t*(1-s)", false, std::nullopt}});
    CHECK_THROWS_AS(check_c7_prime(bare, 0.25, 0.75), ArgumentError);
    CHECK_THROWS_AS(check_c7_prime(k1, 0.75, 0.25), ArgumentError);
}
