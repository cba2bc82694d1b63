#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "perhamm/errors.hpp"
#include "perhamm/expr.hpp"
#include "perhamm/kernels.hpp"

using namespace perhamm;

namespace {

// Reference derivatives of the two Green's functions, written out by hand.
double ref_k1(int l, double t, double s) {
    if (l == 0) {
        return s <= t ? s * (1 - t) : t * (1 - s);
    }
    return s <= t ? -s : 1 - s;
}

double ref_k2(int l, double t, double s) {
    const bool low = s <= t;
    switch (l) {
        case 0: return low ? s * (1 - t) * (2 * t - s * s - t * t) / 6 : t * (1 - s) * (2 * s - t * t - s * s) / 6;
        case 1: return low ? s * (3 * t * t - 6 * t + 2 + s * s) / 6 : (1 - s) * (2 * s - 3 * t * t - s * s) / 6;
        case 2: return low ? s * (t - 1) : -t * (1 - s);
        default: return low ? s : s - 1;
    }
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15 * eps) {
        return left + right + (left + right - whole) / 15;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

double simpson(const std::function<double(double)>& f, double a, double b) {
    if (b <= a) {
        return 0.0;
    }
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return adaptive_simpson(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), 1e-13, 40);
}

// Brute-force sup over a dense t grid of the s-integral of |d^l k|.
double brute_constant(double (*k)(int, double, double), int l) {
    double best = 0.0;
    for (int q = 0; q <= 2000; ++q) {
        double t = q / 2000.0;
        auto g = [&](double s) { return std::abs(k(l, t, s)); };
        best = std::max(best, simpson(g, 0.0, t) + simpson(g, t, 1.0));
    }
    return best;
}

}  // namespace

TEST_CASE("builtin kernels match the reference formulas") {
    Kernel k1 = builtin_kernel("green_2nd_dirichlet");
    Kernel k2 = builtin_kernel("green_4th_beam");
    CHECK(k1.order() == 1);
    CHECK(k2.order() == 3);
    for (double t : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
        for (double s : {0.0, 0.05, 0.37, 0.6, 1.0}) {
            for (int l = 0; l <= 1; ++l) {
                CHECK(eval_kernel(k1, l, t, s) == doctest::Approx(ref_k1(l, t, s)).epsilon(1e-14));
            }
            for (int l = 0; l <= 3; ++l) {
                CHECK(eval_kernel(k2, l, t, s) == doctest::Approx(ref_k2(l, t, s)).epsilon(1e-14));
            }
        }
    }
    CHECK_THROWS_AS(eval_kernel(k1, 2, 0.5, 0.5), ArgumentError);
    CHECK_THROWS_AS(builtin_kernel("green_6th"), LookupError);
}

TEST_CASE("the reference formulas are t-derivatives of each other") {
    const double h = 1e-5;
    for (double t : {0.2, 0.45, 0.8}) {
        for (double s : {0.1, 0.6, 0.95}) {
            if (std::abs(s - t) < 0.05) {
                continue;
            }
            for (int l = 0; l < 3; ++l) {
                double fd = (ref_k2(l, t + h, s) - ref_k2(l, t - h, s)) / (2 * h);
                CHECK(fd == doctest::Approx(ref_k2(l + 1, t, s)).epsilon(1e-8));
            }
            double fd1 = (ref_k1(0, t + h, s) - ref_k1(0, t - h, s)) / (2 * h);
            CHECK(fd1 == doctest::Approx(ref_k1(1, t, s)).epsilon(1e-8));
        }
    }
}

TEST_CASE("Green's function property: the integral of k against 1 solves the BVP with f = 1") {
    Kernel k1 = builtin_kernel("green_2nd_dirichlet");
    Kernel k2 = builtin_kernel("green_4th_beam");
    for (double t : {0.0, 0.25, 0.5, 0.81, 1.0}) {
        CHECK(kernel_row_integral(k1, 0, t) == doctest::Approx(t * (1 - t) / 2).epsilon(1e-13));
        double beam = (t * t * t * t - 2 * t * t * t + t) / 24;
        CHECK(kernel_row_integral(k2, 0, t) == doctest::Approx(beam).epsilon(1e-13));
    }
}

TEST_CASE("kernel constants against brute force") {
    Kernel k1 = builtin_kernel("green_2nd_dirichlet");
    Kernel k2 = builtin_kernel("green_4th_beam");
    for (int l = 0; l <= 1; ++l) {
        CHECK(std::abs(kernel_constant(k1, l) - brute_constant(ref_k1, l)) < 1e-8);
    }
    for (int l = 0; l <= 3; ++l) {
        CHECK(std::abs(kernel_constant(k2, l) - brute_constant(ref_k2, l)) < 1e-8);
    }
    CHECK(kernel_constant(k2, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-10));
}

TEST_CASE("kernel constants are stable in the resolution") {
    Kernel k2 = builtin_kernel("green_4th_beam");
    for (int l = 0; l <= 3; ++l) {
        double coarse = kernel_constant(k2, l, 50);
        double fine = kernel_constant(k2, l, 400);
        CHECK(std::abs(coarse - fine) < 1e-10);
    }
    CHECK_THROWS_AS(kernel_constant(k2, 0, 4), ArgumentError);
}

TEST_CASE("gamma norms") {
    std::vector<Expr> stack{parse("1 - t"), parse("-1"), parse("0"), parse("0")};
    CHECK(gamma_norm(stack, 0) == 1.0);
    CHECK(gamma_norm(stack, 1) == 1.0);
    CHECK(gamma_norm(stack, 3) == 0.0);
    std::vector<Expr> wave{parse("sin(3*t)"), parse("3*cos(3*t)")};
    CHECK(gamma_norm(wave, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma_norm(wave, 1) == doctest::Approx(3.0));
    CHECK_THROWS_AS(gamma_norm(wave, 2), ArgumentError);
}

TEST_CASE("diagnostics accept the builtins and reject broken kernels") {
    for (const auto& name : builtin_kernel_names()) {
        KernelDiagnostics d = diagnose_kernel(builtin_kernel(name));
        CHECK_MESSAGE(d.ok(), name);
        CHECK(d.max_diagonal_jump < 1e-12);
        CHECK(d.max_domination_excess < 1e-10);
    }

    Kernel negative = kernel_from_expressions("neg", {{"-s*(1-t)", "-t*(1-s)", false, std::nullopt}});
    CHECK_FALSE(diagnose_kernel(negative).ok());

    Kernel jump = kernel_from_expressions("jump", {{"s", "1 + t", false, std::nullopt}});
    CHECK_FALSE(diagnose_kernel(jump).ok());

    Kernel loose = kernel_from_expressions("loose", {{"s*(1-t)", "t*(1-s)", false, "s*(1-s)/2"}});
    CHECK_FALSE(diagnose_kernel(loose).ok());

    CHECK_THROWS_AS(kernel_from_expressions("bad", {{"s", "t", true, std::nullopt}, {"1", "1", false, std::nullopt}}),
                    ArgumentError);
}

TEST_CASE("inline kernels reproduce the builtin ones") {
    Kernel inline_k1 = kernel_from_expressions(
        "k1", {{"s*(1 - t)", "t*(1 - s)", false, "s*(1 - s)"}, {"-s", "1 - s", true, "1"}});
    Kernel k1 = builtin_kernel("green_2nd_dirichlet");
    for (int l = 0; l <= 1; ++l) {
        CHECK(kernel_constant(inline_k1, l) == doctest::Approx(kernel_constant(k1, l)).epsilon(1e-14));
    }
}
