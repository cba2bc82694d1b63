#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "perhamm/errors.hpp"
#include "perhamm/expr.hpp"
#include "perhamm/problem.hpp"
#include "perhamm/verify.hpp"

using namespace perhamm;

namespace {

SystemSpec bundled_system(const char* name) { return build_system(parse_problem(bundled_problem(name))); }

const InequalityRecord& record(const VerificationReport& report, const std::string& name) {
    for (const auto& r : report.records) {
        if (r.name == name) {
            return r;
        }
    }
    FAIL("missing record " << name);
    throw std::logic_error("unreachable");
}

Term example2_term(int i) {
    Term term;
    term.eta = i == 1 ? 0.5 : 1.0 / 3.0;
    if (i == 1) {
        term.gamma = {parse("t"), parse("1")};
        term.functional = parse("u1(1/4)*cos(u1'(3/4)*u2''(1/4))^2");
    } else {
        term.gamma = {parse("1 - t"), parse("-1"), parse("0"), parse("0")};
        term.functional = parse("u2(3/4)*sin(u1'(1/4)*u2'''(3/4))^2");
    }
    return term;
}

SystemSpec example2(double lambda1) {
    SystemSpec spec;
    spec.components.push_back(Component{builtin_kernel("green_2nd_dirichlet"), lambda1,
                                        parse("u1*(2 - t*sin(u2*u1'))"), {example2_term(1)}, {}});
    spec.components.push_back(Component{builtin_kernel("green_4th_beam"), 5.0, parse("u2*(2 - t*cos(u1*u2'''))"),
                                        {example2_term(2)}, {}});
    return spec;
}

NonexistenceHypotheses example2_hypotheses() {
    NonexistenceHypotheses hyp;
    hyp.taus = {3.0, 3.0};
    hyp.xis = {{1.0}, {1.0}};
    return hyp;
}

InequalityRecord make(bool passed, bool definitive, Provenance p) {
    InequalityRecord r;
    r.passed = passed;
    r.definitive = definitive;
    r.provenance = p;
    return r;
}

}  // namespace

TEST_CASE("verdict combination") {
    using P = Provenance;
    CHECK(combine({}) == Verdict::Pass);
    CHECK(combine({make(true, true, P::Interval), make(true, true, P::Computed)}) == Verdict::Pass);
    CHECK(combine({make(true, true, P::Interval), make(false, true, P::Interval)}) == Verdict::Fail);
    CHECK(combine({make(true, true, P::Sampled)}) == Verdict::Inconclusive);
    CHECK(combine({make(false, false, P::Interval)}) == Verdict::Inconclusive);
    CHECK(combine({make(false, false, P::Interval), make(false, true, P::Computed)}) == Verdict::Fail);
    CHECK(combine({make(true, true, P::UserSupplied)}) == Verdict::Pass);
}

TEST_CASE("growth ratio bounds from the power factorisation") {
    std::vector<int> orders{1, 3};
    // f = x: f/x = 1
    CHECK(*growth_ratio_bound(parse("u1"), 1, orders, 0.5) == 1.0);
    // f = x^2 g: f/x -> 0 at x = 0
    CHECK(*growth_ratio_bound(parse("u1^2*(2 - t)"), 1, orders, 0.5) == 0.0);
    // f = sqrt(x) exp(t (u1 + u2''')): f/x >= exp(-r) / sqrt(r)
    double r = 1.0 / 1024;
    auto bound = growth_ratio_bound(parse("sqrt(u2)*exp(t*(u1 + u2'''))"), 2, orders, r);
    REQUIRE(bound);
    CHECK(*bound == doctest::Approx(std::exp(-r) / std::sqrt(r)).epsilon(1e-12));
    CHECK(growth_certified(parse("sqrt(u2)*exp(t*(u1 + u2'''))"), 2, orders, r, 31.0));
    CHECK_FALSE(growth_certified(parse("sqrt(u2)*exp(t*(u1 + u2'''))"), 2, orders, r, 33.0));
    // g may be negative: no factorisation bound
    CHECK_FALSE(growth_ratio_bound(parse("u1*(t - 1/2)"), 1, orders, 0.5));
}

TEST_CASE("growth bound is sound against sampling") {
    std::vector<int> orders{1, 3};
    Expr f = parse("sqrt(u2)*exp(t*(u1 + u2'''))");
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double r : {0.5, 1.0 / 64, 1.0 / 4096}) {
        double bound = *growth_ratio_bound(f, 2, orders, r);
        for (int k = 0; k < 20000; ++k) {
            PointValues v;
            v.set({1, 0}, r * unit(rng));
            v.set({1, 1}, r * (2 * unit(rng) - 1));
            v.set({2, 0}, r * (1 - unit(rng)));
            for (int l = 1; l <= 3; ++l) {
                v.set({2, l}, r * (2 * unit(rng) - 1));
            }
            double x = *v.find({2, 0});
            REQUIRE(eval_point(f, unit(rng), v) / x >= bound);
        }
    }
}

TEST_CASE("existence check on the first worked example") {
    SystemSpec spec = bundled_system("example1");
    ExistenceWindow window = search_existence_window(spec, 1.0, 2);
    REQUIRE(window.feasible);
    CHECK(window.r == std::ldexp(1.0, -18));
    CHECK(window.delta == doctest::Approx(512.0).epsilon(1e-4));
    CHECK(window.characteristic_value == doctest::Approx(std::pow(std::numbers::pi, 4)).epsilon(1e-10));

    ExistenceHypotheses hyp;
    hyp.r = window.r;
    hyp.delta = window.delta;
    hyp.i0 = 2;
    VerificationReport report = check_existence(spec, hyp);
    CHECK(report.verdict == Verdict::Pass);
    const double e2 = std::exp(2.0);
    CHECK(record(report, "outer_sphere_bound").lhs == doctest::Approx(e2 / 24 + 2.0 / 3.0).epsilon(1e-12));
    CHECK(record(report, "outer_sphere_bound").provenance == Provenance::Interval);
    CHECK(report.constants[1].kernel_constant_provenance[1] == Provenance::UserSupplied);
    CHECK(report.constants[1].kernel_constants_computed[1] == doctest::Approx(1.0 / 24));
    CHECK(*report.constants[0].f_bound == doctest::Approx(3.0));
    CHECK(*report.constants[1].f_bound == doctest::Approx(e2));
    CHECK(report.constants[0].functional_bounds[0] == doctest::Approx(4.0));
    CHECK(report.constants[1].functional_bounds[0] == doctest::Approx(2.0));
    CHECK(*report.constants[0].f_sampled_max <= *report.constants[0].f_bound);
    CHECK(*report.constants[1].f_sampled_max <= *report.constants[1].f_bound);

    SUBCASE("computed constants alone give the smaller left-hand side") {
        spec.components[1].constant_bounds.clear();
        VerificationReport plain = check_existence(spec, hyp);
        CHECK(record(plain, "outer_sphere_bound").lhs == doctest::Approx(0.95).epsilon(1e-12));
        CHECK(plain.verdict == Verdict::Pass);
    }

    SUBCASE("bounds below the computed constant are rejected") {
        spec.components[1].constant_bounds = {std::nullopt, 1.0 / 48};
        CHECK_THROWS_AS(check_existence(spec, hyp), ArgumentError);
    }

    SUBCASE("a large lambda_1 breaks the outer bound definitively") {
        spec.components[0].lambda = 1.0;
        VerificationReport big = check_existence(spec, hyp);
        CHECK(big.verdict == Verdict::Fail);
        CHECK_FALSE(record(big, "outer_sphere_bound").passed);
    }

    SUBCASE("a delta beyond the certified growth is not certified") {
        hyp.delta = 2 * window.delta;
        VerificationReport greedy = check_existence(spec, hyp);
        CHECK(record(greedy, "inner_growth").provenance == Provenance::Sampled);
        CHECK(greedy.verdict != Verdict::Pass);
    }

    SUBCASE("a small lambda_i0 fails the eigenvalue threshold") {
        spec.components[1].lambda = 0.1;
        VerificationReport small = check_existence(spec, hyp);
        CHECK_FALSE(record(small, "eigenvalue_threshold").passed);
        CHECK(small.verdict == Verdict::Fail);
    }
}

TEST_CASE("non-existence check on the second worked example") {
    VerificationReport report = check_nonexistence(example2(1.0), example2_hypotheses());
    CHECK(report.verdict == Verdict::Pass);
    CHECK(std::abs(record(report, "contraction").lhs - 0.875) < 1e-12);
    CHECK(record(report, "linear_domination_1").passed);
    CHECK(record(report, "functional_bound_2_1").passed);

    VerificationReport two = check_nonexistence(example2(2.0), example2_hypotheses());
    CHECK(two.verdict == Verdict::Fail);
    CHECK(std::abs(record(two, "contraction").lhs - 1.25) < 1e-12);

    VerificationReport three = check_nonexistence(example2(3.0), example2_hypotheses());
    CHECK(three.verdict == Verdict::Fail);
    CHECK(std::abs(record(three, "contraction").lhs - 1.625) < 1e-12);
}

TEST_CASE("non-existence left-hand side grows with lambda") {
    double previous = 0.0;
    for (double lambda : {0.1, 0.5, 1.0, 1.5, 2.5}) {
        double lhs = record(check_nonexistence(example2(lambda), example2_hypotheses()), "contraction").lhs;
        CHECK(lhs >= previous);
        previous = lhs;
    }
}

TEST_CASE("tau below the true growth fails the domination record") {
    NonexistenceHypotheses hyp = example2_hypotheses();
    hyp.taus = {2.5, 3.0};
    VerificationReport report = check_nonexistence(example2(1.0), hyp);
    CHECK_FALSE(record(report, "linear_domination_1").passed);
    CHECK(report.verdict == Verdict::Fail);
}

TEST_CASE("functionals without a linear bound") {
    SystemSpec spec = example2(1.0);
    spec.components[0].terms[0].functional = parse("u1(1/2)^2");
    VerificationReport report = check_nonexistence(spec, example2_hypotheses());
    CHECK_FALSE(record(report, "functional_bound_1_1").passed);
    CHECK(report.verdict == Verdict::Inconclusive);

    NonexistenceHypotheses attested = example2_hypotheses();
    attested.attest_functionals = true;
    CHECK(check_nonexistence(spec, attested).verdict == Verdict::Pass);
}

TEST_CASE("custom functionals") {
    SystemSpec spec = example2(1.0);
    Functional::Custom custom;
    custom.name = "half-max";
    custom.evaluate = [](const DiscreteSolution&) { return 0.0; };
    custom.bound = [](double rho) { return 0.5 * rho; };
    custom.linear_constant = 0.5;
    spec.components[0].terms[0].functional = Functional(custom);
    VerificationReport report = check_nonexistence(spec, example2_hypotheses());
    CHECK(record(report, "functional_bound_1_1").passed);
    CHECK(report.verdict == Verdict::Pass);

    custom.linear_constant.reset();
    spec.components[0].terms[0].functional = Functional(custom);
    CHECK(check_nonexistence(spec, example2_hypotheses()).verdict == Verdict::Inconclusive);
}

TEST_CASE("malformed hypotheses") {
    SystemSpec spec = example2(1.0);
    NonexistenceHypotheses hyp = example2_hypotheses();
    hyp.taus = {3.0};
    CHECK_THROWS_AS(check_nonexistence(spec, hyp), ArgumentError);
    ExistenceHypotheses bad;
    bad.r = 2.0;
    bad.R = 1.0;
    CHECK_THROWS_AS(check_existence(spec, bad), ArgumentError);
    bad.r = 0.1;
    bad.i0 = 3;
    CHECK_THROWS_AS(check_existence(spec, bad), ArgumentError);
}
