#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "perhamm/errors.hpp"
#include "perhamm/expr.hpp"
#include "perhamm/solution.hpp"

using namespace perhamm;

namespace {

double at(const std::string& text, double t = 0.0, const PointValues& v = {}) {
    return eval_point(parse(text), t, v);
}

// Random well-formed expression text over t, u1, u1', u2.
std::string random_text(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 3);
    switch (pick(rng)) {
        case 0: return std::to_string(std::uniform_int_distribution<int>(0, 9)(rng));
        case 1: return "t";
        case 2: return "u1'";
        case 3: return "u2";
        case 4: return "(" + random_text(rng, depth - 1) + " + " + random_text(rng, depth - 1) + ")";
        case 5: return random_text(rng, depth - 1) + " - " + random_text(rng, depth - 1);
        case 6: return random_text(rng, depth - 1) + "*" + random_text(rng, depth - 1);
        case 7: return "-" + random_text(rng, depth - 1);
        case 8: return "sin(" + random_text(rng, depth - 1) + ")";
        default: return "(" + random_text(rng, depth - 1) + ")^2";
    }
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
    CHECK(at("1 + 2*3") == 7.0);
    CHECK(at("(1 + 2)*3") == 9.0);
    CHECK(at("2^3^2") == 512.0);
    CHECK(at("-2^2") == -4.0);
    CHECK(at("1/4 + 3/4") == 1.0);
    CHECK(at("8 - 3 - 2") == 3.0);
    CHECK(at("2*t - 1", 0.75) == 0.5);
    CHECK(at("1e-3*1000") == doctest::Approx(1.0));
    CHECK(at("sin(pi/2) + cos(0) + exp(0) + sqrt(4) + abs(-1)") == doctest::Approx(6.0));
    CHECK(at("e") == doctest::Approx(std::numbers::e));
}

TEST_CASE("symbols and derivative ticks") {
    PointValues v;
    v.set({1, 0}, 2.0);
    v.set({1, 1}, -1.0);
    v.set({2, 3}, 0.5);
    CHECK(at("u1*u1' + u2'''", 0.0, v) == -1.5);
    CHECK(at("u1^2*(2 - t*sin(u1'))", 0.0, v) == 8.0);
    CHECK_THROWS_AS(at("u3"), ArgumentError);
}

TEST_CASE("parse errors carry the offending position") {
    auto position = [](const std::string& text) -> std::size_t {
        try {
            parse(text);
        } catch (const ParseError& err) {
            return err.position();
        }
        return std::string::npos;
    };
    CHECK(position("1 + ") == 4);
    CHECK(position("2 * (t") == 6);
    CHECK(position("foo(t)") == 0);
    CHECK(position("u0") == 0);
    CHECK(position("t $ 2") == 2);
    CHECK(position("u1(2)") != std::string::npos);
}

TEST_CASE("printing round-trips through the parser") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 2000; ++k) {
        Expr e = parse(random_text(rng, 4));
        Expr back = parse(to_string(e));
        REQUIRE_MESSAGE(back == e, to_string(e));
        CHECK(to_string(back) == to_string(e));
    }
    for (const char* text : {"u1'(1/4)^2 + u2''(3/4)^4", "int((u1' + u2''')^2)", "2^3^2", "(2^3)^2",
                             "-(t - 1)", "1 - (2 - 3)", "1/(2/3)", "u1(0.25)*cos(u1'(0.75)*u2''(0.25))^2"}) {
        Expr e = parse(text);
        CHECK(parse(to_string(e)) == e);
    }
}

TEST_CASE("structural analysis") {
    ExprInfo info = analyze(parse("u1'(1/4)^2 + int(t*u2'')"));
    CHECK(info.has_integral);
    CHECK_FALSE(info.nested_integral);
    CHECK(info.uses_t);
    CHECK_FALSE(info.t_outside_integral);
    CHECK_FALSE(info.symbol_outside_integral);
    CHECK(info.max_component == 2);
    REQUIRE(info.point_evals.size() == 1);
    CHECK(info.point_evals[0] == Symbol{1, 1});

    ExprInfo f = analyze(parse("u1^2*(2 - t*sin(u1' + u2''))"));
    CHECK(f.symbols.size() == 3);
    CHECK(f.t_outside_integral);
    CHECK_FALSE(f.has_integral);

    CHECK(analyze(parse("int(int(u1))")).nested_integral);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(at("1/0"), DomainError);
    CHECK_THROWS_AS(at("sqrt(-1)"), DomainError);
    CHECK(at("sqrt(-1e-12)") == 0.0);
    CHECK_THROWS_AS(at("exp(1000)"), DomainError);
    CHECK_THROWS_AS(eval_interval(parse("1/t"), Interval{-1.0, 1.0}, {}), DomainError);
}

TEST_CASE("interval evaluation") {
    BoxValues b;
    b.set({1, 0}, Interval{0.0, 1.0});
    b.set({1, 1}, Interval{-1.0, 1.0});
    b.set({2, 2}, Interval{-1.0, 1.0});
    b.set({2, 3}, Interval{-1.0, 1.0});
    b.set({2, 0}, Interval{0.0, 1.0});

    SUBCASE("sin and cos ranges are exact") {
        Interval s = eval_interval(parse("sin(u1')"), Interval{0.0, 1.0}, b);
        CHECK(s.lo == doctest::Approx(-std::sin(1.0)));
        CHECK(s.hi == doctest::Approx(std::sin(1.0)));
        Interval c = eval_interval(parse("cos(4*u1')"), Interval{0.0, 1.0}, b);
        CHECK(c.lo == -1.0);
        CHECK(c.hi == 1.0);
    }

    SUBCASE("integer powers of sign-changing intervals") {
        Interval sq = eval_interval(parse("u1'^2"), Interval{0.0, 1.0}, b);
        CHECK(sq.lo == 0.0);
        CHECK(sq.hi == 1.0);
        Interval cube = eval_interval(parse("u1'^3"), Interval{0.0, 1.0}, b);
        CHECK(cube.lo == -1.0);
        CHECK(cube.hi == 1.0);
    }

    SUBCASE("bounds of the worked example nonlinearities") {
        Interval f1 = eval_interval(parse("u1^2*(2 - t*sin(u1' + u2''))"), Interval{0.0, 1.0}, b);
        CHECK(f1.hi <= 3.0 + 1e-15);
        Interval f2 = eval_interval(parse("sqrt(u2)*exp(t*(u1 + u2'''))"), Interval{0.0, 1.0}, b);
        CHECK(f2.hi == doctest::Approx(std::exp(2.0)));
    }

    SUBCASE("point evaluations stay inside random boxes") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        Expr e = parse("u2*(2 - t*cos(u1*u2''')) + u1'^3/(1 + u2^2)");
        for (int k = 0; k < 2000; ++k) {
            BoxValues box;
            PointValues point;
            Interval tb{0.0, 0.0};
            double a = unit(rng), c = unit(rng);
            tb = Interval{std::min(a, c), std::max(a, c)};
            for (Symbol s : {Symbol{1, 0}, Symbol{1, 1}, Symbol{2, 0}, Symbol{2, 3}}) {
                double lo = s.level == 0 ? 2.0 * unit(rng) : 4.0 * unit(rng) - 2.0;
                double hi = lo + unit(rng);
                box.set(s, Interval{lo, hi});
                point.set(s, lo + (hi - lo) * unit(rng));
            }
            Interval enc = eval_interval(e, tb, box);
            double x = eval_point(e, tb.lo + tb.width() * unit(rng), point);
            REQUIRE(enc.contains(x));
        }
    }
}

TEST_CASE("functionals on discrete solutions") {
    Grid g = Grid::chebyshev_lobatto(64);
    DiscreteSolution u = DiscreteSolution::zeros(g, {1, 3});
    for (std::size_t q = 0; q < g.size(); ++q) {
        double t = g.nodes()[q];
        u.levels[0][0][q] = t * (1.0 - t);
        u.levels[0][1][q] = 1.0 - 2.0 * t;
        u.levels[1][2][q] = t;
        u.levels[1][3][q] = 1.0;
    }
    CHECK(eval_functional(parse("u1(1/2)"), u) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(eval_functional(parse("u1'(1/4)^2 + u2''(3/4)^4"), u) ==
          doctest::Approx(0.25 + std::pow(0.75, 4)).epsilon(1e-12));
    CHECK(eval_functional(parse("int(u1)"), u) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(eval_functional(parse("int((u1' + u2''')^2)"), u) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("functional bounds over the cone ball") {
    std::vector<int> orders{1, 3};
    CHECK(bound_functional(parse("int((u1' + u2''')^2)"), 1.0, orders) == doctest::Approx(4.0));
    CHECK(bound_functional(parse("u1'(1/4)^2 + u2''(3/4)^4"), 1.0, orders) == doctest::Approx(2.0));
    CHECK(bound_functional(parse("u1(1/4)*cos(u1'(3/4)*u2''(1/4))^2"), 2.0, orders) == doctest::Approx(2.0));
    BoxValues box = cone_ball_box(orders, 0.5);
    REQUIRE(box.find({2, 3}) != nullptr);
    CHECK(*box.find({2, 3}) == Interval{-0.5, 0.5});
    CHECK(*box.find({1, 0}) == Interval{0.0, 0.5});
}
