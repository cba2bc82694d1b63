#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "perhamm/interval.hpp"

namespace perhamm {

struct DiscreteSolution;

/// u_component^(level); component is 1-based.
struct Symbol {
    int component = 1;
    int level = 0;
    friend bool operator==(const Symbol&, const Symbol&) = default;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Sin, Cos, Exp, Sqrt, Abs };
enum class Variable { T, S };

class Expr;

namespace ast {
struct Number {
    double value;
};
struct Var {
    Variable which;
};
struct Sym {
    Symbol symbol;
};
/// u_i^(l)(at) for a constant at in [0, 1]
struct PointEval {
    Symbol symbol;
    double at;
};
struct Negate {
    std::shared_ptr<const Expr> operand;
};
struct Binary {
    BinaryOp op;
    std::shared_ptr<const Expr> lhs;
    std::shared_ptr<const Expr> rhs;
};
struct Call {
    Function fn;
    std::shared_ptr<const Expr> arg;
};
/// int(body) = integral of body over t in [0, 1]
struct Integral {
    std::shared_ptr<const Expr> body;
};
using Node = std::variant<Number, Var, Sym, PointEval, Negate, Binary, Call, Integral>;
}  // namespace ast

/// Immutable expression tree. Copies share structure.
class Expr {
public:
    explicit Expr(ast::Node node) : node_(std::make_shared<const ast::Node>(std::move(node))) {}

    const ast::Node& node() const { return *node_; }

    static Expr number(double v) { return Expr(ast::Number{v}); }
    static Expr symbol(int component, int level = 0) { return Expr(ast::Sym{{component, level}}); }
    static Expr t() { return Expr(ast::Var{Variable::T}); }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    std::shared_ptr<const ast::Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Parse expression text.
///
/// Grammar, loosest to tightest: `+ -`, `* /`, unary `-`, `^` (right
/// associative). Atoms are numbers, `t`, `s`, `pi`, `e`, parenthesised
/// expressions, `sin cos exp sqrt abs` calls, `int(expr)`, and component
/// symbols `u<i>` followed by derivative ticks (`u2'''`). A component symbol
/// followed by a parenthesised constant in [0, 1] is a point evaluation
/// (`u1'(1/4)`).
///
/// Throws ParseError with the character offset of the offending token.
Expr parse(std::string_view text);

/// Text that parses back to a structurally equal tree.
std::string to_string(const Expr& e);

/// Structural facts used for validation.
struct ExprInfo {
    std::vector<Symbol> symbols;      // bare symbols, deduplicated, in first-seen order
    std::vector<Symbol> point_evals;  // symbols used in point evaluations
    bool has_integral = false;
    bool nested_integral = false;
    bool uses_t = false;
    bool uses_s = false;
    bool t_outside_integral = false;
    bool symbol_outside_integral = false;
    int max_component = 0;
};
ExprInfo analyze(const Expr& e);

/// Dense map from (component, level) to a value.
template <class T>
class SymbolMap {
public:
    void set(Symbol s, T value) {
        if (static_cast<int>(slots_.size()) < s.component) {
            slots_.resize(s.component);
        }
        auto& row = slots_[s.component - 1];
        if (static_cast<int>(row.size()) <= s.level) {
            row.resize(s.level + 1);
        }
        row[s.level] = value;
    }
    const T* find(Symbol s) const {
        if (s.component < 1 || s.component > static_cast<int>(slots_.size())) {
            return nullptr;
        }
        const auto& row = slots_[s.component - 1];
        if (s.level < 0 || s.level >= static_cast<int>(row.size()) || !row[s.level]) {
            return nullptr;
        }
        return &*row[s.level];
    }

private:
    std::vector<std::vector<std::optional<T>>> slots_;
};

using PointValues = SymbolMap<double>;
using BoxValues = SymbolMap<Interval>;

/// Pointwise value. Expressions with `int` or point evaluations are rejected.
/// sqrt of an argument in [-1e-9, 0) is taken as 0.
double eval_point(const Expr& e, double t, const PointValues& values);

/// Pointwise value of a kernel-branch expression in the variables t and s.
double eval_bivariate(const Expr& e, double t, double s);

/// Enclosure of the range of `e` over the box. Expressions with `int` or
/// point evaluations are rejected.
Interval eval_interval(const Expr& e, Interval t_box, const BoxValues& boxes);

/// Value of a functional on a discrete solution: point evaluations by local
/// cubic interpolation, `int` by the grid's quadrature.
double eval_functional(const Expr& e, const DiscreteSolution& solution);

/// Box of the closed ball of radius rho in the cone: u_i in [0, rho], derivatives in [-rho, rho].
BoxValues cone_ball_box(const std::vector<int>& orders, double rho);

/// Enclosure of a functional over the cone ball of radius rho.
/// `int(g)` is enclosed by the range of g (the integral is over a unit interval).
Interval enclose_functional(const Expr& e, const BoxValues& boxes);

/// Upper bound of a functional over the ball of radius rho of the product cone
/// whose component orders are `orders`.
double bound_functional(const Expr& e, double rho, const std::vector<int>& orders);

}  // namespace perhamm
