#include "perhamm/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "perhamm/errors.hpp"
#include "perhamm/solution.hpp"

namespace perhamm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::shared_ptr<const Expr> share(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

constexpr double kSqrtSlack = 1e-9;
constexpr double kTinyDivisor = 1e-300;

// ---------------------------------------------------------------- parser

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        skip_space();
        if (pos_ >= text_.size()) {
            throw ParseError("empty expression", pos_);
        }
        Expr e = parse_sum();
        skip_space();
        if (pos_ < text_.size()) {
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) {
                throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
            }
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    Expr parse_sum() {
        Expr lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = Expr(ast::Binary{BinaryOp::Add, share(lhs), share(parse_product())});
            } else if (accept('-')) {
                lhs = Expr(ast::Binary{BinaryOp::Sub, share(lhs), share(parse_product())});
            } else {
                return lhs;
            }
        }
    }

    Expr parse_product() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expr(ast::Binary{BinaryOp::Mul, share(lhs), share(parse_unary())});
            } else if (accept('/')) {
                lhs = Expr(ast::Binary{BinaryOp::Div, share(lhs), share(parse_unary())});
            } else {
                return lhs;
            }
        }
    }

    Expr parse_unary() {
        if (accept('-')) {
            return Expr(ast::Negate{share(parse_unary())});
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (accept('^')) {
            return Expr(ast::Binary{BinaryOp::Pow, share(base), share(parse_unary())});
        }
        return base;
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
                ++look;
            }
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    ++pos_;
                }
            }
        }
        double value = 0.0;
        const auto* first = text_.data() + start;
        const auto* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            throw ParseError("malformed number", start);
        }
        return Expr::number(value);
    }

    Expr parse_call_argument() {
        expect('(');
        Expr arg = parse_sum();
        expect(')');
        return arg;
    }

    Expr parse_atom() {
        skip_space();
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of input", pos_);
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) {
            throw ParseError(std::string("unexpected '") + c + "'", pos_);
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view word = text_.substr(start, pos_ - start);

        if (word == "t") return Expr(ast::Var{Variable::T});
        if (word == "s") return Expr(ast::Var{Variable::S});
        if (word == "pi") return Expr::number(std::numbers::pi);
        if (word == "e") return Expr::number(std::numbers::e);
        if (word == "int") return Expr(ast::Integral{share(parse_call_argument())});
        if (word == "sin") return Expr(ast::Call{Function::Sin, share(parse_call_argument())});
        if (word == "cos") return Expr(ast::Call{Function::Cos, share(parse_call_argument())});
        if (word == "exp") return Expr(ast::Call{Function::Exp, share(parse_call_argument())});
        if (word == "sqrt") return Expr(ast::Call{Function::Sqrt, share(parse_call_argument())});
        if (word == "abs") return Expr(ast::Call{Function::Abs, share(parse_call_argument())});

        if (word.size() >= 2 && word[0] == 'u' &&
            std::all_of(word.begin() + 1, word.end(),
                        [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
            int component = 0;
            std::from_chars(word.data() + 1, word.data() + word.size(), component);
            if (component < 1) {
                throw ParseError("component index must be >= 1", start);
            }
            int level = 0;
            while (pos_ < text_.size() && text_[pos_] == '\'') {
                ++pos_;
                ++level;
            }
            const Symbol symbol{component, level};
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == '(') {
                const std::size_t arg_pos = pos_ + 1;
                Expr arg = parse_call_argument();
                return Expr(ast::PointEval{symbol, fold_constant(arg, arg_pos)});
            }
            return Expr(ast::Sym{symbol});
        }
        throw ParseError("unknown identifier '" + std::string(word) + "'", start);
    }

    static double fold_constant(const Expr& arg, std::size_t at) {
        const ExprInfo info = analyze(arg);
        if (info.uses_t || info.uses_s || !info.symbols.empty() || !info.point_evals.empty() ||
            info.has_integral) {
            throw ParseError("point evaluation argument must be a constant", at);
        }
        const double value = eval_point(arg, 0.0, PointValues{});
        if (!(value >= 0.0 && value <= 1.0)) {
            throw ParseError("point evaluation argument must lie in [0, 1]", at);
        }
        return value;
    }
};

// --------------------------------------------------------------- printer

int precedence(const Expr& e) {
    return std::visit(Overloaded{
                          [](const ast::Binary& b) {
                              switch (b.op) {
                                  case BinaryOp::Add:
                                  case BinaryOp::Sub: return 1;
                                  case BinaryOp::Mul:
                                  case BinaryOp::Div: return 2;
                                  case BinaryOp::Pow: return 4;
                              }
                              return 0;
                          },
                          [](const ast::Negate&) { return 3; },
                          [](const auto&) { return 5; },
                      },
                      e.node());
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, ptr);
    if (v < 0) {
        return "(" + s + ")";
    }
    return s;
}

std::string symbol_text(Symbol s) {
    return "u" + std::to_string(s.component) + std::string(static_cast<std::size_t>(s.level), '\'');
}

const char* function_name(Function fn) {
    switch (fn) {
        case Function::Sin: return "sin";
        case Function::Cos: return "cos";
        case Function::Exp: return "exp";
        case Function::Sqrt: return "sqrt";
        case Function::Abs: return "abs";
    }
    return "?";
}

std::string wrap(const Expr& e, bool parens) {
    return parens ? "(" + to_string(e) + ")" : to_string(e);
}

// ------------------------------------------------------------ evaluation

double checked(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string("non-finite result in ") + what);
    }
    return v;
}

double real_pow(double base, double exponent) {
    if (base < 0.0 && exponent != std::trunc(exponent)) {
        throw DomainError("negative base raised to a non-integer power");
    }
    if (base == 0.0 && exponent < 0.0) {
        throw DomainError("zero raised to a negative power");
    }
    return checked(std::pow(base, exponent), "power");
}

double real_call(Function fn, double x) {
    switch (fn) {
        case Function::Sin: return std::sin(x);
        case Function::Cos: return std::cos(x);
        case Function::Exp: return checked(std::exp(x), "exp");
        case Function::Sqrt:
            if (x < 0.0) {
                if (x < -kSqrtSlack) {
                    throw DomainError("sqrt of negative value " + std::to_string(x));
                }
                return 0.0;
            }
            return std::sqrt(x);
        case Function::Abs: return std::abs(x);
    }
    return 0.0;
}

template <class Context>
double eval_real(const Expr& e, Context& ctx) {
    return std::visit(
        Overloaded{
            [](const ast::Number& n) { return n.value; },
            [&](const ast::Var& v) { return v.which == Variable::T ? ctx.t() : ctx.s(); },
            [&](const ast::Sym& s) { return ctx.symbol(s.symbol); },
            [&](const ast::PointEval& p) { return ctx.point(p.symbol, p.at); },
            [&](const ast::Negate& n) { return -eval_real(*n.operand, ctx); },
            [&](const ast::Call& c) { return real_call(c.fn, eval_real(*c.arg, ctx)); },
            [&](const ast::Integral& i) { return ctx.integral(*i.body); },
            [&](const ast::Binary& b) {
                const double x = eval_real(*b.lhs, ctx);
                const double y = eval_real(*b.rhs, ctx);
                switch (b.op) {
                    case BinaryOp::Add: return x + y;
                    case BinaryOp::Sub: return x - y;
                    case BinaryOp::Mul: return x * y;
                    case BinaryOp::Div:
                        if (std::abs(y) < kTinyDivisor) {
                            throw DomainError("division by (near) zero");
                        }
                        return checked(x / y, "division");
                    case BinaryOp::Pow: return real_pow(x, y);
                }
                return 0.0;
            },
        },
        e.node());
}

struct PointContext {
    double t_value;
    double s_value;
    const PointValues* values;
    bool allow_s;

    double t() const { return t_value; }
    double s() const {
        if (!allow_s) {
            throw ArgumentError("variable 's' is only available in kernel expressions");
        }
        return s_value;
    }
    double symbol(Symbol sym) const {
        const double* v = values ? values->find(sym) : nullptr;
        if (v == nullptr) {
            throw ArgumentError("unbound symbol " + symbol_text(sym));
        }
        return *v;
    }
    double point(Symbol, double) const {
        throw ArgumentError("point evaluation is not allowed in a pointwise expression");
    }
    double integral(const Expr&) const {
        throw ArgumentError("int() is not allowed in a pointwise expression");
    }
};

struct FunctionalContext {
    const DiscreteSolution& solution;
    std::optional<std::size_t> node;

    double t() const {
        if (!node) {
            throw ArgumentError("variable 't' used outside int() in a functional");
        }
        return solution.grid.nodes()[*node];
    }
    double s() const { throw ArgumentError("variable 's' is only available in kernel expressions"); }
    double symbol(Symbol sym) const {
        if (!node) {
            throw ArgumentError("bare symbol " + symbol_text(sym) + " used outside int() in a functional");
        }
        return solution.values(sym.component, sym.level)[*node];
    }
    double point(Symbol sym, double at) const {
        return cubic_interpolate(solution.grid.nodes(), solution.values(sym.component, sym.level), at);
    }
    double integral(const Expr& body) {
        if (node) {
            throw ArgumentError("nested int() is not supported");
        }
        const std::size_t n = solution.grid.size();
        std::vector<double> samples(n);
        for (std::size_t q = 0; q < n; ++q) {
            node = q;
            samples[q] = eval_real(body, *this);
        }
        node.reset();
        return solution.grid.integrate(samples);
    }
};

// -------------------------------------------------------------- intervals

Interval checked(Interval x, const char* what) {
    if (!x.is_finite()) {
        throw DomainError(std::string("non-finite enclosure in ") + what);
    }
    return x;
}

Interval integer_power(Interval x, long long n) {
    if (n == 0) {
        return {1.0, 1.0};
    }
    if (n < 0) {
        if (x.contains_zero()) {
            throw DomainError("negative power of an interval containing 0");
        }
        const Interval p = integer_power(x, -n);
        return {1.0 / p.hi, 1.0 / p.lo};
    }
    const double a = std::pow(x.lo, static_cast<double>(n));
    const double b = std::pow(x.hi, static_cast<double>(n));
    if (n % 2 == 1) {
        return {a, b};
    }
    if (x.lo >= 0.0) {
        return {a, b};
    }
    if (x.hi <= 0.0) {
        return {b, a};
    }
    return {0.0, std::max(a, b)};
}

Interval interval_pow(Interval base, Interval exponent) {
    if (exponent.is_point()) {
        const double p = exponent.lo;
        if (p == std::trunc(p) && std::abs(p) < 1e15) {
            return checked(integer_power(base, static_cast<long long>(p)), "power");
        }
        if (base.hi < 0.0) {
            throw DomainError("negative base raised to a non-integer power");
        }
        const double lo = std::max(base.lo, 0.0);
        if (p > 0.0) {
            return checked(Interval{std::pow(lo, p), std::pow(base.hi, p)}, "power");
        }
        if (lo <= 0.0) {
            throw DomainError("negative power of an interval containing 0");
        }
        return checked(Interval{std::pow(base.hi, p), std::pow(lo, p)}, "power");
    }
    if (base.lo <= 0.0) {
        throw DomainError("variable exponent requires a strictly positive base");
    }
    const Interval log_base{std::log(base.lo), std::log(base.hi)};
    const Interval prod = exponent * log_base;
    return checked(Interval{std::exp(prod.lo), std::exp(prod.hi)}, "power");
}

// Does x0 + k * period lie in [a, b] for some integer k?
bool hits(double a, double b, double x0, double period) {
    const double k = std::ceil((a - x0) / period);
    return x0 + k * period <= b;
}

Interval interval_call(Function fn, Interval x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    constexpr double half_pi = 0.5 * std::numbers::pi;
    switch (fn) {
        case Function::Sin:
        case Function::Cos: {
            if (x.width() >= two_pi) {
                return {-1.0, 1.0};
            }
            const bool is_sin = fn == Function::Sin;
            const double a = is_sin ? std::sin(x.lo) : std::cos(x.lo);
            const double b = is_sin ? std::sin(x.hi) : std::cos(x.hi);
            Interval out{std::min(a, b), std::max(a, b)};
            const double peak = is_sin ? half_pi : 0.0;
            const double trough = is_sin ? -half_pi : std::numbers::pi;
            if (hits(x.lo, x.hi, peak, two_pi)) out.hi = 1.0;
            if (hits(x.lo, x.hi, trough, two_pi)) out.lo = -1.0;
            return out;
        }
        case Function::Exp:
            return checked(Interval{std::exp(x.lo), std::exp(x.hi)}, "exp");
        case Function::Sqrt:
            if (x.hi < 0.0) {
                if (x.hi < -kSqrtSlack) {
                    throw DomainError("sqrt of an all-negative interval");
                }
                return {0.0, 0.0};
            }
            return {std::sqrt(std::max(x.lo, 0.0)), std::sqrt(x.hi)};
        case Function::Abs:
            if (x.contains_zero()) {
                return {0.0, std::max(-x.lo, x.hi)};
            }
            return x.lo > 0.0 ? x : Interval{-x.hi, -x.lo};
    }
    return x;
}

template <class Context>
Interval eval_box(const Expr& e, Context& ctx) {
    return std::visit(
        Overloaded{
            [](const ast::Number& n) { return Interval{n.value}; },
            [&](const ast::Var& v) { return v.which == Variable::T ? ctx.t() : ctx.s(); },
            [&](const ast::Sym& s) { return ctx.symbol(s.symbol); },
            [&](const ast::PointEval& p) { return ctx.point(p.symbol); },
            [&](const ast::Negate& n) { return -eval_box(*n.operand, ctx); },
            [&](const ast::Call& c) { return interval_call(c.fn, eval_box(*c.arg, ctx)); },
            [&](const ast::Integral& i) { return ctx.integral(*i.body); },
            [&](const ast::Binary& b) {
                const Interval x = eval_box(*b.lhs, ctx);
                const Interval y = eval_box(*b.rhs, ctx);
                switch (b.op) {
                    case BinaryOp::Add: return checked(x + y, "sum");
                    case BinaryOp::Sub: return checked(x - y, "difference");
                    case BinaryOp::Mul: return checked(x * y, "product");
                    case BinaryOp::Div:
                        if (y.contains_zero()) {
                            throw DomainError("division by an interval containing 0");
                        }
                        return checked(x * Interval{1.0 / y.hi, 1.0 / y.lo}, "division");
                    case BinaryOp::Pow: return interval_pow(x, y);
                }
                return Interval{};
            },
        },
        e.node());
}

struct BoxContext {
    Interval t_box;
    const BoxValues& boxes;
    bool allow_functional;
    bool inside_integral = false;

    Interval t() const { return t_box; }
    Interval s() const { throw ArgumentError("variable 's' is only available in kernel expressions"); }
    Interval symbol(Symbol sym) const {
        const Interval* v = boxes.find(sym);
        if (v == nullptr) {
            throw ArgumentError("unbound symbol " + symbol_text(sym));
        }
        return *v;
    }
    Interval point(Symbol sym) const {
        if (!allow_functional) {
            throw ArgumentError("point evaluation is not allowed in a pointwise expression");
        }
        return symbol(sym);
    }
    Interval integral(const Expr& body) {
        if (!allow_functional) {
            throw ArgumentError("int() is not allowed in a pointwise expression");
        }
        if (inside_integral) {
            throw ArgumentError("nested int() is not supported");
        }
        const Interval saved = t_box;
        t_box = {0.0, 1.0};
        inside_integral = true;
        const Interval range = eval_box(body, *this);
        inside_integral = false;
        t_box = saved;
        return range;
    }
};

void analyze_into(const Expr& e, ExprInfo& info, bool in_integral) {
    std::visit(Overloaded{
                   [](const ast::Number&) {},
                   [&](const ast::Var& v) {
                       if (v.which == Variable::T) {
                           info.uses_t = true;
                           info.t_outside_integral |= !in_integral;
                       } else {
                           info.uses_s = true;
                       }
                   },
                   [&](const ast::Sym& s) {
                       if (std::find(info.symbols.begin(), info.symbols.end(), s.symbol) ==
                           info.symbols.end()) {
                           info.symbols.push_back(s.symbol);
                       }
                       info.symbol_outside_integral |= !in_integral;
                       info.max_component = std::max(info.max_component, s.symbol.component);
                   },
                   [&](const ast::PointEval& p) {
                       if (std::find(info.point_evals.begin(), info.point_evals.end(), p.symbol) ==
                           info.point_evals.end()) {
                           info.point_evals.push_back(p.symbol);
                       }
                       info.max_component = std::max(info.max_component, p.symbol.component);
                   },
                   [&](const ast::Negate& n) { analyze_into(*n.operand, info, in_integral); },
                   [&](const ast::Call& c) { analyze_into(*c.arg, info, in_integral); },
                   [&](const ast::Integral& i) {
                       info.has_integral = true;
                       info.nested_integral |= in_integral;
                       analyze_into(*i.body, info, true);
                   },
                   [&](const ast::Binary& b) {
                       analyze_into(*b.lhs, info, in_integral);
                       analyze_into(*b.rhs, info, in_integral);
                   },
               },
               e.node());
}

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) {
        return true;
    }
    const ast::Node& x = a.node();
    const ast::Node& y = b.node();
    if (x.index() != y.index()) {
        return false;
    }
    return std::visit(
        Overloaded{
            [&](const ast::Number& n) { return n.value == std::get<ast::Number>(y).value; },
            [&](const ast::Var& v) { return v.which == std::get<ast::Var>(y).which; },
            [&](const ast::Sym& s) { return s.symbol == std::get<ast::Sym>(y).symbol; },
            [&](const ast::PointEval& p) {
                const auto& q = std::get<ast::PointEval>(y);
                return p.symbol == q.symbol && p.at == q.at;
            },
            [&](const ast::Negate& n) { return *n.operand == *std::get<ast::Negate>(y).operand; },
            [&](const ast::Call& c) {
                const auto& d = std::get<ast::Call>(y);
                return c.fn == d.fn && *c.arg == *d.arg;
            },
            [&](const ast::Integral& i) { return *i.body == *std::get<ast::Integral>(y).body; },
            [&](const ast::Binary& l) {
                const auto& r = std::get<ast::Binary>(y);
                return l.op == r.op && *l.lhs == *r.lhs && *l.rhs == *r.rhs;
            },
        },
        x);
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(ast::Binary{BinaryOp::Add, share(a), share(b)}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(ast::Binary{BinaryOp::Sub, share(a), share(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(ast::Binary{BinaryOp::Mul, share(a), share(b)}); }
Expr operator-(const Expr& a) { return Expr(ast::Negate{share(a)}); }

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const Expr& e) {
    return std::visit(
        Overloaded{
            [](const ast::Number& n) { return format_number(n.value); },
            [](const ast::Var& v) { return std::string(v.which == Variable::T ? "t" : "s"); },
            [](const ast::Sym& s) { return symbol_text(s.symbol); },
            [](const ast::PointEval& p) { return symbol_text(p.symbol) + "(" + format_number(p.at) + ")"; },
            [](const ast::Negate& n) { return "-" + wrap(*n.operand, precedence(*n.operand) < 3); },
            [](const ast::Call& c) { return std::string(function_name(c.fn)) + "(" + to_string(*c.arg) + ")"; },
            [](const ast::Integral& i) { return "int(" + to_string(*i.body) + ")"; },
            [](const ast::Binary& b) {
                if (b.op == BinaryOp::Pow) {
                    return wrap(*b.lhs, precedence(*b.lhs) <= 4) + "^" +
                           wrap(*b.rhs, precedence(*b.rhs) < 3);
                }
                const int p = (b.op == BinaryOp::Add || b.op == BinaryOp::Sub) ? 1 : 2;
                const char* op = b.op == BinaryOp::Add   ? " + "
                                 : b.op == BinaryOp::Sub ? " - "
                                 : b.op == BinaryOp::Mul ? "*"
                                                         : "/";
                return wrap(*b.lhs, precedence(*b.lhs) < p) + op + wrap(*b.rhs, precedence(*b.rhs) <= p);
            },
        },
        e.node());
}

ExprInfo analyze(const Expr& e) {
    ExprInfo info;
    analyze_into(e, info, false);
    return info;
}

double eval_point(const Expr& e, double t, const PointValues& values) {
    PointContext ctx{t, 0.0, &values, false};
    return checked(eval_real(e, ctx), "expression");
}

double eval_bivariate(const Expr& e, double t, double s) {
    PointContext ctx{t, s, nullptr, true};
    return checked(eval_real(e, ctx), "kernel expression");
}

Interval eval_interval(const Expr& e, Interval t_box, const BoxValues& boxes) {
    BoxContext ctx{t_box, boxes, false};
    return eval_box(e, ctx);
}

double eval_functional(const Expr& e, const DiscreteSolution& solution) {
    FunctionalContext ctx{solution, std::nullopt};
    return checked(eval_real(e, ctx), "functional");
}

BoxValues cone_ball_box(const std::vector<int>& orders, double rho) {
    BoxValues boxes;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        const int component = static_cast<int>(i) + 1;
        boxes.set({component, 0}, {0.0, rho});
        for (int l = 1; l <= orders[i]; ++l) {
            boxes.set({component, l}, {-rho, rho});
        }
    }
    return boxes;
}

Interval enclose_functional(const Expr& e, const BoxValues& boxes) {
    BoxContext ctx{{0.0, 1.0}, boxes, true};
    return eval_box(e, ctx);
}

double bound_functional(const Expr& e, double rho, const std::vector<int>& orders) {
    if (!(rho > 0.0)) {
        throw ArgumentError("bound_functional requires rho > 0");
    }
    return enclose_functional(e, cone_ball_box(orders, rho)).hi;
}

}  // namespace perhamm
