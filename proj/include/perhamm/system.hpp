#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perhamm/expr.hpp"
#include "perhamm/kernels.hpp"
#include "perhamm/solution.hpp"

namespace perhamm {

/// A functional h[u] on the cone: either an expression in the DSL or a
/// caller-supplied evaluation/bound pair.
class Functional {
public:
    struct Custom {
        std::string name;
        std::function<double(const DiscreteSolution&)> evaluate;
        /// Upper bound of h over the cone ball of radius rho.
        std::function<double(double rho)> bound;
        /// Attested xi with h[u] <= xi * ||u_i||_inf, if known.
        std::optional<double> linear_constant;
    };

    Functional(Expr e) : expr_(std::move(e)) {}  // NOLINT(google-explicit-constructor)
    explicit Functional(Custom custom) : custom_(std::move(custom)) {}

    const Expr* expr() const { return expr_ ? &*expr_ : nullptr; }
    const Custom* custom() const { return custom_ ? &*custom_ : nullptr; }

    double evaluate(const DiscreteSolution& u) const;
    double bound(double rho, const std::vector<int>& orders) const;
    std::string describe() const;

private:
    std::optional<Expr> expr_;
    std::optional<Custom> custom_;
};

/// One perturbation term eta * gamma(t) * h[u].
struct Term {
    double eta = 0.0;
    /// gamma, gamma', ..., at least up to the component's order.
    std::vector<Expr> gamma;
    Functional functional = Expr::number(0.0);
};

/// u_i = lambda int k(t, s) f(s, u(s), ...) ds + sum_j eta_j gamma_j(t) h_j[u]
struct Component {
    Kernel kernel;
    double lambda = 0.0;
    Expr nonlinearity = Expr::number(0.0);
    std::vector<Term> terms;
    /// Optional upper bounds for the kernel constants K_l, indexed by level.
    /// When present they replace the computed values in the checks.
    std::vector<std::optional<double>> constant_bounds;

    int order() const { return kernel.order(); }
};

struct SystemSpec {
    std::vector<Component> components;

    int n() const { return static_cast<int>(components.size()); }
    std::vector<int> orders() const;
    const Component& component(int i) const;  // 1-based
};

/// Everything `validate` found wrong; empty means valid.
std::vector<std::string> validation_problems(const SystemSpec& spec);

/// Throws ArgumentError listing every validation problem.
void validate(const SystemSpec& spec);

}  // namespace perhamm
