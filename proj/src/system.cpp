#include "perhamm/system.hpp"

#include <cmath>
#include <sstream>

#include "perhamm/errors.hpp"

namespace perhamm {

double Functional::evaluate(const DiscreteSolution& u) const {
    if (expr_) {
        return eval_functional(*expr_, u);
    }
    return custom_->evaluate(u);
}

double Functional::bound(double rho, const std::vector<int>& orders) const {
    if (expr_) {
        return bound_functional(*expr_, rho, orders);
    }
    if (!custom_->bound) {
        throw ArgumentError("custom functional '" + custom_->name + "' provides no bound");
    }
    return custom_->bound(rho);
}

std::string Functional::describe() const { return expr_ ? to_string(*expr_) : "custom:" + custom_->name; }

std::vector<int> SystemSpec::orders() const {
    std::vector<int> out;
    out.reserve(components.size());
    for (const auto& c : components) {
        out.push_back(c.order());
    }
    return out;
}

const Component& SystemSpec::component(int i) const {
    if (i < 1 || i > n()) {
        throw ArgumentError("component index " + std::to_string(i) + " outside 1.." + std::to_string(n()));
    }
    return components[i - 1];
}

namespace {

void check_symbols(const ExprInfo& info, const std::vector<int>& orders, const std::string& where,
                   std::vector<std::string>& problems) {
    auto check = [&](Symbol s) {
        if (s.component > static_cast<int>(orders.size())) {
            problems.push_back(where + ": component u" + std::to_string(s.component) + " does not exist");
        } else if (s.level > orders[s.component - 1]) {
            problems.push_back(where + ": derivative order " + std::to_string(s.level) + " of u" +
                               std::to_string(s.component) + " exceeds m = " +
                               std::to_string(orders[s.component - 1]));
        }
    };
    for (Symbol s : info.symbols) check(s);
    for (Symbol s : info.point_evals) check(s);
}

}  // namespace

std::vector<std::string> validation_problems(const SystemSpec& spec) {
    std::vector<std::string> problems;
    if (spec.n() < 1) {
        problems.emplace_back("system needs at least one component");
        return problems;
    }
    const std::vector<int> orders = spec.orders();
    const PointValues none;
    for (int i = 1; i <= spec.n(); ++i) {
        const Component& c = spec.components[i - 1];
        const std::string tag = "component " + std::to_string(i);
        if (!(c.lambda >= 0.0) || !std::isfinite(c.lambda)) {
            problems.push_back(tag + ": lambda must be a finite value >= 0");
        }
        for (const auto& p : diagnose_kernel(c.kernel).problems) {
            problems.push_back(tag + ": " + p);
        }
        if (static_cast<int>(c.constant_bounds.size()) > c.order() + 1) {
            problems.push_back(tag + ": more kernel-constant bounds than derivative levels");
        }

        const ExprInfo f = analyze(c.nonlinearity);
        if (f.has_integral || !f.point_evals.empty()) {
            problems.push_back(tag + ": nonlinearity must be pointwise (no int, no point evaluations)");
        }
        if (f.uses_s) {
            problems.push_back(tag + ": nonlinearity may not use 's'");
        }
        check_symbols(f, orders, tag + " nonlinearity", problems);

        for (std::size_t j = 0; j < c.terms.size(); ++j) {
            const Term& term = c.terms[j];
            const std::string ttag = tag + " term " + std::to_string(j + 1);
            if (!(term.eta >= 0.0) || !std::isfinite(term.eta)) {
                problems.push_back(ttag + ": eta must be a finite value >= 0");
            }
            if (static_cast<int>(term.gamma.size()) < c.order() + 1) {
                problems.push_back(ttag + ": gamma needs derivatives up to order " + std::to_string(c.order()));
                continue;
            }
            bool gamma_ok = true;
            for (std::size_t l = 0; l < term.gamma.size(); ++l) {
                const ExprInfo g = analyze(term.gamma[l]);
                if (!g.symbols.empty() || !g.point_evals.empty() || g.has_integral || g.uses_s) {
                    problems.push_back(ttag + ": gamma derivatives may only depend on t");
                    gamma_ok = false;
                }
            }
            if (gamma_ok) {
                try {
                    for (int k = 0; k <= 200; ++k) {
                        const double t = k / 200.0;
                        if (eval_point(term.gamma[0], t, none) < -1e-12) {
                            problems.push_back(ttag + ": gamma is negative at t = " + std::to_string(t));
                            break;
                        }
                    }
                    // Consecutive entries of the stack must be derivatives of each other.
                    constexpr double h = 1e-5;
                    for (std::size_t l = 0; l + 1 < term.gamma.size(); ++l) {
                        for (int k = 1; k < 50; ++k) {
                            const double t = k / 50.0;
                            const double fd = (eval_point(term.gamma[l], t + h, none) -
                                               eval_point(term.gamma[l], t - h, none)) / (2 * h);
                            const double d = eval_point(term.gamma[l + 1], t, none);
                            if (std::abs(fd - d) > 1e-5 * (1.0 + std::abs(d))) {
                                problems.push_back(ttag + ": gamma entry " + std::to_string(l + 1) +
                                                   " is not the derivative of entry " + std::to_string(l));
                                break;
                            }
                        }
                    }
                } catch (const std::exception& e) {
                    problems.push_back(ttag + ": gamma evaluation failed: " + e.what());
                }
            }

            if (const Expr* h = term.functional.expr()) {
                const ExprInfo hi = analyze(*h);
                if (hi.t_outside_integral || hi.symbol_outside_integral) {
                    problems.push_back(ttag + ": functional may use t and bare symbols only inside int()");
                }
                if (hi.nested_integral) {
                    problems.push_back(ttag + ": nested int() is not supported");
                }
                if (hi.uses_s) {
                    problems.push_back(ttag + ": functional may not use 's'");
                }
                check_symbols(hi, orders, ttag + " functional", problems);
            }
        }
    }
    return problems;
}

void validate(const SystemSpec& spec) {
    const auto problems = validation_problems(spec);
    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "invalid system:";
        for (const auto& p : problems) {
            msg << "\n  - " << p;
        }
        throw ArgumentError(msg.str());
    }
}

}  // namespace perhamm
