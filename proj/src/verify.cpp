#include "perhamm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "perhamm/errors.hpp"
#include "perhamm/spectral.hpp"

namespace perhamm {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::Interval: return "interval";
        case Provenance::Sampled: return "sampled";
        case Provenance::UserSupplied: return "user-supplied";
        case Provenance::Computed: return "computed";
    }
    return "?";
}

Verdict combine(const std::vector<InequalityRecord>& records) {
    bool all_certain = true;
    for (const auto& r : records) {
        if (!r.passed && r.definitive) {
            return Verdict::Fail;
        }
        if (!r.passed || r.provenance == Provenance::Sampled) {
            all_certain = false;
        }
    }
    return all_certain ? Verdict::Pass : Verdict::Inconclusive;
}

namespace {

constexpr int kGrowthSamples = 1000000;
constexpr int kDominationSamples = 100000;
constexpr int kDiagnosticSamples = 20000;
constexpr int kGrowthPieces = 64;
constexpr double kStrictSlack = 1e-12;
const double kEscalatingBoxes[] = {10.0, 100.0, 1000.0};

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    double uniform(double a, double b) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return a + (b - a) * u;
    }

    /// Random point of the box; returns t.
    double point(const std::vector<int>& orders, const BoxValues& box, PointValues& out) {
        const double t = uniform(0.0, 1.0);
        for (std::size_t i = 0; i < orders.size(); ++i) {
            for (int l = 0; l <= orders[i]; ++l) {
                const Symbol s{static_cast<int>(i) + 1, l};
                const Interval& range = *box.find(s);
                out.set(s, uniform(range.lo, range.hi));
            }
        }
        return t;
    }

private:
    std::mt19937_64 engine_;
};

/// Box with u_{i,0} in [0, rho_lo..rho] style bounds; level 0 of `focus` narrowed to `focus_range`.
BoxValues box_with(const std::vector<int>& orders, double rho, std::optional<std::pair<int, Interval>> focus = {}) {
    BoxValues box = cone_ball_box(orders, rho);
    if (focus) {
        box.set({focus->first, 0}, focus->second);
    }
    return box;
}

bool is_number(const Expr& e, double value) {
    const auto* n = std::get_if<ast::Number>(&e.node());
    return n != nullptr && n->value == value;
}

/// f = x^exponent * prod(rest), where x is matched by `is_target`.
struct PowerSplit {
    double exponent = 0.0;
    std::vector<Expr> rest;
};

void split_into(const Expr& e, const std::function<bool(const Expr&)>& is_target, PowerSplit& out) {
    const ast::Node& node = e.node();
    if (is_target(e)) {
        out.exponent += 1.0;
        return;
    }
    if (const auto* b = std::get_if<ast::Binary>(&node)) {
        if (b->op == BinaryOp::Mul) {
            split_into(*b->lhs, is_target, out);
            split_into(*b->rhs, is_target, out);
            return;
        }
        if (b->op == BinaryOp::Pow && is_target(*b->lhs)) {
            if (const auto* p = std::get_if<ast::Number>(&b->rhs->node())) {
                out.exponent += p->value;
                return;
            }
        }
    }
    if (const auto* c = std::get_if<ast::Call>(&node)) {
        if (c->fn == Function::Sqrt && is_target(*c->arg)) {
            out.exponent += 0.5;
            return;
        }
    }
    if (is_number(e, 1.0)) {
        return;
    }
    out.rest.push_back(e);
}

PowerSplit split_power(const Expr& e, const std::function<bool(const Expr&)>& is_target) {
    PowerSplit out;
    split_into(e, is_target, out);
    return out;
}

std::function<bool(const Expr&)> bare_symbol(Symbol s) {
    return [s](const Expr& e) {
        const auto* sym = std::get_if<ast::Sym>(&e.node());
        return sym != nullptr && sym->symbol == s;
    };
}

std::function<bool(const Expr&)> point_eval_of(Symbol s) {
    return [s](const Expr& e) {
        const auto* p = std::get_if<ast::PointEval>(&e.node());
        return p != nullptr && p->symbol == s;
    };
}

Interval product_range(const std::vector<Expr>& factors, Interval t_box, const BoxValues& box, bool functional) {
    Interval g{1.0};
    for (const auto& factor : factors) {
        g = g * (functional ? enclose_functional(factor, box) : eval_interval(factor, t_box, box));
    }
    if (!g.is_finite()) {
        throw DomainError("non-finite enclosure");
    }
    return g;
}

struct GrowthCertificate {
    bool certified = false;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string relation = ">=";
    std::string method;
};

GrowthCertificate certify_growth(const Expr& f, int component, const std::vector<int>& orders, double r,
                                 double delta) {
    GrowthCertificate cert;
    if (auto ratio = growth_ratio_bound(f, component, orders, r)) {
        cert.certified = *ratio >= delta;
        cert.lhs = *ratio;
        cert.rhs = delta;
        cert.method = "lower bound of f/x over I_r from f = x^p g";
        return cert;
    }
    // Subdivide the range of x and bound f - delta x on each piece.
    double worst = std::numeric_limits<double>::infinity();
    try {
        for (int k = 0; k < kGrowthPieces; ++k) {
            const Interval piece{r * k / kGrowthPieces, r * (k + 1) / kGrowthPieces};
            const BoxValues box = box_with(orders, r, std::make_pair(component, piece));
            const Interval fx = eval_interval(f, {0.0, 1.0}, box);
            worst = std::min(worst, fx.lo - delta * piece.hi);
        }
    } catch (const DomainError&) {
        worst = -std::numeric_limits<double>::infinity();
    }
    cert.certified = worst >= 0.0;
    cert.lhs = std::isfinite(worst) ? worst : -std::numeric_limits<double>::max();
    cert.rhs = 0.0;
    cert.method = "lower bound of f - delta x over I_r on 64 slices of x";
    return cert;
}

double largest_certified_delta(const Expr& f, int component, const std::vector<int>& orders, double r) {
    auto ok = [&](double delta) { return certify_growth(f, component, orders, r, delta).certified; };
    if (!ok(0.0)) {
        return 0.0;
    }
    double lo = 0.0;
    double hi = 1.0;
    while (ok(hi)) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi) || hi > 1e300) {
            return lo;
        }
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

double kernel_constant_for(const Component& c, int level, int resolution, double& computed, Provenance& provenance) {
    computed = kernel_constant(c.kernel, level, resolution);
    provenance = Provenance::Interval;
    if (level < static_cast<int>(c.constant_bounds.size()) && c.constant_bounds[level]) {
        const double bound = *c.constant_bounds[level];
        if (bound < computed - 1e-9) {
            std::ostringstream msg;
            msg << "supplied bound " << bound << " for K_" << level << " of kernel '" << c.kernel.name()
                << "' is below the computed value " << computed;
            throw ArgumentError(msg.str());
        }
        provenance = Provenance::UserSupplied;
        return bound;
    }
    return computed;
}

std::string component_tag(int i) { return std::to_string(i); }

/// Enclosure of g in f = x_i * g over escalating boxes; empty when f does not factor with exponent 1.
std::optional<Interval> linear_factor_range(const Expr& f, int component, const std::vector<int>& orders) {
    const PowerSplit split = split_power(f, bare_symbol({component, 0}));
    if (split.exponent != 1.0) {
        return std::nullopt;
    }
    Interval total{1.0};
    bool first = true;
    for (double B : kEscalatingBoxes) {
        const Interval g = product_range(split.rest, {0.0, 1.0}, cone_ball_box(orders, B), false);
        total = first ? g : hull(total, g);
        first = false;
    }
    return total;
}

/// xi with h[u] <= xi ||u_i|| from the structure of h; empty when not recognised.
std::optional<Interval> linear_functional_range(const Expr& h, int component, const std::vector<int>& orders,
                                                double B) {
    const BoxValues box = cone_ball_box(orders, B);
    if (const auto* n = std::get_if<ast::Number>(&h.node())) {
        if (n->value == 0.0) {
            return Interval{0.0};
        }
        return std::nullopt;
    }
    if (const auto* b = std::get_if<ast::Binary>(&h.node()); b != nullptr && b->op == BinaryOp::Add) {
        auto left = linear_functional_range(*b->lhs, component, orders, B);
        auto right = linear_functional_range(*b->rhs, component, orders, B);
        if (left && right && left->lo >= 0.0 && right->lo >= 0.0) {
            return *left + *right;
        }
        return std::nullopt;
    }
    if (const auto* in = std::get_if<ast::Integral>(&h.node())) {
        const PowerSplit split = split_power(*in->body, bare_symbol({component, 0}));
        if (split.exponent != 1.0) {
            return std::nullopt;
        }
        return product_range(split.rest, {0.0, 1.0}, box, true);
    }
    const PowerSplit split = split_power(h, point_eval_of({component, 0}));
    if (split.exponent != 1.0) {
        return std::nullopt;
    }
    return product_range(split.rest, {0.0, 1.0}, box, true);
}

}  // namespace

std::optional<double> growth_ratio_bound(const Expr& f, int component, const std::vector<int>& orders, double r) {
    const PowerSplit split = split_power(f, bare_symbol({component, 0}));
    Interval g;
    try {
        g = product_range(split.rest, {0.0, 1.0}, cone_ball_box(orders, r), false);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    if (g.lo < 0.0) {
        return std::nullopt;
    }
    const double p = split.exponent - 1.0;
    if (p < 0.0) {
        return g.lo * std::pow(r, p);
    }
    if (p == 0.0) {
        return g.lo;
    }
    return 0.0;
}

bool growth_certified(const Expr& f, int component, const std::vector<int>& orders, double r, double delta) {
    return certify_growth(f, component, orders, r, delta).certified;
}

VerificationReport check_existence(const SystemSpec& spec, const ExistenceHypotheses& hyp) {
    validate(spec);
    if (!(hyp.r > 0.0) || !(hyp.R > hyp.r) || !(hyp.delta > 0.0)) {
        throw ArgumentError("existence hypotheses need 0 < r < R and delta > 0");
    }
    if (hyp.i0 < 1 || hyp.i0 > spec.n()) {
        throw ArgumentError("i0 = " + std::to_string(hyp.i0) + " is not a component index");
    }
    const std::vector<int> orders = spec.orders();
    const BoxValues outer_box = cone_ball_box(orders, hyp.R);

    VerificationReport report;
    report.theorem = "existence";
    Sampler sampler(hyp.seed);
    PointValues point;

    double lhs = 0.0;
    double sampled_lhs = 0.0;
    bool any_user_constant = false;
    for (int i = 1; i <= spec.n(); ++i) {
        const Component& c = spec.components[i - 1];
        ComponentConstants cc;
        for (int l = 0; l <= c.order(); ++l) {
            double computed = 0.0;
            Provenance provenance = Provenance::Interval;
            cc.kernel_constants.push_back(kernel_constant_for(c, l, hyp.resolution, computed, provenance));
            cc.kernel_constants_computed.push_back(computed);
            cc.kernel_constant_provenance.push_back(provenance);
            any_user_constant |= provenance == Provenance::UserSupplied;
        }
        Interval f_range;
        try {
            f_range = eval_interval(c.nonlinearity, {0.0, 1.0}, outer_box);
        } catch (const DomainError& e) {
            std::ostringstream msg;
            msg << "component " << i << ": bounding f over I_R with R = " << hyp.R << " failed: " << e.what();
            throw DomainError(msg.str());
        }
        cc.f_bound = f_range.hi;
        double sampled = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < kDiagnosticSamples; ++k) {
            const double t = sampler.point(orders, outer_box, point);
            sampled = std::max(sampled, eval_point(c.nonlinearity, t, point));
        }
        cc.f_sampled_max = sampled;

        std::vector<double> h_bounds;
        for (const Term& term : c.terms) {
            std::vector<double> norms;
            for (int l = 0; l <= c.order(); ++l) {
                norms.push_back(gamma_norm(term.gamma, l, hyp.resolution));
            }
            cc.gamma_norms.push_back(std::move(norms));
            cc.functional_bounds.push_back(term.functional.bound(hyp.R, orders));
        }

        for (int l = 0; l <= c.order(); ++l) {
            double perturbation = 0.0;
            for (std::size_t j = 0; j < c.terms.size(); ++j) {
                perturbation += c.terms[j].eta * cc.gamma_norms[j][l] * cc.functional_bounds[j];
            }
            const double row = c.lambda * *cc.f_bound * cc.kernel_constants[l] + perturbation;
            const double sampled_row = c.lambda * std::max(0.0, sampled) * cc.kernel_constants[l] + perturbation;
            report.rows.push_back({i, l, row});
            lhs = std::max(lhs, row);
            sampled_lhs = std::max(sampled_lhs, sampled_row);
        }
        try {
            cc.characteristic_value = spectral_radius(c.kernel, hyp.resolution, hyp.spectral_tol).characteristic_value;
        } catch (const DegenerateKernelError& e) {
            if (i == hyp.i0) {
                throw;
            }
            report.notes.push_back("component " + component_tag(i) + ": " + e.what());
        }
        report.constants.push_back(std::move(cc));
    }

    InequalityRecord outer;
    outer.name = "outer_sphere_bound";
    outer.relation = "<=";
    outer.lhs = lhs;
    outer.rhs = hyp.R;
    outer.margin = hyp.R - lhs;
    outer.passed = lhs <= hyp.R;
    outer.definitive = sampled_lhs > hyp.R;
    outer.provenance = Provenance::Interval;
    outer.detail = "max over (i, l) of lambda_i fbar_iR K_il + sum_j eta_ij |gamma_ij^(l)| H_ijR";
    if (any_user_constant) {
        outer.detail += "; uses user-supplied kernel-constant bounds";
    }
    report.records.push_back(outer);

    const Component& focus = spec.component(hyp.i0);
    const double mu = *report.constants[hyp.i0 - 1].characteristic_value;
    InequalityRecord eigen;
    eigen.name = "eigenvalue_threshold";
    eigen.relation = ">=";
    eigen.lhs = focus.lambda;
    eigen.rhs = mu / hyp.delta;
    eigen.margin = eigen.lhs - eigen.rhs;
    eigen.passed = eigen.lhs >= eigen.rhs;
    eigen.provenance = Provenance::Computed;
    eigen.detail = "lambda_i0 >= mu_i0 / delta";
    report.records.push_back(eigen);

    InequalityRecord growth;
    growth.name = "inner_growth";
    const GrowthCertificate cert = certify_growth(focus.nonlinearity, hyp.i0, orders, hyp.r, hyp.delta);
    if (cert.certified) {
        growth.relation = cert.relation;
        growth.lhs = cert.lhs;
        growth.rhs = cert.rhs;
        growth.margin = cert.lhs - cert.rhs;
        growth.passed = true;
        growth.provenance = Provenance::Interval;
        growth.detail = "f_i0 >= delta x_i0,0 on I_r: " + cert.method;
    } else {
        // Interval bounds were too loose; look for a counterexample instead.
        const BoxValues inner_box = cone_ball_box(orders, hyp.r);
        double worst = std::numeric_limits<double>::infinity();
        Sampler growth_sampler(hyp.seed ^ 0x9e3779b97f4a7c15ULL);
        for (int k = 0; k < kGrowthSamples; ++k) {
            const double t = growth_sampler.point(orders, inner_box, point);
            const double x = *point.find({hyp.i0, 0});
            worst = std::min(worst, eval_point(focus.nonlinearity, t, point) - hyp.delta * x);
        }
        growth.relation = ">=";
        growth.lhs = worst;
        growth.rhs = 0.0;
        growth.margin = worst;
        growth.passed = worst >= 0.0;
        growth.definitive = true;
        growth.provenance = Provenance::Sampled;
        growth.detail = "f_i0 - delta x_i0,0 >= 0 on I_r: minimum over " + std::to_string(kGrowthSamples) +
                        " random points (interval certificate failed)";
    }
    report.records.push_back(growth);

    report.notes.push_back("a pass localizes a solution in the closed annulus r <= ||u|| <= R of the cone");
    report.verdict = combine(report.records);
    return report;
}

VerificationReport check_nonexistence(const SystemSpec& spec, const NonexistenceHypotheses& hyp) {
    validate(spec);
    if (static_cast<int>(hyp.taus.size()) != spec.n() || static_cast<int>(hyp.xis.size()) != spec.n()) {
        throw ArgumentError("nonexistence hypotheses need one tau and one xi row per component");
    }
    for (int i = 1; i <= spec.n(); ++i) {
        const auto& row = hyp.xis[i - 1];
        if (row.size() != spec.components[i - 1].terms.size()) {
            throw ArgumentError("xi row " + std::to_string(i) + " must have one entry per term");
        }
        if (!(hyp.taus[i - 1] >= 0.0) || std::any_of(row.begin(), row.end(), [](double x) { return !(x >= 0.0); })) {
            throw ArgumentError("tau and xi must be >= 0");
        }
    }
    const std::vector<int> orders = spec.orders();

    VerificationReport report;
    report.theorem = "nonexistence";
    Sampler sampler(hyp.seed);
    PointValues point;
    double lhs = 0.0;

    for (int i = 1; i <= spec.n(); ++i) {
        const Component& c = spec.components[i - 1];
        const double tau = hyp.taus[i - 1];
        ComponentConstants cc;
        double computed = 0.0;
        Provenance provenance = Provenance::Interval;
        cc.kernel_constants.push_back(kernel_constant_for(c, 0, hyp.resolution, computed, provenance));
        cc.kernel_constants_computed.push_back(computed);
        cc.kernel_constant_provenance.push_back(provenance);

        // 0 <= f_i <= tau_i x_i0 on the whole cone.
        InequalityRecord dom;
        dom.name = "linear_domination_" + component_tag(i);
        dom.relation = "<=";
        dom.rhs = tau;
        std::optional<Interval> g;
        try {
            g = linear_factor_range(c.nonlinearity, i, orders);
        } catch (const DomainError&) {
            g.reset();
        }
        const bool zero_f = is_number(c.nonlinearity, 0.0);
        if (zero_f || g) {
            const Interval range = zero_f ? Interval{0.0} : *g;
            dom.lhs = range.hi;
            dom.margin = tau - range.hi;
            dom.passed = range.lo >= 0.0 && range.hi <= tau;
            dom.provenance = Provenance::Interval;
            std::ostringstream msg;
            msg << "f_i = x_i0 * g with g in [" << range.lo << ", " << range.hi
                << "] over boxes of radius 10, 100, 1000";
            dom.detail = msg.str();
        } else {
            // Direct enclosure, then a counterexample search.
            bool certified = true;
            for (double B : kEscalatingBoxes) {
                try {
                    const BoxValues box = cone_ball_box(orders, B);
                    const Interval fr = eval_interval(c.nonlinearity, {0.0, 1.0}, box);
                    const Interval excess = eval_interval(c.nonlinearity - Expr::number(tau) * Expr::symbol(i, 0),
                                                          {0.0, 1.0}, box);
                    certified &= fr.lo >= 0.0 && excess.hi <= 0.0;
                } catch (const DomainError&) {
                    certified = false;
                }
            }
            if (certified) {
                dom.lhs = tau;
                dom.margin = 0.0;
                dom.passed = true;
                dom.provenance = Provenance::Interval;
                dom.detail = "f_i >= 0 and f_i - tau_i x_i0 <= 0 enclosed over boxes of radius 10, 100, 1000";
            } else {
                double worst = -std::numeric_limits<double>::infinity();
                bool violated = false;
                for (double B : kEscalatingBoxes) {
                    const BoxValues box = cone_ball_box(orders, B);
                    for (int k = 0; k < kDominationSamples / 3; ++k) {
                        const double t = sampler.point(orders, box, point);
                        const double x = *point.find({i, 0});
                        const double fv = eval_point(c.nonlinearity, t, point);
                        worst = std::max(worst, fv - tau * x);
                        violated |= fv < -1e-12 || fv - tau * x > 1e-12 * (1.0 + x);
                    }
                }
                dom.lhs = worst;
                dom.rhs = 0.0;
                dom.margin = -worst;
                dom.passed = !violated;
                dom.definitive = violated;
                dom.provenance = Provenance::Sampled;
                dom.detail = "max of f_i - tau_i x_i0 over random points in boxes of radius 10, 100, 1000";
            }
        }
        report.records.push_back(dom);

        double row = c.lambda * tau * cc.kernel_constants[0];
        for (std::size_t j = 0; j < c.terms.size(); ++j) {
            const Term& term = c.terms[j];
            const double xi = hyp.xis[i - 1][j];
            const double gnorm = gamma_norm(term.gamma, 0, hyp.resolution);
            cc.gamma_norms.push_back({gnorm});
            row += term.eta * xi * gnorm;

            InequalityRecord fr;
            fr.name = "functional_bound_" + component_tag(i) + "_" + std::to_string(j + 1);
            fr.relation = "<=";
            fr.rhs = xi;
            if (const Expr* h = term.functional.expr()) {
                std::optional<Interval> range;
                try {
                    for (double B : kEscalatingBoxes) {
                        auto r = linear_functional_range(*h, i, orders, B);
                        if (!r) {
                            range.reset();
                            break;
                        }
                        range = range ? hull(*range, *r) : *r;
                    }
                } catch (const DomainError&) {
                    range.reset();
                }
                if (range) {
                    fr.lhs = range->hi;
                    fr.margin = xi - range->hi;
                    fr.passed = range->lo >= 0.0 && range->hi <= xi;
                    fr.provenance = Provenance::Interval;
                    fr.detail = "h_ij <= (sup of cofactor) * ||u_i||_inf, cofactor enclosed over boxes of radius 10, 100, 1000";
                } else if (hyp.attest_functionals) {
                    fr.lhs = xi;
                    fr.margin = 0.0;
                    fr.passed = true;
                    fr.provenance = Provenance::UserSupplied;
                    fr.detail = "attested by the caller";
                } else {
                    fr.lhs = std::numeric_limits<double>::max();
                    fr.margin = -std::numeric_limits<double>::max();
                    fr.passed = false;
                    fr.definitive = false;
                    fr.detail = "functional is not of a recognised linearly bounded form";
                }
            } else {
                const auto* custom = term.functional.custom();
                if (custom->linear_constant) {
                    fr.lhs = *custom->linear_constant;
                    fr.margin = xi - fr.lhs;
                    fr.passed = fr.lhs <= xi;
                    fr.provenance = Provenance::UserSupplied;
                    fr.detail = "attested constant of custom functional '" + custom->name + "'";
                } else {
                    fr.lhs = hyp.attest_functionals ? xi : std::numeric_limits<double>::max();
                    fr.margin = hyp.attest_functionals ? 0.0 : -std::numeric_limits<double>::max();
                    fr.passed = hyp.attest_functionals;
                    fr.definitive = false;
                    fr.provenance = Provenance::UserSupplied;
                    fr.detail = "custom functional '" + custom->name + "' has no attested constant";
                }
            }
            report.records.push_back(fr);
        }
        report.rows.push_back({i, 0, row});
        lhs = std::max(lhs, row);
        report.constants.push_back(std::move(cc));
    }

    InequalityRecord contraction;
    contraction.name = "contraction";
    contraction.relation = "<";
    contraction.lhs = lhs;
    contraction.rhs = 1.0;
    contraction.margin = 1.0 - lhs;
    contraction.passed = lhs < 1.0 - kStrictSlack;
    contraction.provenance = Provenance::Computed;
    contraction.detail = "max over i of lambda_i tau_i K_i0 + sum_j eta_ij xi_ij |gamma_ij|, strict";
    report.records.push_back(contraction);

    report.verdict = combine(report.records);
    return report;
}

ExistenceWindow search_existence_window(const SystemSpec& spec, double R, int i0, int resolution,
                                        double spectral_tol) {
    validate(spec);
    if (!(R > 0.0)) {
        throw ArgumentError("search_existence_window requires R > 0");
    }
    const Component& c = spec.component(i0);
    const std::vector<int> orders = spec.orders();
    ExistenceWindow window;
    window.characteristic_value = spectral_radius(c.kernel, resolution, spectral_tol).characteristic_value;
    for (int k = 1; k <= 40; ++k) {
        const double r = std::ldexp(R, -k);
        const double delta = largest_certified_delta(c.nonlinearity, i0, orders, r);
        if (delta > 0.0 && c.lambda >= window.characteristic_value / delta) {
            window.r = r;
            window.delta = delta;
            window.feasible = true;
            return window;
        }
    }
    return window;
}

}  // namespace perhamm
