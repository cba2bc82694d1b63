#include "perhamm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "perhamm/errors.hpp"
#include "perhamm/spectral.hpp"

namespace perhamm {

namespace {

constexpr double kDivergenceNorm = 1e12;
constexpr double kMinDamping = 1.0 / 64.0;

void check_shape(const SystemSpec& spec, const Grid& grid, const DiscreteSolution& u) {
    if (static_cast<int>(u.components()) != spec.n()) {
        throw ArgumentError("solution has " + std::to_string(u.components()) + " components, system has " +
                            std::to_string(spec.n()));
    }
    for (int i = 1; i <= spec.n(); ++i) {
        if (u.order(i) != spec.components[i - 1].order()) {
            throw ArgumentError("solution component " + std::to_string(i) + " has the wrong number of levels");
        }
    }
    if (u.grid.size() != grid.size()) {
        throw ArgumentError("solution grid does not match the discretization grid");
    }
}

}  // namespace

Discretization::Discretization(const SystemSpec& spec, int resolution)
    : grid_(Grid::chebyshev_lobatto(resolution)) {
    const PointValues none;
    for (const Component& c : spec.components) {
        ops_.emplace_back(c.kernel, grid_);
        std::vector<std::vector<std::vector<double>>> terms;
        for (const Term& term : c.terms) {
            std::vector<std::vector<double>> levels;
            for (int l = 0; l <= c.order(); ++l) {
                std::vector<double> values(grid_.size());
                for (std::size_t q = 0; q < grid_.size(); ++q) {
                    values[q] = eval_point(term.gamma.at(l), grid_.nodes()[q], none);
                }
                levels.push_back(std::move(values));
            }
            terms.push_back(std::move(levels));
        }
        gammas_.push_back(std::move(terms));
    }
}

DiscreteSolution apply_T(const SystemSpec& spec, const Discretization& disc, const DiscreteSolution& u) {
    check_shape(spec, disc.grid(), u);
    const std::size_t nodes = disc.grid().size();

    DiscreteSolution projected = u;
    double clamp = 0.0;
    for (auto& comp : projected.levels) {
        for (double& v : comp.front()) {
            if (v < 0.0) {
                clamp = std::max(clamp, -v);
                v = 0.0;
            }
        }
    }

    DiscreteSolution out = DiscreteSolution::zeros(disc.grid(), spec.orders());
    PointValues point;
    std::vector<double> f(nodes);
    std::vector<double> integral(nodes);
    for (int i = 1; i <= spec.n(); ++i) {
        const Component& c = spec.components[i - 1];
        for (std::size_t q = 0; q < nodes; ++q) {
            for (int k = 1; k <= spec.n(); ++k) {
                for (int l = 0; l <= spec.components[k - 1].order(); ++l) {
                    point.set({k, l}, projected.levels[k - 1][l][q]);
                }
            }
            try {
                f[q] = eval_point(c.nonlinearity, disc.grid().nodes()[q], point);
            } catch (const DomainError& e) {
                std::ostringstream msg;
                msg << "component " << i << " nonlinearity at node t = " << disc.grid().nodes()[q] << ": "
                    << e.what();
                throw DomainError(msg.str());
            }
        }
        std::vector<double> h(c.terms.size());
        for (std::size_t j = 0; j < c.terms.size(); ++j) {
            h[j] = c.terms[j].functional.evaluate(projected);
        }
        for (int l = 0; l <= c.order(); ++l) {
            disc.op(i).apply(l, f, integral);
            auto& target = out.levels[i - 1][l];
            for (std::size_t q = 0; q < nodes; ++q) {
                double v = c.lambda * integral[q];
                for (std::size_t j = 0; j < c.terms.size(); ++j) {
                    v += c.terms[j].eta * disc.gamma(i, j, l)[q] * h[j];
                }
                target[q] = v;
            }
        }
        for (double& v : out.levels[i - 1][0]) {
            if (v < 0.0) {
                clamp = std::max(clamp, -v);
                v = 0.0;
            }
        }
    }
    out.clamp = clamp;
    out.update_norm();
    out.residual = distance(u, out);
    return out;
}

DiscreteSolution apply_T(const SystemSpec& spec, const DiscreteSolution& u) {
    return apply_T(spec, Discretization(spec, u.grid.intervals()), u);
}

DiscreteSolution solve_fixed_point(const SystemSpec& spec, const Discretization& disc,
                                   const DiscreteSolution& initial, double damping, int max_iter, double tol) {
    if (!(damping > 0.0 && damping <= 1.0)) {
        throw ArgumentError("damping must lie in (0, 1]");
    }
    if (!(tol > 0.0)) {
        throw ArgumentError("tol must be > 0");
    }
    check_shape(spec, disc.grid(), initial);
    DiscreteSolution u = initial;
    double clamp = 0.0;
    for (int k = 0;; ++k) {
        const DiscreteSolution tu = apply_T(spec, disc, u);
        clamp = std::max(clamp, tu.clamp);
        if (!std::isfinite(tu.residual) || !std::isfinite(tu.norm) || tu.norm > kDivergenceNorm) {
            throw DivergenceError("Picard iteration diverged at step " + std::to_string(k));
        }
        if (tu.residual <= tol || k >= max_iter) {
            u.residual = tu.residual;
            u.iterations = k;
            u.converged = tu.residual <= tol;
            u.clamp = clamp;
            u.update_norm();
            return u;
        }
        for (std::size_t i = 0; i < u.levels.size(); ++i) {
            for (std::size_t l = 0; l < u.levels[i].size(); ++l) {
                auto& dst = u.levels[i][l];
                const auto& src = tu.levels[i][l];
                for (std::size_t q = 0; q < dst.size(); ++q) {
                    dst[q] = (1.0 - damping) * dst[q] + damping * src[q];
                }
            }
        }
    }
}

MultistartResult solve_multistart(const SystemSpec& spec, const ExistenceHypotheses& hyp, int starts,
                                  std::uint64_t seed, const SolveOptions& options) {
    validate(spec);
    if (starts < 1) {
        throw ArgumentError("solve_multistart needs at least one start");
    }
    if (!(hyp.r > 0.0) || !(hyp.R >= hyp.r)) {
        throw ArgumentError("solve_multistart needs 0 < r <= R");
    }
    if (hyp.i0 < 1 || hyp.i0 > spec.n()) {
        throw ArgumentError("i0 is not a component index");
    }
    const Discretization disc(spec, options.resolution);
    const std::vector<int> orders = spec.orders();

    // Eigenfunction of component i0 with derivatives phi^(l) = mu W^(l) phi.
    std::vector<std::vector<double>> phi;
    try {
        const NystromOperator& op = disc.op(hyp.i0);
        const EigenPair pair = spectral_radius(op, 1e-12);
        phi.push_back(pair.eigenfunction);
        for (int l = 1; l <= op.order(); ++l) {
            std::vector<double> d(disc.grid().size());
            op.apply(l, pair.eigenfunction, d);
            for (double& v : d) {
                v *= pair.characteristic_value;
            }
            phi.push_back(std::move(d));
        }
        double scale = 0.0;
        for (const auto& level : phi) {
            for (double v : level) {
                scale = std::max(scale, std::abs(v));
            }
        }
        for (auto& level : phi) {
            for (double& v : level) {
                v /= scale;
            }
        }
    } catch (const DegenerateKernelError&) {
        phi.clear();
    }

    MultistartResult result;
    try {
        DiscreteSolution zero = DiscreteSolution::zeros(disc.grid(), orders);
        const DiscreteSolution image = apply_T(spec, disc, zero);
        if (image.residual <= options.tol) {
            zero.residual = image.residual;
            zero.converged = true;
            result.fixed_points.push_back({std::move(zero), -1, false});
        }
    } catch (const DomainError&) {
    }

    std::mt19937_64 engine(seed);
    for (int k = 0; k < starts; ++k) {
        const double position = starts == 1 ? 1.0 : static_cast<double>(k) / (starts - 1);
        const double jitter = 0.95 + 0.05 * static_cast<double>(engine() >> 11) * 0x1.0p-53;
        const double c = std::max(hyp.r, hyp.r * std::pow(hyp.R / hyp.r, position) * jitter);
        DiscreteSolution initial = DiscreteSolution::zeros(disc.grid(), orders);
        const bool eigen = (k % 2 == 1) && !phi.empty();
        for (int i = 1; i <= spec.n(); ++i) {
            if (eigen && i == hyp.i0) {
                for (int l = 0; l <= orders[i - 1]; ++l) {
                    auto& grid_values = initial.levels[i - 1][l];
                    for (std::size_t q = 0; q < grid_values.size(); ++q) {
                        grid_values[q] = c * phi[l][q];
                    }
                }
            } else {
                std::fill(initial.levels[i - 1][0].begin(), initial.levels[i - 1][0].end(), c);
            }
        }
        initial.update_norm();

        StartOutcome outcome;
        outcome.index = k;
        outcome.profile = eigen ? "eigenfunction" : "constant";
        outcome.initial_norm = initial.norm;
        double damping = options.damping;
        for (;;) {
            outcome.damping = damping;
            try {
                DiscreteSolution u = solve_fixed_point(spec, disc, initial, damping, options.max_iter, options.tol);
                outcome.converged = u.converged;
                outcome.iterations = u.iterations;
                outcome.final_norm = u.norm;
                outcome.residual = u.residual;
                outcome.error.clear();
                if (u.converged) {
                    const bool duplicate = std::any_of(
                        result.fixed_points.begin(), result.fixed_points.end(),
                        [&](const FixedPoint& fp) { return distance(fp.solution, u) <= 10.0 * options.tol; });
                    if (!duplicate) {
                        const bool in_annulus = hyp.r <= u.norm && u.norm <= hyp.R;
                        result.fixed_points.push_back({std::move(u), k, in_annulus});
                    }
                } else {
                    outcome.error = "no convergence within max_iter";
                }
                break;
            } catch (const DivergenceError& e) {
                outcome.error = e.what();
            } catch (const DomainError& e) {
                outcome.error = e.what();
            }
            if (damping / 2.0 < kMinDamping) {
                break;
            }
            damping /= 2.0;
        }
        result.starts.push_back(std::move(outcome));
    }
    return result;
}

double refined_residual(const SystemSpec& spec, const DiscreteSolution& u) {
    const Discretization fine(spec, 2 * u.grid.intervals());
    const DiscreteSolution v = resample(u, fine.grid());
    return apply_T(spec, fine, v).residual;
}

}  // namespace perhamm
