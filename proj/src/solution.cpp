#include "perhamm/solution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "perhamm/errors.hpp"

namespace perhamm {

DiscreteSolution DiscreteSolution::zeros(const Grid& grid, const std::vector<int>& orders) {
    DiscreteSolution u;
    u.grid = grid;
    u.levels.resize(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        u.levels[i].assign(orders[i] + 1, std::vector<double>(grid.size(), 0.0));
    }
    return u;
}

int DiscreteSolution::order(int component) const {
    if (component < 1 || component > static_cast<int>(levels.size())) {
        throw ArgumentError("component " + std::to_string(component) + " absent from solution");
    }
    return static_cast<int>(levels[component - 1].size()) - 1;
}

const std::vector<double>& DiscreteSolution::values(int component, int level) const {
    if (level < 0 || level > order(component)) {
        throw ArgumentError("derivative level " + std::to_string(level) + " of component " +
                            std::to_string(component) + " absent from solution");
    }
    return levels[component - 1][level];
}

std::vector<double>& DiscreteSolution::values(int component, int level) {
    return const_cast<std::vector<double>&>(std::as_const(*this).values(component, level));
}

double DiscreteSolution::max_norm() const {
    double m = 0.0;
    for (const auto& comp : levels) {
        for (const auto& grid_values : comp) {
            for (double v : grid_values) {
                m = std::max(m, std::abs(v));
            }
        }
    }
    return m;
}

double DiscreteSolution::cone_minimum() const {
    double m = 0.0;
    bool first = true;
    for (const auto& comp : levels) {
        for (double v : comp.front()) {
            m = first ? v : std::min(m, v);
            first = false;
        }
    }
    return m;
}

double distance(const DiscreteSolution& a, const DiscreteSolution& b) {
    if (a.levels.size() != b.levels.size()) {
        throw ArgumentError("distance: component counts differ");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
        if (a.levels[i].size() != b.levels[i].size()) {
            throw ArgumentError("distance: derivative orders differ");
        }
        for (std::size_t l = 0; l < a.levels[i].size(); ++l) {
            const auto& x = a.levels[i][l];
            const auto& y = b.levels[i][l];
            if (x.size() != y.size()) {
                throw ArgumentError("distance: grids differ");
            }
            for (std::size_t q = 0; q < x.size(); ++q) {
                d = std::max(d, std::abs(x[q] - y[q]));
            }
        }
    }
    return d;
}

double derivative_coherence(const DiscreteSolution& u) {
    const auto& t = u.grid.nodes();
    const double scale = 1.0 + u.max_norm();
    double worst = 0.0;
    for (const auto& comp : u.levels) {
        for (std::size_t l = 0; l + 1 < comp.size(); ++l) {
            const auto& f = comp[l];
            const auto& df = comp[l + 1];
            for (std::size_t q = 1; q + 1 < t.size(); ++q) {
                const double h1 = t[q] - t[q - 1];
                const double h2 = t[q + 1] - t[q];
                const double fd = (-h2 / (h1 * (h1 + h2))) * f[q - 1] +
                                  ((h2 - h1) / (h1 * h2)) * f[q] +
                                  (h1 / (h2 * (h1 + h2))) * f[q + 1];
                const double h = std::max(h1, h2);
                worst = std::max(worst, std::abs(fd - df[q]) / (h * h * scale));
            }
        }
    }
    return worst;
}

DiscreteSolution resample(const DiscreteSolution& u, const Grid& target) {
    DiscreteSolution out;
    out.grid = target;
    out.levels.resize(u.levels.size());
    for (std::size_t i = 0; i < u.levels.size(); ++i) {
        out.levels[i].resize(u.levels[i].size());
        for (std::size_t l = 0; l < u.levels[i].size(); ++l) {
            auto& dst = out.levels[i][l];
            dst.resize(target.size());
            for (std::size_t q = 0; q < target.size(); ++q) {
                dst[q] = u.grid.interpolate(u.levels[i][l], target.nodes()[q]);
            }
        }
    }
    out.update_norm();
    return out;
}

}  // namespace perhamm
