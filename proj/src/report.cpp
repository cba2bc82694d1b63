#include "perhamm/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "perhamm/errors.hpp"
#include "perhamm/kernels.hpp"

namespace perhamm {

using nlohmann::json;

double round12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", x);
    return std::strtod(buffer, nullptr);
}

namespace {

json number(double x) {
    if (!std::isfinite(x)) {
        return std::isnan(x) ? json("nan") : json(x > 0 ? "inf" : "-inf");
    }
    return round12(x);
}

json numbers(const std::vector<double>& xs) {
    json out = json::array();
    for (double x : xs) {
        out.push_back(number(x));
    }
    return out;
}

std::vector<std::string> column_names(const DiscreteSolution& u) {
    std::vector<std::string> names{"t"};
    for (std::size_t i = 0; i < u.components(); ++i) {
        int m = u.order(static_cast<int>(i) + 1);
        for (int l = 0; l <= m; ++l) {
            names.push_back("u" + std::to_string(i + 1) + std::string(l, '\''));
        }
    }
    return names;
}

json solution_rows(const DiscreteSolution& u) {
    json rows = json::array();
    const auto& nodes = u.grid.nodes();
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        json row = json::array({number(nodes[q])});
        for (const auto& comp : u.levels) {
            for (const auto& level : comp) {
                row.push_back(number(level[q]));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

json to_json(const InequalityRecord& record) {
    return {{"name", record.name},
            {"relation", record.relation},
            {"lhs", number(record.lhs)},
            {"rhs", number(record.rhs)},
            {"margin", number(record.margin)},
            {"passed", record.passed},
            {"definitive", record.definitive},
            {"provenance", to_string(record.provenance)},
            {"detail", record.detail}};
}

json to_json(const VerificationReport& report) {
    json records = json::array();
    for (const auto& r : report.records) {
        records.push_back(to_json(r));
    }
    json constants = json::array();
    for (std::size_t i = 0; i < report.constants.size(); ++i) {
        const auto& c = report.constants[i];
        json jc = {{"component", i + 1}};
        jc["kernel_constants"] = numbers(c.kernel_constants);
        jc["kernel_constants_computed"] = numbers(c.kernel_constants_computed);
        json prov = json::array();
        for (auto p : c.kernel_constant_provenance) {
            prov.push_back(to_string(p));
        }
        jc["kernel_constant_provenance"] = std::move(prov);
        if (c.characteristic_value) {
            jc["characteristic_value"] = number(*c.characteristic_value);
        }
        if (c.f_bound) {
            jc["f_bound"] = number(*c.f_bound);
        }
        if (c.f_sampled_max) {
            jc["f_sampled_max"] = number(*c.f_sampled_max);
        }
        json gammas = json::array();
        for (const auto& g : c.gamma_norms) {
            gammas.push_back(numbers(g));
        }
        jc["gamma_norms"] = std::move(gammas);
        jc["functional_bounds"] = numbers(c.functional_bounds);
        constants.push_back(std::move(jc));
    }
    json rows = json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"component", row.component}, {"level", row.level}, {"value", number(row.value)}});
    }
    return {{"theorem", report.theorem},
            {"verdict", to_string(report.verdict)},
            {"records", std::move(records)},
            {"constants", std::move(constants)},
            {"rows", std::move(rows)},
            {"notes", report.notes}};
}

json to_json(const EigenPair& pair, bool with_table) {
    json out = {{"spectral_radius", number(pair.spectral_radius)},
                {"characteristic_value", number(pair.characteristic_value)},
                {"residual", number(pair.residual)},
                {"iterations", pair.iterations}};
    if (with_table) {
        json rows = json::array();
        for (std::size_t q = 0; q < pair.nodes.size(); ++q) {
            rows.push_back({number(pair.nodes[q]), number(pair.eigenfunction[q])});
        }
        out["eigenfunction"] = {{"columns", {"t", "phi"}}, {"rows", std::move(rows)}};
    }
    return out;
}

json to_json(const DiscreteSolution& u, bool with_table) {
    json out = {{"norm", number(u.norm)},
                {"residual", number(u.residual)},
                {"iterations", u.iterations},
                {"converged", u.converged},
                {"resolution", u.grid.intervals()}};
    if (with_table) {
        out["table"] = {{"columns", column_names(u)}, {"rows", solution_rows(u)}};
    }
    return out;
}

json to_json(const MultistartResult& result, bool with_tables) {
    json starts = json::array();
    for (const auto& s : result.starts) {
        json js = {{"index", s.index},
                   {"profile", s.profile},
                   {"initial_norm", number(s.initial_norm)},
                   {"damping", number(s.damping)},
                   {"converged", s.converged},
                   {"iterations", s.iterations},
                   {"final_norm", number(s.final_norm)},
                   {"residual", number(s.residual)}};
        if (!s.error.empty()) {
            js["error"] = s.error;
        }
        starts.push_back(std::move(js));
    }
    json points = json::array();
    for (const auto& fp : result.fixed_points) {
        json jp = to_json(fp.solution, with_tables);
        jp["start"] = fp.start;
        jp["in_annulus"] = fp.in_annulus;
        points.push_back(std::move(jp));
    }
    return {{"fixed_points", std::move(points)}, {"starts", std::move(starts)}};
}

json constants_report(const ProblemFile& problem, const SystemSpec& spec) {
    const int res = problem.numerics.resolution;
    json components = json::array();
    for (int i = 1; i <= spec.n(); ++i) {
        const Component& c = spec.component(i);
        json jc = {{"component", i}, {"kernel", c.kernel.name()}, {"order", c.order()}};
        std::vector<double> ks;
        json bounds = json::object();
        for (int l = 0; l <= c.order(); ++l) {
            ks.push_back(kernel_constant(c.kernel, l, res));
            if (l < static_cast<int>(c.constant_bounds.size()) && c.constant_bounds[l]) {
                bounds[std::to_string(l)] = {{"bound", number(*c.constant_bounds[l])},
                                             {"holds", ks.back() <= *c.constant_bounds[l] + 1e-9}};
            }
        }
        jc["kernel_constants"] = numbers(ks);
        if (!bounds.empty()) {
            jc["kernel_constant_bounds"] = std::move(bounds);
        }
        json gammas = json::array();
        for (const auto& term : c.terms) {
            std::vector<double> norms;
            for (int l = 0; l <= c.order(); ++l) {
                norms.push_back(gamma_norm(term.gamma, l, res));
            }
            gammas.push_back(numbers(norms));
        }
        jc["gamma_norms"] = std::move(gammas);
        try {
            EigenPair pair = spectral_radius(c.kernel, res);
            jc["characteristic_value"] = number(pair.characteristic_value);
            jc["spectral_radius"] = number(pair.spectral_radius);
        } catch (const DegenerateKernelError& err) {
            jc["spectral_error"] = err.what();
        } catch (const ConvergenceError& err) {
            jc["spectral_error"] = err.what();
        }
        if (c.kernel.has_dominator(0)) {
            PositivityBound pb = check_c7_prime(c.kernel, 0.25, 0.75, res);
            jc["positivity"] = {{"a", 0.25}, {"b", 0.75}, {"c", number(pb.c)}, {"holds", pb.holds}};
        }
        components.push_back(std::move(jc));
    }
    return {{"title", problem.title}, {"resolution", res}, {"components", std::move(components)}};
}

json spectral_report(const ProblemFile& problem, const SystemSpec& spec) {
    const int res = problem.numerics.resolution;
    json components = json::array();
    for (int i = 1; i <= spec.n(); ++i) {
        const Component& c = spec.component(i);
        json jc = {{"component", i}, {"kernel", c.kernel.name()}};
        try {
            jc.update(to_json(spectral_radius(c.kernel, res)));
        } catch (const DegenerateKernelError& err) {
            jc["error"] = err.what();
        } catch (const ConvergenceError& err) {
            jc["error"] = err.what();
        }
        components.push_back(std::move(jc));
    }
    return {{"title", problem.title}, {"resolution", res}, {"components", std::move(components)}};
}

std::string solution_table(const DiscreteSolution& u) {
    std::ostringstream out;
    auto names = column_names(u);
    for (std::size_t k = 0; k < names.size(); ++k) {
        out << (k ? "\t" : "") << names[k];
    }
    out << '\n';
    char buffer[32];
    const auto& nodes = u.grid.nodes();
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        std::snprintf(buffer, sizeof buffer, "%.12g", nodes[q]);
        out << buffer;
        for (const auto& comp : u.levels) {
            for (const auto& level : comp) {
                std::snprintf(buffer, sizeof buffer, "%.12g", level[q]);
                out << '\t' << buffer;
            }
        }
        out << '\n';
    }
    return out.str();
}

int exit_code(Verdict verdict) {
    switch (verdict) {
        case Verdict::Pass:
            return 0;
        case Verdict::Fail:
            return 1;
        case Verdict::Inconclusive:
            return 2;
    }
    return 2;
}

}  // namespace perhamm
