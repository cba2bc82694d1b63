// perhamm: constants, spectral data, existence/non-existence checks and
// multistart solves for perturbed Hammerstein systems described in a problem file.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "perhamm/errors.hpp"
#include "perhamm/problem.hpp"
#include "perhamm/report.hpp"
#include "perhamm/solver.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNumerical = 70;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Overrides {
    std::optional<int> resolution;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string out;
};

// "@name" selects a bundled problem.
perhamm::ProblemFile load(const std::string& source, const Overrides& o) {
    perhamm::ProblemFile problem;
    if (!source.empty() && source.front() == '@') {
        try {
            problem = perhamm::parse_problem(perhamm::bundled_problem(source.substr(1)));
        } catch (const perhamm::LookupError& err) {
            throw UsageError(err.what());
        }
    } else {
        problem = perhamm::load_problem(source);
    }
    if (o.resolution) {
        if (*o.resolution < 16) {
            throw UsageError("--resolution must be at least 16");
        }
        problem.numerics.resolution = *o.resolution;
    }
    if (o.tol) {
        if (!(*o.tol > 0.0)) {
            throw UsageError("--tol must be positive");
        }
        problem.numerics.tol = *o.tol;
    }
    if (o.seed) {
        problem.numerics.seed = *o.seed;
    }
    return problem;
}

void emit(const nlohmann::json& doc, const Overrides& o) {
    std::string text = doc.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
        throw perhamm::ProblemFileError("cannot write " + o.out);
    }
    file << text;
}

nlohmann::json existence_json(const perhamm::ExistenceHypotheses& hyp) {
    return {{"r", perhamm::round12(hyp.r)},
            {"R", perhamm::round12(hyp.R)},
            {"delta", perhamm::round12(hyp.delta)},
            {"i0", hyp.i0}};
}

nlohmann::json nonexistence_json(const perhamm::NonexistenceHypotheses& hyp) {
    return {{"taus", hyp.taus}, {"xis", hyp.xis}, {"attest_functionals", hyp.attest_functionals}};
}

int run_check(const perhamm::ProblemFile& problem, const std::string& mode, nlohmann::json& doc) {
    auto spec = perhamm::build_system(problem);
    perhamm::VerificationReport report;
    doc["title"] = problem.title;
    doc["mode"] = mode;
    if (mode == "existence") {
        if (!problem.existence) {
            throw UsageError("problem has no existence block");
        }
        auto hyp = perhamm::build_existence(problem, spec);
        doc["hypotheses"] = existence_json(hyp);
        report = perhamm::check_existence(spec, hyp);
    } else {
        if (!problem.nonexistence) {
            throw UsageError("problem has no nonexistence block");
        }
        auto hyp = perhamm::build_nonexistence(problem);
        doc["hypotheses"] = nonexistence_json(hyp);
        report = perhamm::check_nonexistence(spec, hyp);
    }
    doc["report"] = perhamm::to_json(report);
    return perhamm::exit_code(report.verdict);
}

nlohmann::json run_solve(const perhamm::ProblemFile& problem, bool tables) {
    auto spec = perhamm::build_system(problem);
    perhamm::ExistenceHypotheses hyp;
    if (problem.existence) {
        hyp = perhamm::build_existence(problem, spec);
    } else {
        hyp.r = 1e-3;
        hyp.R = 1.0;
    }
    hyp.resolution = problem.numerics.resolution;
    perhamm::SolveOptions options;
    options.resolution = problem.numerics.resolution;
    options.tol = problem.numerics.tol;
    options.max_iter = problem.numerics.max_iter;
    options.damping = problem.numerics.damping;
    auto result = perhamm::solve_multistart(spec, hyp, problem.numerics.starts, problem.numerics.seed, options);
    return {{"title", problem.title},
            {"annulus", existence_json(hyp)},
            {"result", perhamm::to_json(result, tables)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Existence, non-existence and numerical solutions of perturbed Hammerstein systems"};
    app.require_subcommand(1);
    Overrides o;
    int resolution = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    auto* res_opt = app.add_option("--resolution", resolution, "Grid intervals")->check(CLI::PositiveNumber);
    auto* tol_opt = app.add_option("--tol", tol, "Solver and spectral tolerance");
    auto* seed_opt = app.add_option("--seed", seed, "Random seed");
    app.add_option("--out", o.out, "Write the report to this path instead of stdout");

    std::string file;
    std::string mode = "existence";
    int example = 1;
    bool tables = true;

    auto* constants = app.add_subcommand("constants", "Kernel constants, gamma norms, characteristic values");
    constants->add_option("file", file, "Problem file, or @name for a bundled problem")->required();
    auto* spectral = app.add_subcommand("spectral", "Characteristic values and eigenfunctions");
    spectral->add_option("file", file, "Problem file, or @name for a bundled problem")->required();
    auto* check = app.add_subcommand("check", "Check existence or non-existence hypotheses");
    check->add_option("file", file, "Problem file, or @name for a bundled problem")->required();
    check->add_option("--mode", mode, "existence or nonexistence")
        ->check(CLI::IsMember({"existence", "nonexistence"}));
    auto* solve = app.add_subcommand("solve", "Multistart Picard iteration");
    solve->add_option("file", file, "Problem file, or @name for a bundled problem")->required();
    solve->add_flag("!--no-tables", tables, "Omit solution tables");
    auto* reproduce = app.add_subcommand("reproduce", "Run the bundled worked examples");
    reproduce->add_option("--example", example, "1 (existence) or 2 (non-existence)")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    auto* list = app.add_subcommand("problems", "List bundled problems");
    auto* show = app.add_subcommand("show", "Print a problem file in canonical form");
    show->add_option("file", file, "Problem file, or @name for a bundled problem")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : kExitUsage;
    }
    if (*res_opt) {
        o.resolution = resolution;
    }
    if (*tol_opt) {
        o.tol = tol;
    }
    if (*seed_opt) {
        o.seed = seed;
    }

    try {
        nlohmann::json doc;
        int code = 0;
        if (*list) {
            for (const auto& name : perhamm::bundled_problem_names()) {
                std::cout << '@' << name << '\n';
            }
            return 0;
        }
        if (*show) {
            std::string text = perhamm::emit_problem(load(file, o));
            if (o.out.empty()) {
                std::cout << text;
            } else {
                std::ofstream(o.out, std::ios::binary) << text;
            }
            return 0;
        }
        if (*constants) {
            auto problem = load(file, o);
            doc = perhamm::constants_report(problem, perhamm::build_system(problem));
        } else if (*spectral) {
            auto problem = load(file, o);
            doc = perhamm::spectral_report(problem, perhamm::build_system(problem));
            for (const auto& c : doc["components"]) {
                if (c.contains("error")) {
                    code = kExitNumerical;
                }
            }
        } else if (*check) {
            code = run_check(load(file, o), mode, doc);
        } else if (*solve) {
            doc = run_solve(load(file, o), tables);
        } else if (*reproduce) {
            auto problem = load(example == 1 ? "@example1" : "@example2", o);
            doc["constants"] = perhamm::constants_report(problem, perhamm::build_system(problem));
            nlohmann::json checked;
            code = run_check(problem, example == 1 ? "existence" : "nonexistence", checked);
            doc["check"] = std::move(checked);
            if (example == 2) {
                doc["solve"] = run_solve(problem, false);
            }
        }
        emit(doc, o);
        return code;
    } catch (const UsageError& err) {
        std::cerr << "perhamm: " << err.what() << '\n';
        return kExitUsage;
    } catch (const perhamm::ProblemFileError& err) {
        std::cerr << "perhamm: " << err.what() << '\n';
        return kExitData;
    } catch (const perhamm::ArgumentError& err) {
        std::cerr << "perhamm: " << err.what() << '\n';
        return kExitData;
    } catch (const std::exception& err) {
        std::cerr << "perhamm: " << err.what() << '\n';
        return kExitNumerical;
    }
}
