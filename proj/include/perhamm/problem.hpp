#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perhamm/kernels.hpp"
#include "perhamm/system.hpp"
#include "perhamm/verify.hpp"

namespace perhamm {

/// Kernel as written in a problem file: a builtin name or inline levels.
struct KernelSource {
    std::optional<std::string> builtin;
    std::string name;
    std::vector<LevelSource> levels;
    friend bool operator==(const KernelSource&, const KernelSource&) = default;
};

struct TermSource {
    double eta = 0.0;
    std::vector<std::string> gamma;
    std::string functional = "0";
    friend bool operator==(const TermSource&, const TermSource&) = default;
};

struct ComponentSource {
    KernelSource kernel;
    int m = 0;
    double lambda = 0.0;
    std::string nonlinearity = "0";
    std::vector<TermSource> terms;
    std::map<int, double> kernel_constant_bounds;
    friend bool operator==(const ComponentSource&, const ComponentSource&) = default;
};

struct ExistenceBlock {
    std::optional<double> r;
    double R = 1.0;
    std::optional<double> delta;
    int i0 = 1;
    friend bool operator==(const ExistenceBlock&, const ExistenceBlock&) = default;
};

struct NonexistenceBlock {
    std::vector<double> taus;
    std::vector<std::vector<double>> xis;
    bool attest_functionals = false;
    friend bool operator==(const NonexistenceBlock&, const NonexistenceBlock&) = default;
};

struct Numerics {
    int resolution = 200;
    double tol = 1e-10;
    int max_iter = 10000;
    double damping = 1.0;
    int starts = 8;
    std::uint64_t seed = 42;
    friend bool operator==(const Numerics&, const Numerics&) = default;
};

/// Problem document: `system`, optional `existence` and `nonexistence`
/// blocks, and `numerics`. Stored as JSON (comments allowed); numeric fields
/// also accept constant expressions in strings, e.g. "1/3".
struct ProblemFile {
    std::string title;
    std::vector<ComponentSource> components;
    std::optional<ExistenceBlock> existence;
    std::optional<NonexistenceBlock> nonexistence;
    Numerics numerics;
    friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Throws ProblemFileError (syntax errors carry line and column; schema
/// errors carry the JSON path of the offending key).
ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::filesystem::path& path);

/// JSON text that parses back to an equal ProblemFile.
std::string emit_problem(const ProblemFile& problem);

Kernel build_kernel(const KernelSource& source);
/// Builds and validates the system.
SystemSpec build_system(const ProblemFile& problem);

/// Existence hypotheses from the file; r and delta are taken from
/// search_existence_window when omitted.
ExistenceHypotheses build_existence(const ProblemFile& problem, const SystemSpec& spec);
NonexistenceHypotheses build_nonexistence(const ProblemFile& problem);

/// Problem files shipped with the library: "example1", "example2", "linear", "zero".
std::string_view bundled_problem(std::string_view name);
const std::vector<std::string>& bundled_problem_names();

}  // namespace perhamm
