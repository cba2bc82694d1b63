#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perhamm/system.hpp"

namespace perhamm {

enum class Verdict { Pass, Fail, Inconclusive };
enum class Provenance { Interval, Sampled, UserSupplied, Computed };

const char* to_string(Verdict v);
const char* to_string(Provenance p);

/// r, R, delta and the distinguished component i0 (1-based) of the existence theorem.
struct ExistenceHypotheses {
    double r = 0.0;
    double R = 1.0;
    double delta = 1.0;
    int i0 = 1;
    int resolution = 200;
    double spectral_tol = 1e-12;
    std::uint64_t seed = 42;
};

/// tau_i and xi_ij of the non-existence theorem.
struct NonexistenceHypotheses {
    std::vector<double> taus;
    std::vector<std::vector<double>> xis;
    int resolution = 200;
    std::uint64_t seed = 42;
    /// Accept h_ij <= xi_ij ||u_i|| as stated for functionals the checker cannot bound.
    bool attest_functionals = false;
};

struct InequalityRecord {
    std::string name;
    std::string relation;  // "<=", ">=" or "<"
    double lhs = 0.0;
    double rhs = 0.0;
    /// Signed slack, positive when the inequality holds.
    double margin = 0.0;
    bool passed = false;
    /// A failure that over-approximation cannot explain.
    bool definitive = true;
    Provenance provenance = Provenance::Interval;
    std::string detail;
};

/// Contribution of one (component, derivative level) pair to the outer bound.
struct BoundRow {
    int component = 1;
    int level = 0;
    double value = 0.0;
};

struct ComponentConstants {
    std::vector<double> kernel_constants;      // K_l used by the check
    std::vector<double> kernel_constants_computed;
    std::vector<Provenance> kernel_constant_provenance;
    std::optional<double> characteristic_value;  // mu_i
    std::optional<double> f_bound;             // upper bound of f_i over I_R
    std::optional<double> f_sampled_max;       // empirical max, diagnostics only
    std::vector<std::vector<double>> gamma_norms;  // [term][level]
    std::vector<double> functional_bounds;     // H_ij over the ball of radius R
};

struct VerificationReport {
    std::string theorem;  // "existence" or "nonexistence"
    Verdict verdict = Verdict::Inconclusive;
    std::vector<InequalityRecord> records;
    std::vector<ComponentConstants> constants;
    std::vector<BoundRow> rows;
    std::vector<std::string> notes;
};

/// Pass iff every record passed with non-sampled provenance; Fail if some
/// record failed definitively; Inconclusive otherwise.
Verdict combine(const std::vector<InequalityRecord>& records);

/// Lower bound of f(t, x) / x_{component,0} over I_r with x_{component,0} > 0,
/// obtained by writing f = x^p * g and enclosing g. Empty when f does not
/// factor that way or g may be negative.
std::optional<double> growth_ratio_bound(const Expr& f, int component, const std::vector<int>& orders, double r);

/// Interval certificate of f >= delta * x_{component,0} on I_r.
bool growth_certified(const Expr& f, int component, const std::vector<int>& orders, double r, double delta);

/// Check the sufficient conditions for a solution with r <= ||u|| <= R.
VerificationReport check_existence(const SystemSpec& spec, const ExistenceHypotheses& hyp);

/// Check the sufficient conditions under which 0 is the only solution in the cone.
VerificationReport check_nonexistence(const SystemSpec& spec, const NonexistenceHypotheses& hyp);

struct ExistenceWindow {
    double r = 0.0;
    double delta = 0.0;
    bool feasible = false;
    double characteristic_value = 0.0;
};

/// Scan r = R 2^-k (k = 1..40) for the first r whose largest certified delta
/// satisfies lambda_{i0} >= mu_{i0} / delta.
ExistenceWindow search_existence_window(const SystemSpec& spec, double R, int i0, int resolution = 200,
                                        double spectral_tol = 1e-12);

}  // namespace perhamm
