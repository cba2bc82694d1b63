#pragma once

#include <string>

#include "json.hpp"
#include "perhamm/problem.hpp"
#include "perhamm/solver.hpp"
#include "perhamm/spectral.hpp"
#include "perhamm/verify.hpp"

namespace perhamm {

/// x rounded to 12 significant digits; reports carry only these digits.
double round12(double x);

nlohmann::json to_json(const InequalityRecord& record);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const EigenPair& pair, bool with_table = true);
nlohmann::json to_json(const DiscreteSolution& u, bool with_table = true);
nlohmann::json to_json(const MultistartResult& result, bool with_tables = true);

/// K_l, gamma norms, mu and the positivity check for every component.
nlohmann::json constants_report(const ProblemFile& problem, const SystemSpec& spec);
nlohmann::json spectral_report(const ProblemFile& problem, const SystemSpec& spec);

/// Tab-separated table: node, u1, u1', ..., un^(m_n).
std::string solution_table(const DiscreteSolution& u);

/// Exit status for a verdict: 0 pass, 1 fail, 2 inconclusive.
int exit_code(Verdict verdict);

}  // namespace perhamm
