#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wsp/model.hpp"
#include "wsp/pattern.hpp"

namespace wsp {

struct OracleLimits {
    int max_steps = 8;
    /// Upper bound on the number of plans the odometer may visit.
    std::uint64_t max_plans = 200'000'000;
};

class OracleBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    Verdict verdict = Verdict::Unsat;
    /// Every valid pattern, canonical under the natural order, ascending.
    std::vector<Pattern> patterns;
    /// witnesses[i] is the first valid plan met whose pattern is patterns[i].
    std::vector<Plan> witnesses;
    std::uint64_t plans_checked = 0;
};

/// Brute force: walks every plan that gives each step one of its authorised
/// users (any other plan is invalid on its face) and runs validate_plan on
/// it. Uses no matching, no pruning and no preprocessing, so it can serve as
/// ground truth for the solver. Throws OracleBudgetExceeded when the
/// instance is beyond `limits`.
OracleResult oracle_solve(const WorkflowInstance& instance, const OracleLimits& limits = {});

} // namespace wsp
