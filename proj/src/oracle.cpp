#include "wsp/oracle.hpp"

#include <map>

namespace wsp {

OracleResult oracle_solve(const WorkflowInstance& instance, const OracleLimits& limits)
{
    const int k = instance.step_count();
    if (k > limits.max_steps)
        throw OracleBudgetExceeded("oracle limited to " + std::to_string(limits.max_steps) +
                                   " steps, instance has " + std::to_string(k));

    std::vector<std::vector<User>> domain(k);
    std::uint64_t total = 1;
    for (Step s = 0; s < k; ++s) {
        domain[s] = instance.authorisations().users_of(s).to_vector();
        if (domain[s].empty()) {
            total = 0;
            break;
        }
        if (total > limits.max_plans / domain[s].size())
            throw OracleBudgetExceeded("oracle budget of " + std::to_string(limits.max_plans) +
                                       " plans exceeded");
        total *= domain[s].size();
    }

    OracleResult result;
    std::map<Pattern, Plan> valid;
    if (total > 0) {
        std::vector<std::size_t> digit(k, 0);
        Plan plan(k);
        for (Step s = 0; s < k; ++s)
            plan.assign(s, domain[s][0]);
        while (true) {
            ++result.plans_checked;
            if (validate_plan(instance, plan).valid())
                valid.try_emplace(encode(plan), plan);
            // Odometer: last step varies fastest.
            Step s = k - 1;
            while (s >= 0 && ++digit[s] == domain[s].size()) {
                digit[s] = 0;
                plan.assign(s, domain[s][0]);
                --s;
            }
            if (s < 0)
                break;
            plan.assign(s, domain[s][digit[s]]);
        }
    }

    for (auto& [pattern, plan] : valid) {
        result.patterns.push_back(pattern);
        result.witnesses.push_back(plan);
    }
    result.verdict = valid.empty() ? Verdict::Unsat : Verdict::Sat;
    return result;
}

} // namespace wsp
