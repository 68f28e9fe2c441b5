#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <vector>

#include "wsp/matching.hpp"
#include "wsp/model.hpp"
#include "wsp/pattern.hpp"

namespace wsp {

/// Weights of the branching score
///   rho(s) = c_ne + alpha * c0 + beta * c1 + gamma * c2
/// where c_ne counts not-equals constraints on s and ci counts at-most-r
/// constraints on s whose assigned scope steps already use r - i distinct
/// labels. At-least constraints do not contribute.
struct HeuristicParams {
    double alpha = 100.0;
    double beta = 2.0;
    double gamma = 1.0;
};

struct SolverOptions {
    HeuristicParams heuristic;
    /// No limit when empty. Checked every kDeadlineStride nodes.
    std::optional<std::chrono::duration<double>> time_limit;
    /// Reject an extension whose block has no common authorised user.
    bool authorisation_prune = true;
    /// Reject an extension that leaves some constraint on the new step
    /// unsatisfiable. When off, eligibility is checked at complete patterns.
    bool eligibility_gate = true;
};

inline constexpr std::uint64_t kDeadlineStride = 1024;

/// Depth-first search state: one pattern with its undo trail, per-block
/// authorised-user intersections and incremental constraint counters.
/// Memory is O(kn + k|C|).
class SearchState {
public:
    SearchState(const WorkflowInstance& instance, HeuristicParams params = {});

    const WorkflowInstance& instance() const { return *instance_; }
    const PatternTrail& trail() const { return trail_; }
    const Pattern& pattern() const { return trail_.pattern(); }

    void push(Step step, int label);
    void pop();

    /// Branching score of an unassigned step.
    double rho(Step step) const;
    /// Same score computed from scratch over the current pattern.
    double rho_from_scratch(Step step) const;
    /// Unassigned step with maximal rho; ties go to the lowest index.
    Step select_step() const;

    /// True if the block holding `step` still has an authorised user.
    bool block_authorised(Step step) const;
    /// Partial check of every constraint whose scope contains `step`.
    bool eligible_at(Step step) const;
    /// Full check of every constraint; the pattern must be complete.
    bool eligible_complete() const;

private:
    struct Counter {
        int constraint = -1;
        bool at_most = false;
        int bound = 0;
        int distinct = 0;
        int unassigned = 0;
        std::vector<int> label_count;
    };

    void shift_buckets(const Counter& counter, int old_distinct, int new_distinct);

    const WorkflowInstance* instance_;
    HeuristicParams params_;
    PatternTrail trail_;
    std::vector<Counter> counters_;
    std::vector<int> counter_of_;               // constraint -> counter or -1
    std::vector<std::vector<int>> touching_;    // step -> constraint indices
    std::vector<int> not_equals_count_;
    std::vector<std::array<int, 3>> tightness_;  // step -> (c0, c1, c2)
};

/// Pattern-backtracking search. The instance must be free of
/// binding-of-duty constraints (see preprocess()); std::invalid_argument
/// otherwise. Deterministic for fixed inputs.
SolveOutcome solve(const WorkflowInstance& instance, const SolverOptions& options = {});

/// Preprocesses, solves and expands the plan back to the original steps.
SolveOutcome solve_workflow(const WorkflowInstance& instance, const SolverOptions& options = {});

struct Enumeration {
    /// One entry per valid complete pattern, in search order. Patterns are
    /// canonical under the natural step order.
    std::vector<Pattern> patterns;
    std::vector<Plan> witnesses;
    SolveStats stats;
    bool timed_out = false;
};

/// As solve(), but keeps searching after a success and records every valid
/// pattern with one witness plan.
Enumeration solve_enumerating(const WorkflowInstance& instance, const SolverOptions& options = {});

/// solve_enumerating() on the preprocessed instance, with patterns and
/// witnesses stated over the original steps.
Enumeration enumerate_workflow(const WorkflowInstance& instance, const SolverOptions& options = {});

} // namespace wsp
