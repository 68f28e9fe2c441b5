#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wsp/authorisation.hpp"
#include "wsp/constraints.hpp"
#include "wsp/plan.hpp"

namespace wsp {

/// W = (S, U, A, C). Immutable once built; safe to share between solver
/// threads. Construction validates every index and drops duplicate
/// constraints, keeping the first occurrence.
class WorkflowInstance {
public:
    WorkflowInstance(AuthorisationLists auth, std::vector<Constraint> constraints);

    int step_count() const { return auth_.step_count(); }
    int user_count() const { return auth_.user_count(); }
    const AuthorisationLists& authorisations() const { return auth_; }
    std::span<const Constraint> constraints() const { return constraints_; }

    bool has_binding_of_duty() const;

    bool operator==(const WorkflowInstance&) const = default;

private:
    AuthorisationLists auth_;
    std::vector<Constraint> constraints_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

WorkflowInstance parse_instance(std::string_view text);
std::string serialize_instance(const WorkflowInstance& instance);

WorkflowInstance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const WorkflowInstance& instance);

struct PlanCheck {
    enum class Kind { Valid, NotAuthorised, Violates };
    Kind kind = Kind::Valid;
    Step step = -1;       // NotAuthorised: the offending step
    int constraint = -1;  // Violates: index into instance.constraints()

    bool valid() const { return kind == Kind::Valid; }
};

/// Authorisation first, then constraints in order; reports the first
/// failure. Throws std::invalid_argument for an incomplete or mis-sized
/// plan, or a user index outside [0, n).
PlanCheck validate_plan(const WorkflowInstance& instance, const Plan& plan);

/// Result of merging binding-of-duty classes.
struct Preprocessed {
    WorkflowInstance instance;
    /// Original step -> merged step.
    std::vector<Step> representative;
    /// Merged step -> original steps, ascending.
    std::vector<std::vector<Step>> members;
    /// Some constraint became unsatisfiable under the merge (a not-equals
    /// inside one class, or an at-least whose scope collapsed below r).
    bool contradictory = false;

    /// Plan over merged steps -> plan over original steps.
    Plan expand(const Plan& merged) const;
    /// Plan over original steps -> plan over merged steps; each merged step
    /// takes the user of its lowest member.
    Plan reduce(const Plan& original) const;
};

/// Merges each binding-of-duty class into one step authorised for the
/// intersection of its members' users, rewrites the other constraints onto
/// the merged steps and drops those the merge makes vacuous.
Preprocessed preprocess(const WorkflowInstance& instance);

enum class Verdict { Sat, Unsat, Timeout };

std::string_view to_string(Verdict v);

struct SolveStats {
    std::uint64_t nodes = 0;
    std::uint64_t authorisation_prunes = 0;
    std::uint64_t eligibility_prunes = 0;
    std::uint64_t matchings_attempted = 0;
    std::uint64_t matchings_full = 0;
    std::chrono::duration<double, std::milli> wall_time{0};
};

/// Sat carries a complete plan; Unsat and Timeout carry none.
struct SolveOutcome {
    Verdict verdict = Verdict::Unsat;
    std::optional<Plan> plan;
    SolveStats stats;
};

/// "sat" + one "assign <step> <user>" line per step, or "unsat", or "timeout".
std::string format_solution(const SolveOutcome& outcome);
/// Inverse of format_solution; statistics are not part of the format.
SolveOutcome parse_solution(std::string_view text, int step_count);

} // namespace wsp
