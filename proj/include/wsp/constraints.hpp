#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wsp/pattern.hpp"
#include "wsp/plan.hpp"

namespace wsp {

/// (s, t, !=): the two steps go to different users.
struct NotEquals {
    Step first;
    Step second;
    bool operator==(const NotEquals&) const = default;
};

/// (s, t, =): the two steps go to the same user. Only appears before
/// preprocessing; the solver never sees it.
struct BindingOfDuty {
    Step first;
    Step second;
    bool operator==(const BindingOfDuty&) const = default;
};

/// (r, Q, <=): at most r distinct users across Q.
struct AtMost {
    int bound;
    std::vector<Step> scope;
    bool operator==(const AtMost&) const = default;
};

/// (r, Q, >=): at least r distinct users across Q.
struct AtLeast {
    int bound;
    std::vector<Step> scope;
    bool operator==(const AtLeast&) const = default;
};

/// Extension point for further user-independent constraints. Since such a
/// constraint cannot tell users apart, it is a predicate over patterns.
class PatternPredicate {
public:
    virtual ~PatternPredicate() = default;
    virtual std::span<const Step> scope() const = 0;
    /// `pattern` is complete.
    virtual bool satisfied(const Pattern& pattern) const = 0;
    /// False only if no completion of `pattern` can satisfy the predicate.
    virtual bool may_be_satisfied(const Pattern& pattern) const = 0;
    virtual std::string name() const = 0;
};

struct Custom {
    std::shared_ptr<const PatternPredicate> predicate;
    bool operator==(const Custom&) const = default;
};

using Constraint = std::variant<NotEquals, BindingOfDuty, AtMost, AtLeast, Custom>;

enum class PartialStatus { Consistent, Dead };

/// Normalised constructors: pairs are ordered, scopes sorted. Throw
/// std::invalid_argument on s == t, duplicate scope steps, |Q| < 2 or an
/// r outside 1..|Q|.
Constraint not_equals(Step s, Step t);
Constraint binding_of_duty(Step s, Step t);
Constraint at_most(int bound, std::vector<Step> scope);
Constraint at_least(int bound, std::vector<Step> scope);

/// Throws std::invalid_argument if the constraint breaks its family's
/// invariants or names a step outside [0, step_count).
void check_well_formed(const Constraint& c, int step_count);

std::vector<Step> scope_of(const Constraint& c);

/// True iff every plan encoded by the complete `pattern` satisfies `c`.
bool check_complete(const Constraint& c, const Pattern& pattern);

/// Dead only when no completion of `pattern` can satisfy `c`.
PartialStatus check_partial(const Constraint& c, const Pattern& pattern);

/// Partial test for the counting families from summary counts over the
/// scope: distinct labels among assigned scope steps and the number of
/// unassigned scope steps.
inline PartialStatus counting_status(bool at_most, int bound, int distinct, int unassigned)
{
    if (at_most)
        return distinct > bound ? PartialStatus::Dead : PartialStatus::Consistent;
    return distinct + unassigned < bound ? PartialStatus::Dead : PartialStatus::Consistent;
}

/// Direct evaluation on a complete plan, by user identity.
bool satisfied_by(const Constraint& c, const Plan& plan);

/// Instance-file syntax, e.g. "atmost 3 0 1 2 3 4".
std::string to_string(const Constraint& c);

} // namespace wsp
