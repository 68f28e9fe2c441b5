#include "wsp/constraints.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wsp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::vector<Step> normalise_scope(std::vector<Step> scope)
{
    std::sort(scope.begin(), scope.end());
    if (std::adjacent_find(scope.begin(), scope.end()) != scope.end())
        throw std::invalid_argument("scope lists a step twice");
    if (scope.size() < 2)
        throw std::invalid_argument("scope needs at least two steps");
    return scope;
}

void check_bound(int bound, std::size_t scope_size)
{
    if (bound < 1 || bound > static_cast<int>(scope_size))
        throw std::invalid_argument("bound " + std::to_string(bound) + " outside 1.." +
                                    std::to_string(scope_size));
}

void check_pair(Step s, Step t)
{
    if (s == t)
        throw std::invalid_argument("pair constraint on a single step");
}

int distinct_labels(std::span<const Step> scope, const Pattern& p, int& unassigned)
{
    // Scopes are small; a quadratic scan beats allocating.
    int distinct = 0;
    unassigned = 0;
    for (std::size_t i = 0; i < scope.size(); ++i) {
        int x = p[scope[i]];
        if (x == 0) {
            ++unassigned;
            continue;
        }
        bool fresh = true;
        for (std::size_t j = 0; j < i; ++j)
            if (p[scope[j]] == x) {
                fresh = false;
                break;
            }
        distinct += fresh;
    }
    return distinct;
}

int distinct_users(std::span<const Step> scope, const Plan& plan)
{
    std::vector<User> users;
    for (Step s : scope)
        users.push_back(plan[s]);
    std::sort(users.begin(), users.end());
    return static_cast<int>(std::unique(users.begin(), users.end()) - users.begin());
}

} // namespace

Constraint not_equals(Step s, Step t)
{
    check_pair(s, t);
    return NotEquals{std::min(s, t), std::max(s, t)};
}

Constraint binding_of_duty(Step s, Step t)
{
    check_pair(s, t);
    return BindingOfDuty{std::min(s, t), std::max(s, t)};
}

Constraint at_most(int bound, std::vector<Step> scope)
{
    scope = normalise_scope(std::move(scope));
    check_bound(bound, scope.size());
    return AtMost{bound, std::move(scope)};
}

Constraint at_least(int bound, std::vector<Step> scope)
{
    scope = normalise_scope(std::move(scope));
    check_bound(bound, scope.size());
    return AtLeast{bound, std::move(scope)};
}

void check_well_formed(const Constraint& c, int step_count)
{
    auto in_range = [&](Step s) {
        if (s < 0 || s >= step_count)
            throw std::invalid_argument("step " + std::to_string(s) + " out of range");
    };
    std::visit(overloaded{
                   [&](const NotEquals& ne) {
                       in_range(ne.first);
                       in_range(ne.second);
                       check_pair(ne.first, ne.second);
                   },
                   [&](const BindingOfDuty& bd) {
                       in_range(bd.first);
                       in_range(bd.second);
                       check_pair(bd.first, bd.second);
                   },
                   [&](const AtMost& am) {
                       for (Step s : am.scope)
                           in_range(s);
                       normalise_scope(am.scope);
                       check_bound(am.bound, am.scope.size());
                   },
                   [&](const AtLeast& al) {
                       for (Step s : al.scope)
                           in_range(s);
                       normalise_scope(al.scope);
                       check_bound(al.bound, al.scope.size());
                   },
                   [&](const Custom& cu) {
                       if (!cu.predicate)
                           throw std::invalid_argument("custom constraint without predicate");
                       for (Step s : cu.predicate->scope())
                           in_range(s);
                   },
               },
               c);
}

std::vector<Step> scope_of(const Constraint& c)
{
    return std::visit(overloaded{
                          [](const NotEquals& ne) { return std::vector<Step>{ne.first, ne.second}; },
                          [](const BindingOfDuty& bd) {
                              return std::vector<Step>{bd.first, bd.second};
                          },
                          [](const AtMost& am) { return am.scope; },
                          [](const AtLeast& al) { return al.scope; },
                          [](const Custom& cu) {
                              auto sc = cu.predicate->scope();
                              return std::vector<Step>(sc.begin(), sc.end());
                          },
                      },
                      c);
}

bool check_complete(const Constraint& c, const Pattern& p)
{
    if (!p.complete())
        throw std::invalid_argument("check_complete on a partial pattern");
    int unassigned = 0;
    return std::visit(overloaded{
                          [&](const NotEquals& ne) { return p[ne.first] != p[ne.second]; },
                          [&](const BindingOfDuty& bd) { return p[bd.first] == p[bd.second]; },
                          [&](const AtMost& am) {
                              return distinct_labels(am.scope, p, unassigned) <= am.bound;
                          },
                          [&](const AtLeast& al) {
                              return distinct_labels(al.scope, p, unassigned) >= al.bound;
                          },
                          [&](const Custom& cu) { return cu.predicate->satisfied(p); },
                      },
                      c);
}

PartialStatus check_partial(const Constraint& c, const Pattern& p)
{
    auto dead_if = [](bool dead) { return dead ? PartialStatus::Dead : PartialStatus::Consistent; };
    int unassigned = 0;
    return std::visit(
        overloaded{
            [&](const NotEquals& ne) {
                return dead_if(p[ne.first] != 0 && p[ne.first] == p[ne.second]);
            },
            [&](const BindingOfDuty& bd) {
                return dead_if(p[bd.first] != 0 && p[bd.second] != 0 &&
                               p[bd.first] != p[bd.second]);
            },
            [&](const AtMost& am) {
                int distinct = distinct_labels(am.scope, p, unassigned);
                return counting_status(true, am.bound, distinct, unassigned);
            },
            [&](const AtLeast& al) {
                int distinct = distinct_labels(al.scope, p, unassigned);
                return counting_status(false, al.bound, distinct, unassigned);
            },
            [&](const Custom& cu) { return dead_if(!cu.predicate->may_be_satisfied(p)); },
        },
        c);
}

bool satisfied_by(const Constraint& c, const Plan& plan)
{
    if (!plan.complete())
        throw std::invalid_argument("satisfied_by needs a complete plan");
    return std::visit(overloaded{
                          [&](const NotEquals& ne) { return plan[ne.first] != plan[ne.second]; },
                          [&](const BindingOfDuty& bd) {
                              return plan[bd.first] == plan[bd.second];
                          },
                          [&](const AtMost& am) { return distinct_users(am.scope, plan) <= am.bound; },
                          [&](const AtLeast& al) {
                              return distinct_users(al.scope, plan) >= al.bound;
                          },
                          [&](const Custom& cu) { return cu.predicate->satisfied(encode(plan)); },
                      },
                      c);
}

std::string to_string(const Constraint& c)
{
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const NotEquals& ne) { out << "ne " << ne.first << ' ' << ne.second; },
                   [&](const BindingOfDuty& bd) { out << "bd " << bd.first << ' ' << bd.second; },
                   [&](const AtMost& am) {
                       out << "atmost " << am.bound;
                       for (Step s : am.scope)
                           out << ' ' << s;
                   },
                   [&](const AtLeast& al) {
                       out << "atleast " << al.bound;
                       for (Step s : al.scope)
                           out << ' ' << s;
                   },
                   [&](const Custom& cu) { out << "custom " << cu.predicate->name(); },
               },
               c);
    return out.str();
}

} // namespace wsp
