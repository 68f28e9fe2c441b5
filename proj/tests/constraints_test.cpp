#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wsp/constraints.hpp"

using namespace wsp;

namespace {

Pattern P(std::vector<int> labels)
{
    return Pattern::from_labels(std::move(labels));
}

/// `full` with the steps outside `mask` cleared.
Pattern restrict_to(const std::vector<int>& full, unsigned mask)
{
    std::vector<int> labels(full.size(), 0);
    for (std::size_t s = 0; s < full.size(); ++s)
        if (mask >> s & 1u)
            labels[s] = full[s];
    return P(labels);
}

std::vector<Constraint> sample_constraints(int k)
{
    std::vector<Constraint> cs;
    for (Step s = 0; s < k; ++s)
        for (Step t = s + 1; t < k; ++t) {
            cs.push_back(not_equals(s, t));
            cs.push_back(binding_of_duty(s, t));
        }
    // Every scope of size >= 2 containing step 0, with every bound.
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        if (!(mask & 1u) || std::popcount(mask) < 2)
            continue;
        std::vector<Step> scope;
        for (Step s = 0; s < k; ++s)
            if (mask >> s & 1u)
                scope.push_back(s);
        for (int r = 1; r <= static_cast<int>(scope.size()); ++r) {
            cs.push_back(at_most(r, scope));
            cs.push_back(at_least(r, scope));
        }
    }
    return cs;
}

/// "All assigned steps in scope share one label."
class AllEqual : public PatternPredicate {
public:
    explicit AllEqual(std::vector<Step> scope) : scope_(std::move(scope)) {}
    std::span<const Step> scope() const override { return scope_; }
    bool satisfied(const Pattern& p) const override { return may_be_satisfied(p); }
    bool may_be_satisfied(const Pattern& p) const override
    {
        int seen = 0;
        for (Step s : scope_) {
            if (p[s] == 0)
                continue;
            if (seen != 0 && p[s] != seen)
                return false;
            seen = p[s];
        }
        return true;
    }
    std::string name() const override { return "all-equal"; }

private:
    std::vector<Step> scope_;
};

} // namespace

TEST(ConstructorsTest, NormaliseAndReject)
{
    EXPECT_EQ(not_equals(3, 1), Constraint(NotEquals{1, 3}));
    EXPECT_EQ(at_most(2, {4, 0, 2}), Constraint(AtMost{2, {0, 2, 4}}));
    EXPECT_THROW(not_equals(2, 2), std::invalid_argument);
    EXPECT_THROW(at_most(0, {0, 1}), std::invalid_argument);
    EXPECT_THROW(at_least(3, {0, 1}), std::invalid_argument);
    EXPECT_THROW(at_most(1, {0}), std::invalid_argument);
    EXPECT_THROW(at_most(1, {0, 0}), std::invalid_argument);
    EXPECT_THROW(check_well_formed(not_equals(0, 5), 5), std::invalid_argument);
}

TEST(CheckCompleteTest, NotEquals)
{
    EXPECT_TRUE(check_complete(not_equals(1, 2), P({1, 1, 2, 3})));
    EXPECT_FALSE(check_complete(not_equals(0, 1), P({1, 1, 2, 3})));
}

TEST(CheckCompleteTest, AtMostCountsDistinctLabels)
{
    auto c = at_most(3, {0, 1, 2, 3, 4});
    EXPECT_TRUE(check_complete(c, P({1, 2, 3, 1, 1})));
    EXPECT_FALSE(check_complete(c, P({1, 2, 3, 4, 1})));
    EXPECT_FALSE(check_complete(c, P({1, 2, 3, 4, 5})));
}

TEST(CheckCompleteTest, AtLeast)
{
    auto c = at_least(3, {0, 1, 2, 3, 4});
    EXPECT_TRUE(check_complete(c, P({1, 2, 3, 1, 1})));
    EXPECT_FALSE(check_complete(c, P({1, 2, 1, 2, 1})));
}

TEST(CheckCompleteTest, RejectsPartialPattern)
{
    EXPECT_THROW(check_complete(not_equals(0, 1), P({1, 0})), std::invalid_argument);
}

TEST(CheckPartialTest, NotEqualsBothAssignedEqual)
{
    EXPECT_EQ(check_partial(not_equals(0, 1), P({1, 1, 0, 0})), PartialStatus::Dead);
    EXPECT_EQ(check_partial(not_equals(0, 2), P({1, 1, 0, 0})), PartialStatus::Consistent);
}

TEST(CheckPartialTest, AtMostExceeded)
{
    auto c = at_most(3, {0, 1, 2, 3, 4});
    EXPECT_EQ(check_partial(c, P({1, 2, 3, 4, 0})), PartialStatus::Dead);
    EXPECT_EQ(check_partial(c, P({1, 2, 3, 0, 0})), PartialStatus::Consistent);
}

TEST(CheckPartialTest, AtLeastLookAhead)
{
    auto c = at_least(3, {0, 1, 2, 3, 4});
    // One label over four scope steps, one unassigned: 1 + 1 < 3.
    EXPECT_EQ(check_partial(c, P({1, 1, 1, 1, 0})), PartialStatus::Dead);
    // One label, two unassigned: 1 + 2 = 3 still reachable.
    EXPECT_EQ(check_partial(c, P({1, 1, 1, 0, 0})), PartialStatus::Consistent);
}

TEST(CheckPartialTest, CountingStatusHelper)
{
    EXPECT_EQ(counting_status(true, 3, 4, 0), PartialStatus::Dead);
    EXPECT_EQ(counting_status(true, 3, 3, 2), PartialStatus::Consistent);
    EXPECT_EQ(counting_status(false, 3, 1, 1), PartialStatus::Dead);
    EXPECT_EQ(counting_status(false, 3, 1, 2), PartialStatus::Consistent);
}

// For every complete pattern Q over k <= 6 steps and every subset T of
// steps, Q restricted to T is a partial pattern and Q is one of its
// completions. That yields soundness, agreement and monotonicity checks for
// every (partial pattern, completion) pair.
TEST(CheckPartialTest, SoundAgreeingAndMonotone)
{
    for (int k = 2; k <= 6; ++k) {
        auto cs = sample_constraints(k);
        const unsigned all = (1u << k) - 1;
        test::for_each_partition(k, [&](const std::vector<int>& rgs) {
            Pattern q = P(rgs);
            for (const auto& c : cs) {
                const bool satisfied = check_complete(c, q);
                EXPECT_EQ(check_partial(c, q) == PartialStatus::Dead, !satisfied) << to_string(c);
                for (unsigned mask = 0; mask <= all; ++mask) {
                    if (check_partial(c, restrict_to(rgs, mask)) != PartialStatus::Dead)
                        continue;
                    EXPECT_FALSE(satisfied) << to_string(c);
                    // Dead stays dead after any single further assignment,
                    // hence on every extension.
                    for (int s = 0; s < k; ++s)
                        if (!(mask >> s & 1u)) {
                            EXPECT_EQ(check_partial(c, restrict_to(rgs, mask | 1u << s)),
                                      PartialStatus::Dead)
                                << to_string(c);
                        }
                }
            }
        });
    }
}

TEST(SatisfiedByTest, AgreesWithPatternEvaluation)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        int k = 2 + trial % 5;
        auto cs = sample_constraints(k);
        std::vector<User> users(k);
        for (auto& u : users)
            u = static_cast<User>(rng() % 4);
        Plan plan(users);
        for (const auto& c : cs)
            EXPECT_EQ(satisfied_by(c, plan), check_complete(c, encode(plan))) << to_string(c);
    }
}

TEST(CustomConstraintTest, PredicateIsConsulted)
{
    Constraint c = Custom{std::make_shared<AllEqual>(std::vector<Step>{0, 2})};
    EXPECT_EQ(scope_of(c), (std::vector<Step>{0, 2}));
    EXPECT_TRUE(check_complete(c, P({1, 2, 1})));
    EXPECT_FALSE(check_complete(c, P({1, 2, 2})));
    EXPECT_EQ(check_partial(c, P({1, 0, 0})), PartialStatus::Consistent);
    EXPECT_EQ(check_partial(c, P({1, 2, 2})), PartialStatus::Dead);
    EXPECT_TRUE(satisfied_by(c, Plan({4, 0, 4})));
    EXPECT_EQ(to_string(c), "custom all-equal");
}

TEST(ToStringTest, FileSyntax)
{
    EXPECT_EQ(to_string(not_equals(2, 1)), "ne 1 2");
    EXPECT_EQ(to_string(binding_of_duty(0, 3)), "bd 0 3");
    EXPECT_EQ(to_string(at_most(3, {4, 3, 2, 1, 0})), "atmost 3 0 1 2 3 4");
    EXPECT_EQ(to_string(at_least(2, {1, 0})), "atleast 2 0 1");
}
