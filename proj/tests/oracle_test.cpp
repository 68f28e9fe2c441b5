#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wsp/oracle.hpp"

using namespace wsp;

TEST(OracleTest, RunningExampleHasOnePattern)
{
    auto r = oracle_solve(test::golden());
    EXPECT_EQ(r.verdict, Verdict::Sat);
    ASSERT_EQ(r.patterns.size(), 1u);
    EXPECT_EQ(r.patterns[0], Pattern::from_labels({1, 1, 2, 3}));
    // Authorised plans only: 2 * 2 * 3 * 3.
    EXPECT_EQ(r.plans_checked, 36u);
    EXPECT_TRUE(validate_plan(test::golden(), r.witnesses[0]).valid());
}

TEST(OracleTest, SingleUserNotEqualsIsUnsat)
{
    auto r = oracle_solve(parse_instance("wsp 2 1\nauth 0 0 1\nne 0 1\n"));
    EXPECT_EQ(r.verdict, Verdict::Unsat);
    EXPECT_TRUE(r.patterns.empty());
}

TEST(OracleTest, UnconstrainedThreeStepsGivesFivePatterns)
{
    auto r = oracle_solve(parse_instance("wsp 3 3\nauth 0 0 1 2\nauth 1 0 1 2\nauth 2 0 1 2\n"));
    EXPECT_EQ(r.patterns.size(), 5u);
    EXPECT_EQ(r.plans_checked, 27u);
    EXPECT_TRUE(std::is_sorted(r.patterns.begin(), r.patterns.end()));
}

TEST(OracleTest, UnauthorisedStepSkipsEnumeration)
{
    auto r = oracle_solve(parse_instance("wsp 2 2\nauth 0 0\nauth 1 0\n"));
    EXPECT_EQ(r.verdict, Verdict::Unsat);
    EXPECT_EQ(r.plans_checked, 0u);
}

TEST(OracleTest, BudgetLimits)
{
    auto w = parse_instance("wsp 3 3\nauth 0 0 1 2\nauth 1 0 1 2\nauth 2 0 1 2\n");
    EXPECT_THROW(oracle_solve(w, OracleLimits{2, 1000}), OracleBudgetExceeded);
    EXPECT_THROW(oracle_solve(w, OracleLimits{8, 26}), OracleBudgetExceeded);
    EXPECT_NO_THROW(oracle_solve(w, OracleLimits{3, 27}));
}
