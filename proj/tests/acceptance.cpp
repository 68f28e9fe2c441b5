// Acceptance suite: one PASS/FAIL line per criterion. Exit status is
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "wsp/generator.hpp"
#include "wsp/matching.hpp"
#include "wsp/oracle.hpp"
#include "wsp/solver.hpp"

using namespace wsp;
using Clock = std::chrono::steady_clock;

namespace {

// Runtime budgets, in seconds.
constexpr double kGoldenBudget = 1.0;
constexpr double kOracleBudget = 300.0;
constexpr double kBellBudget = 10.0;
constexpr double kMatchingBudget = 30.0;
constexpr double kPerInstanceLimit = 60.0;

// Oracle corpus: 200 instances with n cycling through k, 2k and 3k. The
// standard 10k users would put brute force out of reach at k = 7, and fewer
// users give a useful share of unsat instances.
constexpr int kCorpusSize = 200;
constexpr int kCorpusMaxUsersPerStep = 3;

// Random matching graphs.
constexpr int kGraphTrials = 1000;
constexpr int kGraphMaxSteps = 10;
constexpr int kGraphMaxUsers = 100;
constexpr int kBruteForceTrials = 200;
constexpr int kBruteForceMaxSteps = 6;
constexpr int kBruteForceMaxUsers = 5;

const char* kScaledSuite = "k=30 d=10 c=1.0k,1.2k,1.4k seeds=1-10";

struct Report {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why)
    {
        if (pass)
            detail << "; first failure: " << why;
        pass = false;
    }
};

int failures = 0;

void criterion(int number, const char* name, const std::function<void(Report&)>& body)
{
    Report report;
    const auto start = Clock::now();
    try {
        body(report);
    } catch (const std::exception& e) {
        report.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s criterion %d (%s): %.3f s%s\n", report.pass ? "PASS" : "FAIL", number, name,
                seconds, report.detail.str().c_str());
    std::fflush(stdout);
    failures += !report.pass;
}

void within(Report& r, Clock::time_point start, double budget)
{
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (seconds >= budget)
        r.fail("took " + std::to_string(seconds) + " s, budget " + std::to_string(budget) + " s");
}

std::vector<GeneratorConfig> oracle_corpus()
{
    std::vector<GeneratorConfig> combos;
    for (int k = 3; k <= 7; ++k)
        for (double d : {0.0, 10.0, 30.0})
            for (int c : {0, k}) {
                if (c > 0 && k < kCountingScope)
                    continue;
                GeneratorConfig config;
                config.steps = k;
                config.not_equals = density_to_e(k, d);
                config.counting = c;
                combos.push_back(config);
            }
    std::vector<GeneratorConfig> corpus;
    for (int i = 0; i < kCorpusSize; ++i) {
        GeneratorConfig config = combos[i % combos.size()];
        const int round = i / static_cast<int>(combos.size());
        config.users = (1 + round % kCorpusMaxUsersPerStep) * config.steps;
        config.seed = 1000 + static_cast<std::uint64_t>(i);
        corpus.push_back(config);
    }
    return corpus;
}

struct SuiteRun {
    std::vector<std::string> ids;
    std::vector<SolveOutcome> outcomes;
};

SuiteRun run_scaled_suite()
{
    SuiteRun run;
    SolverOptions opts;
    opts.time_limit = std::chrono::duration<double>(kPerInstanceLimit);
    for (const auto& item : expand_suite(parse_suite(kScaledSuite))) {
        run.ids.push_back(item.id);
        run.outcomes.push_back(solve_workflow(generate(item.config), opts));
    }
    return run;
}

} // namespace

int main()
{
    criterion(1, "running example", [](Report& r) {
        const auto start = Clock::now();
        auto w = test::golden();
        auto out = solve_workflow(w);
        if (out.verdict != Verdict::Sat || !out.plan)
            return r.fail("solver did not return sat");
        if (!validate_plan(w, *out.plan).valid())
            r.fail("plan does not validate");
        if (oracle_solve(w).verdict != Verdict::Sat)
            r.fail("oracle disagrees");
        within(r, start, kGoldenBudget);
        r.detail << "; nodes " << out.stats.nodes;
    });

    const auto corpus = oracle_corpus();

    criterion(2, "oracle equivalence", [&](Report& r) {
        const auto start = Clock::now();
        int sat = 0;
        for (const auto& config : corpus) {
            auto w = generate(config);
            auto truth = oracle_solve(w);
            auto out = solve_workflow(w);
            if (out.verdict != truth.verdict) {
                r.fail("verdict mismatch at k=" + std::to_string(config.steps) +
                       " seed=" + std::to_string(config.seed));
                continue;
            }
            if (out.verdict == Verdict::Sat) {
                ++sat;
                if (!validate_plan(w, *out.plan).valid())
                    r.fail("invalid witness at seed " + std::to_string(config.seed));
                if (!validate_plan(w, truth.witnesses.front()).valid())
                    r.fail("invalid oracle witness at seed " + std::to_string(config.seed));
            }
        }
        within(r, start, kOracleBudget);
        r.detail << "; " << corpus.size() << " instances, " << sat << " sat, "
                 << corpus.size() - sat << " unsat";
    });

    criterion(3, "pattern-space cardinality", [](Report& r) {
        const auto start = Clock::now();
        auto bell = test::bell_triangle(8);
        const std::uint64_t listed[] = {1, 2, 5, 15, 52, 203, 877, 4140};
        for (int k = 1; k <= 8; ++k) {
            if (bell[k] != listed[k - 1])
                r.fail("Bell triangle disagrees at k=" + std::to_string(k));
            auto count = enumerate_complete(k);
            if (count.patterns != bell[k])
                r.fail("pattern count at k=" + std::to_string(k));
            if (count.nodes > 2 * bell[k])
                r.fail("node bound at k=" + std::to_string(k));
            if (k == 8)
                r.detail << "; k=8: " << count.patterns << " patterns, " << count.nodes << " nodes";
        }
        within(r, start, kBellBudget);
    });

    criterion(4, "matching correctness", [](Report& r) {
        const auto start = Clock::now();
        std::mt19937_64 rng(2024);
        Matcher matcher;
        int full = 0;
        for (int trial = 0; trial < kGraphTrials; ++trial) {
            test::RandomInstanceSpec spec;
            spec.steps = 1 + static_cast<int>(rng() % kGraphMaxSteps);
            spec.users = 1 + static_cast<int>(rng() % kGraphMaxUsers);
            spec.auth_probability = std::uniform_real_distribution<double>(0.02, 0.5)(rng);
            spec.not_equals = spec.at_most = spec.at_least = 0;
            auto w = test::random_instance(rng, spec);
            std::vector<int> labels(spec.steps);
            int top = 0;
            for (auto& x : labels) {
                x = 1 + static_cast<int>(rng() % (top + 1));
                top = std::max(top, x);
            }
            Pattern p = Pattern::from_labels(labels);
            auto g = build_graph(w, p);
            bool expected = test::reference_max_matching(g) == g.left_size();
            auto m = matcher.find_full(g);
            if (m.has_value() != expected) {
                r.fail("matcher disagrees with reference at trial " + std::to_string(trial));
                continue;
            }
            if (m) {
                ++full;
                Plan plan = matching_to_plan(p, *m);
                if (!validate_plan(w, plan).valid() || encode(plan) != p)
                    r.fail("bad plan from matching at trial " + std::to_string(trial));
            }
        }
        // Both directions against every plan, for small k and n.
        for (int trial = 0; trial < kBruteForceTrials; ++trial) {
            test::RandomInstanceSpec spec;
            spec.steps = 1 + trial % kBruteForceMaxSteps;
            spec.users = 1 + static_cast<int>(rng() % kBruteForceMaxUsers);
            spec.auth_probability = 0.6;
            spec.not_equals = spec.at_most = spec.at_least = 0;
            auto w = test::random_instance(rng, spec);
            std::set<Pattern> realised;
            test::for_each_plan(spec.steps, spec.users, [&](const Plan& plan) {
                if (validate_plan(w, plan).valid())
                    realised.insert(encode(plan));
            });
            test::for_each_partition(spec.steps, [&](const std::vector<int>& rgs) {
                Pattern p = Pattern::from_labels(rgs);
                if (matcher.find_full(build_graph(w, p)).has_value() != (realised.count(p) == 1))
                    r.fail("brute force disagrees at trial " + std::to_string(trial));
            });
        }
        within(r, start, kMatchingBudget);
        r.detail << "; " << full << "/" << kGraphTrials << " full";
    });

    SuiteRun first;
    criterion(5, "scaled performance k=30", [&](Report& r) {
        first = run_scaled_suite();
        double slowest = 0;
        int sat = 0;
        for (std::size_t i = 0; i < first.ids.size(); ++i) {
            const auto& out = first.outcomes[i];
            double seconds = out.stats.wall_time.count() / 1000.0;
            slowest = std::max(slowest, seconds);
            if (out.verdict == Verdict::Timeout || seconds >= kPerInstanceLimit)
                r.fail(first.ids[i] + " exceeded the limit");
            sat += out.verdict == Verdict::Sat;
        }
        r.detail << "; " << first.ids.size() << " instances, " << sat << " sat, slowest "
                 << slowest << " s";
    });

    criterion(6, "prune safety", [&](Report& r) {
        SolverOptions off;
        off.authorisation_prune = false;
        off.eligibility_gate = false;
        std::uint64_t pruned = 0, unpruned = 0;
        for (const auto& config : corpus) {
            auto w = generate(config);
            auto a = solve_workflow(w);
            auto b = solve_workflow(w, off);
            if (a.verdict != b.verdict)
                r.fail("verdict changed at seed " + std::to_string(config.seed));
            if (b.stats.nodes < a.stats.nodes)
                r.fail("fewer nodes without pruning at seed " + std::to_string(config.seed));
            pruned += a.stats.nodes;
            unpruned += b.stats.nodes;
        }
        r.detail << "; nodes " << pruned << " pruned vs " << unpruned << " unpruned";
    });

    criterion(7, "determinism", [&](Report& r) {
        auto second = run_scaled_suite();
        if (second.ids != first.ids)
            return r.fail("suite expanded differently");
        for (std::size_t i = 0; i < first.ids.size(); ++i) {
            const auto& a = first.outcomes[i];
            const auto& b = second.outcomes[i];
            if (a.verdict != b.verdict || a.stats.nodes != b.stats.nodes || a.plan != b.plan)
                r.fail(first.ids[i] + " differs between runs");
        }
    });

    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
