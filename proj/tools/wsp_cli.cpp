// wsp: command-line front end for the pattern-backtracking WSP solver.
//
// Exit codes: 0 sat / success, 20 unsat, 21 timeout, 2 input error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "wsp/bench.hpp"
#include "wsp/generator.hpp"
#include "wsp/model.hpp"
#include "wsp/oracle.hpp"
#include "wsp/solver.hpp"

namespace {

constexpr int kExitSat = 0;
constexpr int kExitInput = 2;
constexpr int kExitUnsat = 20;
constexpr int kExitTimeout = 21;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "250ms", "30s", "5m", "1h"; a bare number means seconds.
std::chrono::duration<double> parse_duration(const std::string& text)
{
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InputError("bad duration '" + text + "'");
    }
    const std::string unit = text.substr(used);
    double scale = 1.0;
    if (unit == "ms")
        scale = 1e-3;
    else if (unit == "s" || unit.empty())
        scale = 1.0;
    else if (unit == "m" || unit == "min")
        scale = 60.0;
    else if (unit == "h")
        scale = 3600.0;
    else
        throw InputError("bad duration unit in '" + text + "'");
    if (value < 0 || !std::isfinite(value))
        throw InputError("duration must be non-negative");
    return std::chrono::duration<double>(value * scale);
}

wsp::WorkflowInstance read_instance(const std::string& path)
{
    try {
        return wsp::load_instance(path);
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path);
    out << text;
}

int exit_code(wsp::Verdict v)
{
    switch (v) {
    case wsp::Verdict::Sat:
        return kExitSat;
    case wsp::Verdict::Unsat:
        return kExitUnsat;
    case wsp::Verdict::Timeout:
        return kExitTimeout;
    }
    return kExitInput;
}

void print_stats(const wsp::SolveStats& s)
{
    std::cerr << "nodes=" << s.nodes << '\n'
              << "authorisation_prunes=" << s.authorisation_prunes << '\n'
              << "eligibility_prunes=" << s.eligibility_prunes << '\n'
              << "matchings_attempted=" << s.matchings_attempted << '\n'
              << "matchings_full=" << s.matchings_full << '\n'
              << "wall_ms=" << s.wall_time.count() << '\n';
}

struct SolveArgs {
    std::string instance;
    std::string time_limit;
    std::string out;
    wsp::HeuristicParams heuristic;
    bool stats = false;
    bool no_auth_prune = false;
    bool no_eligibility_gate = false;
};

wsp::SolverOptions solver_options(const SolveArgs& a)
{
    wsp::SolverOptions o;
    o.heuristic = a.heuristic;
    if (!a.time_limit.empty())
        o.time_limit = parse_duration(a.time_limit);
    o.authorisation_prune = !a.no_auth_prune;
    o.eligibility_gate = !a.no_eligibility_gate;
    return o;
}

int cmd_solve(const SolveArgs& a)
{
    auto instance = read_instance(a.instance);
    auto outcome = wsp::solve_workflow(instance, solver_options(a));
    write_text(a.out, wsp::format_solution(outcome));
    if (a.stats)
        print_stats(outcome.stats);
    return exit_code(outcome.verdict);
}

struct GenerateArgs {
    int k = 0;
    int e = -1;
    double density = -1;
    int c = 0;
    std::uint64_t seed = 0;
    int users = 0;
    std::string out;
    std::string suite;
    std::string dir = ".";
};

int cmd_generate(const GenerateArgs& a)
{
    if (!a.suite.empty()) {
        auto items = wsp::expand_suite(wsp::parse_suite(a.suite));
        std::filesystem::create_directories(a.dir);
        for (const auto& item : items) {
            auto path = std::filesystem::path(a.dir) / (item.id + ".wsp");
            wsp::save_instance(path, wsp::generate(item.config));
            std::cout << path.string() << '\n';
        }
        return 0;
    }
    if (a.k < 1)
        throw InputError("generate needs --k or --suite");
    if (a.e >= 0 && a.density >= 0)
        throw InputError("give either --e or --density, not both");
    wsp::GeneratorConfig config;
    config.steps = a.k;
    config.not_equals = a.e >= 0 ? a.e : a.density >= 0 ? wsp::density_to_e(a.k, a.density) : 0;
    config.counting = a.c;
    config.seed = a.seed;
    config.users = a.users;
    write_text(a.out, wsp::serialize_instance(wsp::generate(config)));
    return 0;
}

struct EnumerateArgs {
    std::string instance;
    int patterns_k = 0;
    std::string time_limit;
};

int cmd_enumerate(const EnumerateArgs& a)
{
    if (a.patterns_k > 0) {
        auto count = wsp::enumerate_complete(a.patterns_k);
        std::cout << "patterns=" << count.patterns << "\nnodes=" << count.nodes << '\n';
        return 0;
    }
    if (a.instance.empty())
        throw InputError("enumerate needs an instance file or --patterns");
    auto instance = read_instance(a.instance);
    wsp::SolverOptions o;
    if (!a.time_limit.empty())
        o.time_limit = parse_duration(a.time_limit);
    auto result = wsp::enumerate_workflow(instance, o);
    for (std::size_t i = 0; i < result.patterns.size(); ++i) {
        std::cout << "pattern";
        for (int x : result.patterns[i].labels())
            std::cout << ' ' << x;
        std::cout << " witness";
        for (wsp::User u : result.witnesses[i].users())
            std::cout << ' ' << u;
        std::cout << '\n';
    }
    std::cout << "valid_patterns=" << result.patterns.size() << '\n';
    print_stats(result.stats);
    if (result.timed_out)
        return kExitTimeout;
    return result.patterns.empty() ? kExitUnsat : kExitSat;
}

struct OracleArgs {
    std::string instance;
    std::uint64_t max_plans = wsp::OracleLimits{}.max_plans;
};

int cmd_oracle(const OracleArgs& a)
{
    auto instance = read_instance(a.instance);
    wsp::OracleLimits limits;
    limits.max_plans = a.max_plans;
    wsp::OracleResult r;
    try {
        r = wsp::oracle_solve(instance, limits);
    } catch (const wsp::OracleBudgetExceeded& e) {
        throw InputError(e.what());
    }
    wsp::SolveOutcome outcome;
    outcome.verdict = r.verdict;
    if (!r.witnesses.empty())
        outcome.plan = r.witnesses.front();
    std::cout << wsp::format_solution(outcome);
    std::cerr << "valid_patterns=" << r.patterns.size() << "\nplans_checked=" << r.plans_checked
              << '\n';
    return exit_code(r.verdict);
}

struct BenchArgs {
    std::string suite;
    std::string time_limit = "1h";
    std::string out;
    std::string summarize;
    int jobs = 1;
};

void print_rates(const std::map<int, double>& rates)
{
    for (auto [k, rate] : rates)
        std::cout << "k=" << k << " success_rate=" << rate << '\n';
}

int cmd_bench(const BenchArgs& a)
{
    if (!a.summarize.empty()) {
        std::ifstream in(a.summarize);
        if (!in)
            throw InputError("cannot open " + a.summarize);
        print_rates(wsp::success_rates(wsp::read_csv(in)));
        return 0;
    }
    if (a.suite.empty())
        throw InputError("bench needs --suite or --summarize");
    wsp::BenchOptions options;
    options.time_limit = parse_duration(a.time_limit);
    options.jobs = a.jobs;
    options.progress = [](const wsp::BenchRecord& r) {
        std::cerr << r.id << ' ' << r.verdict << ' ' << r.wall_ms << "ms nodes=" << r.nodes << '\n';
    };
    auto records = wsp::run_bench(wsp::parse_suite(a.suite), options);
    std::ostringstream csv;
    wsp::write_csv(csv, records);
    if (a.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text(a.out, csv.str());
        print_rates(wsp::success_rates(records));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Workflow satisfiability solver (pattern backtracking)"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Solve an instance file");
    solve->add_option("instance", solve_args.instance, "Instance file")->required();
    solve->add_option("--time-limit", solve_args.time_limit, "e.g. 500ms, 30s, 1h");
    solve->add_option("--alpha", solve_args.heuristic.alpha, "Weight of tight at-most constraints");
    solve->add_option("--beta", solve_args.heuristic.beta, "Weight of one-away at-most constraints");
    solve->add_option("--gamma", solve_args.heuristic.gamma, "Weight of two-away at-most constraints");
    solve->add_flag("--stats", solve_args.stats, "Print key=value statistics to stderr");
    solve->add_option("-o,--out", solve_args.out, "Solution file (default stdout)");
    solve->add_flag("--no-auth-prune", solve_args.no_auth_prune, "Disable the block authorisation prune");
    solve->add_flag("--no-eligibility-gate", solve_args.no_eligibility_gate,
                    "Check constraints only at complete patterns");

    GenerateArgs gen_args;
    auto* gen = app.add_subcommand("generate", "Generate random instances");
    gen->add_option("--k", gen_args.k, "Number of steps");
    gen->add_option("--e", gen_args.e, "Number of not-equals constraints");
    gen->add_option("--density", gen_args.density, "Not-equals density in percent");
    gen->add_option("--c", gen_args.c, "Number of at-most and of at-least constraints");
    gen->add_option("--seed", gen_args.seed, "Random seed");
    gen->add_option("--users", gen_args.users, "Number of users (default 10k)");
    gen->add_option("-o,--out", gen_args.out, "Output file (default stdout)");
    gen->add_option("--suite", gen_args.suite, "e.g. \"k=30 d=10 c=1.0k,1.2k,1.4k seeds=1-10\"");
    gen->add_option("--dir", gen_args.dir, "Output directory for --suite");

    EnumerateArgs enum_args;
    auto* enumerate = app.add_subcommand("enumerate", "List every valid pattern of an instance");
    enumerate->add_option("instance", enum_args.instance, "Instance file");
    enumerate->add_option("--patterns", enum_args.patterns_k, "Count complete patterns over k steps");
    enumerate->add_option("--time-limit", enum_args.time_limit, "e.g. 30s");

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "Brute-force check of a small instance");
    oracle->add_option("instance", oracle_args.instance, "Instance file")->required();
    oracle->add_option("--max-plans", oracle_args.max_plans, "Enumeration budget");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Run an instance suite and report success rates");
    bench->add_option("--suite", bench_args.suite, "e.g. \"k=30 d=10 c=1.0k,1.2k,1.4k seeds=1-10\"");
    bench->add_option("--time-limit", bench_args.time_limit, "Per-instance limit (default 1h)");
    bench->add_option("--jobs", bench_args.jobs, "Instances solved concurrently");
    bench->add_option("-o,--out", bench_args.out, "CSV output (default stdout)");
    bench->add_option("--summarize", bench_args.summarize, "Print success rates of an existing CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*solve)
            return cmd_solve(solve_args);
        if (*gen)
            return cmd_generate(gen_args);
        if (*enumerate)
            return cmd_enumerate(enum_args);
        if (*oracle)
            return cmd_oracle(oracle_args);
        if (*bench)
            return cmd_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "wsp: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
