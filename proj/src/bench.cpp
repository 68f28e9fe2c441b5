#include "wsp/bench.hpp"

#include <atomic>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace wsp {

namespace {

BenchRecord run_one(const SuiteInstance& item, const BenchOptions& options)
{
    BenchRecord r;
    r.kind = "instance";
    r.id = item.id;
    r.k = item.config.steps;
    r.e = item.config.not_equals;
    r.c = item.config.counting;
    r.seed = item.config.seed;
    try {
        WorkflowInstance instance = generate(item.config);
        SolverOptions so;
        so.heuristic = options.heuristic;
        so.time_limit = options.time_limit;
        SolveOutcome outcome = solve_workflow(instance, so);
        if (outcome.verdict == Verdict::Sat &&
            !validate_plan(instance, *outcome.plan).valid())
            throw std::logic_error("solver returned an invalid plan");
        r.verdict = std::string(to_string(outcome.verdict));
        r.wall_ms = outcome.stats.wall_time.count();
        r.nodes = outcome.stats.nodes;
        r.matchings = outcome.stats.matchings_attempted;
        r.prunes = outcome.stats.authorisation_prunes + outcome.stats.eligibility_prunes;
    } catch (const std::exception&) {
        r.verdict = "error";
    }
    return r;
}

std::string set_id_of(const BenchRecord& r)
{
    return "k" + std::to_string(r.k) + "_s" + std::to_string(r.seed);
}

} // namespace

std::vector<BenchRecord> run_bench(const SuiteSpec& spec, const BenchOptions& options)
{
    const auto items = expand_suite(spec);
    std::vector<BenchRecord> rows(items.size());

    std::atomic<std::size_t> next{0};
    std::mutex progress_lock;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
            rows[i] = run_one(items[i], options);
            if (options.progress) {
                std::lock_guard lock(progress_lock);
                options.progress(rows[i]);
            }
        }
    };
    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
    }

    // Sets, in first-appearance order.
    std::vector<BenchRecord> sets;
    std::map<std::string, std::size_t> set_index;
    for (const auto& r : rows) {
        auto id = set_id_of(r);
        auto [it, fresh] = set_index.try_emplace(id, sets.size());
        if (fresh) {
            BenchRecord s;
            s.kind = "set";
            s.id = id;
            s.k = r.k;
            s.e = r.e;
            s.seed = r.seed;
            s.verdict = "solved";
            sets.push_back(s);
        }
        BenchRecord& s = sets[it->second];
        if (r.verdict != "sat" && r.verdict != "unsat")
            s.verdict = "failed";
        s.wall_ms += r.wall_ms;
        s.nodes += r.nodes;
        s.matchings += r.matchings;
        s.prunes += r.prunes;
    }

    std::vector<BenchRecord> out = rows;
    out.insert(out.end(), sets.begin(), sets.end());
    for (auto [k, rate] : success_rates(rows)) {
        BenchRecord rr;
        rr.kind = "rate";
        rr.id = "k" + std::to_string(k);
        rr.k = k;
        rr.success_rate = rate;
        out.push_back(rr);
    }
    return out;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records)
{
    out << kBenchHeader << '\n';
    for (const auto& r : records) {
        const bool instance = r.kind == "instance";
        const bool rate = r.kind == "rate";
        out << r.kind << ',' << r.id << ',' << r.k << ',';
        if (!rate)
            out << r.e;
        out << ',';
        if (instance)
            out << r.c;
        out << ',';
        if (!rate)
            out << r.seed;
        out << ',' << r.verdict << ',';
        if (!rate)
            out << std::fixed << std::setprecision(3) << r.wall_ms << std::defaultfloat << ','
                << r.nodes << ',' << r.matchings << ',' << r.prunes;
        else
            out << ",,,";
        out << ',';
        if (rate)
            out << std::fixed << std::setprecision(6) << r.success_rate << std::defaultfloat;
        out << '\n';
    }
}

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

template <typename T>
T field(const std::string& s, int line)
{
    if (s.empty())
        return T{};
    std::istringstream in(s);
    T v{};
    in >> v;
    if (in.fail() || !in.eof())
        throw std::runtime_error("csv line " + std::to_string(line) + ": bad field '" + s + "'");
    return v;
}

} // namespace

std::vector<BenchRecord> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kBenchHeader)
        throw std::runtime_error("csv header mismatch");
    std::vector<BenchRecord> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        auto cells = split_csv(line);
        if (cells.size() != 12)
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 12 fields");
        BenchRecord r;
        r.kind = cells[0];
        if (r.kind != "instance" && r.kind != "set" && r.kind != "rate")
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": unknown kind");
        r.id = cells[1];
        r.k = field<int>(cells[2], line_no);
        r.e = field<int>(cells[3], line_no);
        r.c = field<int>(cells[4], line_no);
        r.seed = field<std::uint64_t>(cells[5], line_no);
        r.verdict = cells[6];
        r.wall_ms = field<double>(cells[7], line_no);
        r.nodes = field<std::uint64_t>(cells[8], line_no);
        r.matchings = field<std::uint64_t>(cells[9], line_no);
        r.prunes = field<std::uint64_t>(cells[10], line_no);
        r.success_rate = field<double>(cells[11], line_no);
        out.push_back(std::move(r));
    }
    return out;
}

std::map<int, double> success_rates(const std::vector<BenchRecord>& records)
{
    std::map<std::string, std::pair<int, bool>> sets;  // id -> (k, solved)
    for (const auto& r : records) {
        if (r.kind != "instance")
            continue;
        auto [it, fresh] = sets.try_emplace(set_id_of(r), r.k, true);
        if (r.verdict != "sat" && r.verdict != "unsat")
            it->second.second = false;
    }
    std::map<int, std::pair<int, int>> per_k;  // k -> (solved, total)
    for (const auto& [id, entry] : sets) {
        auto& [solved, total] = per_k[entry.first];
        solved += entry.second;
        ++total;
    }
    std::map<int, double> rates;
    for (const auto& [k, counts] : per_k)
        rates[k] = static_cast<double>(counts.first) / counts.second;
    return rates;
}

} // namespace wsp
