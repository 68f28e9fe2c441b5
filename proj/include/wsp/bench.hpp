#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "wsp/generator.hpp"
#include "wsp/solver.hpp"

namespace wsp {

/// One CSV row. kind is "instance" (one solver run), "set" (the instances
/// sharing k and seed; verdict "solved" only if none timed out) or "rate"
/// (fraction of solved sets for one k).
struct BenchRecord {
    std::string kind;
    std::string id;
    int k = 0;
    int e = 0;
    int c = 0;
    std::uint64_t seed = 0;
    std::string verdict;
    double wall_ms = 0;
    std::uint64_t nodes = 0;
    std::uint64_t matchings = 0;
    std::uint64_t prunes = 0;
    double success_rate = 0;

    bool operator==(const BenchRecord&) const = default;
};

struct BenchOptions {
    std::chrono::duration<double> time_limit = std::chrono::hours(1);
    HeuristicParams heuristic;
    int jobs = 1;
    /// Called after each instance finishes (from worker threads, serialised).
    std::function<void(const BenchRecord&)> progress;
};

/// Instance rows in suite order, then set rows, then one rate row per k.
/// Failures are recorded, never thrown.
std::vector<BenchRecord> run_bench(const SuiteSpec& spec, const BenchOptions& options);

inline constexpr const char* kBenchHeader =
    "kind,id,k,e,c,seed,verdict,wall_ms,nodes,matchings,prunes,success_rate";

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
/// Throws std::runtime_error on a bad header or row.
std::vector<BenchRecord> read_csv(std::istream& in);

/// Per-k fraction of solved sets, recomputed from instance rows alone.
std::map<int, double> success_rates(const std::vector<BenchRecord>& records);

} // namespace wsp
