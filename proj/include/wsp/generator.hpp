#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wsp/model.hpp"

namespace wsp {

/// Seeded source for the generator: std::mt19937_64 (fully specified by the
/// C++ standard) with unbiased rejection sampling for bounded draws, so a
/// seed yields the same instance on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi].
    int between(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }
    /// Uniform random `size`-subset of [0, universe), ascending.
    std::vector<int> subset(int universe, int size);

private:
    std::mt19937_64 engine_;
};

struct GeneratorConfig {
    int steps = 0;        // k
    int not_equals = 0;   // e
    int counting = 0;     // c: number of at-most and of at-least constraints
    std::uint64_t seed = 0;
    /// n; 0 selects the standard 10k.
    int users = 0;
};

inline constexpr int kCountingBound = 3;
inline constexpr int kCountingScope = 5;

/// Throws std::invalid_argument unless k >= 1, 0 <= e <= k(k-1)/2,
/// c >= 0 with k >= 5 when c > 0, and n >= 1.
void check_config(const GeneratorConfig& config);

/// n users; each user draws |A(u)| uniformly from 1..ceil(k/2) and then a
/// uniform subset of that size. Then e distinct not-equals pairs, c
/// at-most-3 and c at-least-3 constraints over uniform 5-step scopes.
WorkflowInstance generate(const GeneratorConfig& config);

/// e = d/100 * k(k-1)/2, rounded half up.
int density_to_e(int steps, double density_percent);

/// Instance sets in the style "k=30 d=10 c=1.0k,1.2k,1.4k seeds=1-10".
/// Keys: k (list or range), d (percent), c (entries "<f>k" scale with k,
/// plain integers are absolute), seeds (list or range), optional n (users
/// per step; default 10).
struct SuiteSpec {
    std::vector<int> steps;
    double density = 10.0;
    std::vector<std::string> counting;
    std::vector<std::uint64_t> seeds;
    int users_per_step = 10;
};

SuiteSpec parse_suite(std::string_view text);

struct SuiteInstance {
    std::string id;      // "k30_s3_c36"
    std::string set_id;  // "k30_s3"
    GeneratorConfig config;
};

/// Every (k, seed) pair yields one instance per c entry, grouped by set.
std::vector<SuiteInstance> expand_suite(const SuiteSpec& spec);

} // namespace wsp
