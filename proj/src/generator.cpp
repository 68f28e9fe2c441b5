#include "wsp/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace wsp {

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("Rng::below(0)");
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

std::vector<int> Rng::subset(int universe, int size)
{
    if (size < 0 || size > universe)
        throw std::invalid_argument("subset size out of range");
    std::vector<int> pool(universe);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < size; ++i)
        std::swap(pool[i], pool[i + below(universe - i)]);
    pool.resize(size);
    std::sort(pool.begin(), pool.end());
    return pool;
}

void check_config(const GeneratorConfig& config)
{
    const int k = config.steps;
    if (k < 1)
        throw std::invalid_argument("generator needs k >= 1");
    const long pairs = static_cast<long>(k) * (k - 1) / 2;
    if (config.not_equals < 0 || config.not_equals > pairs)
        throw std::invalid_argument("e = " + std::to_string(config.not_equals) + " outside 0.." +
                                    std::to_string(pairs));
    if (config.counting < 0)
        throw std::invalid_argument("c must be non-negative");
    if (config.counting > 0 && k < kCountingScope)
        throw std::invalid_argument("counting constraints need k >= 5");
    if (config.users < 0)
        throw std::invalid_argument("user count must be positive");
}

WorkflowInstance generate(const GeneratorConfig& config)
{
    check_config(config);
    const int k = config.steps;
    const int n = config.users > 0 ? config.users : 10 * k;
    Rng rng(config.seed);

    AuthorisationLists auth(k, n);
    const int max_list = (k + 1) / 2;
    for (User u = 0; u < n; ++u) {
        int size = rng.between(1, max_list);
        for (Step s : rng.subset(k, size))
            auth.grant(u, s);
    }

    std::vector<Constraint> constraints;
    // e distinct pairs: a uniform e-subset of the k(k-1)/2 unordered pairs.
    const int pairs = k * (k - 1) / 2;
    std::vector<std::pair<Step, Step>> all_pairs;
    all_pairs.reserve(pairs);
    for (Step s = 0; s < k; ++s)
        for (Step t = s + 1; t < k; ++t)
            all_pairs.emplace_back(s, t);
    for (int i : rng.subset(pairs, config.not_equals))
        constraints.push_back(not_equals(all_pairs[i].first, all_pairs[i].second));
    for (int i = 0; i < config.counting; ++i)
        constraints.push_back(at_most(kCountingBound, rng.subset(k, kCountingScope)));
    for (int i = 0; i < config.counting; ++i)
        constraints.push_back(at_least(kCountingBound, rng.subset(k, kCountingScope)));

    return WorkflowInstance(std::move(auth), std::move(constraints));
}

int density_to_e(int steps, double density_percent)
{
    if (density_percent < 0 || density_percent > 100)
        throw std::invalid_argument("density must lie in [0, 100]");
    const double pairs = static_cast<double>(steps) * (steps - 1) / 2.0;
    return static_cast<int>(std::floor(density_percent * pairs / 100.0 + 0.5));
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        auto part = trim(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos));
        if (!part.empty())
            out.push_back(part);
        if (next == std::string_view::npos)
            break;
        pos = next + 1;
    }
    return out;
}

template <typename Int>
Int parse_int(std::string_view s)
{
    Int v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer '" + std::string(s) + "' in suite");
    return v;
}

double parse_double(std::string_view s)
{
    std::string str(s);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(str, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != str.size() || str.empty())
        throw std::invalid_argument("bad number '" + str + "' in suite");
    return v;
}

/// "1-10" or "1,4,7" or a mix such as "1-3,8".
template <typename Int>
std::vector<Int> parse_range_list(std::string_view s)
{
    std::vector<Int> out;
    for (auto part : split(s, ',')) {
        auto dash = part.find('-', 1);
        if (dash == std::string_view::npos) {
            out.push_back(parse_int<Int>(part));
            continue;
        }
        Int lo = parse_int<Int>(part.substr(0, dash));
        Int hi = parse_int<Int>(part.substr(dash + 1));
        if (hi < lo)
            throw std::invalid_argument("empty range '" + std::string(part) + "' in suite");
        for (Int v = lo; v <= hi; ++v)
            out.push_back(v);
    }
    return out;
}

int counting_for(std::string_view entry, int k)
{
    if (!entry.empty() && entry.back() == 'k') {
        double factor = parse_double(entry.substr(0, entry.size() - 1));
        if (factor < 0)
            throw std::invalid_argument("negative c factor in suite");
        return static_cast<int>(std::floor(factor * k + 0.5));
    }
    return parse_int<int>(entry);
}

} // namespace

SuiteSpec parse_suite(std::string_view text)
{
    SuiteSpec spec;
    bool have_k = false;
    bool have_seeds = false;
    bool have_c = false;
    std::vector<std::string_view> fields;
    for (auto chunk : split(text, ' '))
        for (auto f : split(chunk, '\t'))
            fields.push_back(f);
    for (auto field : fields) {
        auto eq = field.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("suite field '" + std::string(field) + "' lacks '='");
        auto key = field.substr(0, eq);
        auto value = field.substr(eq + 1);
        if (key == "k") {
            spec.steps = parse_range_list<int>(value);
            have_k = true;
        } else if (key == "d") {
            if (!value.empty() && value.back() == '%')
                value.remove_suffix(1);
            spec.density = parse_double(value);
        } else if (key == "c") {
            spec.counting.clear();
            for (auto part : split(value, ','))
                spec.counting.emplace_back(part);
            have_c = true;
        } else if (key == "seeds") {
            spec.seeds = parse_range_list<std::uint64_t>(value);
            have_seeds = true;
        } else if (key == "n") {
            spec.users_per_step = parse_int<int>(value);
        } else {
            throw std::invalid_argument("unknown suite key '" + std::string(key) + "'");
        }
    }
    if (!have_k || !have_seeds)
        throw std::invalid_argument("suite needs k=... and seeds=...");
    if (!have_c)
        spec.counting = {"1.0k", "1.2k", "1.4k"};
    if (spec.density < 0 || spec.density > 100)
        throw std::invalid_argument("suite density outside [0, 100]");
    if (spec.users_per_step < 1)
        throw std::invalid_argument("suite n must be positive");
    for (const auto& entry : spec.counting)
        counting_for(entry, 1);
    return spec;
}

std::vector<SuiteInstance> expand_suite(const SuiteSpec& spec)
{
    std::vector<SuiteInstance> out;
    for (int k : spec.steps)
        for (auto seed : spec.seeds) {
            const std::string set_id = "k" + std::to_string(k) + "_s" + std::to_string(seed);
            for (const auto& entry : spec.counting) {
                GeneratorConfig config;
                config.steps = k;
                config.not_equals = density_to_e(k, spec.density);
                config.counting = counting_for(entry, k);
                config.seed = seed;
                config.users = spec.users_per_step * k;
                check_config(config);
                out.push_back({set_id + "_c" + std::to_string(config.counting), set_id, config});
            }
        }
    return out;
}

} // namespace wsp
