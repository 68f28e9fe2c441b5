#include "wsp/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsp {

SearchState::SearchState(const WorkflowInstance& instance, HeuristicParams params)
    : instance_(&instance)
    , params_(params)
    , trail_(instance.authorisations())
    , counter_of_(instance.constraints().size(), -1)
    , touching_(instance.step_count())
    , not_equals_count_(instance.step_count(), 0)
    , tightness_(instance.step_count(), {0, 0, 0})
{
    const int k = instance.step_count();
    auto cs = instance.constraints();
    for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
        for (Step s : scope_of(cs[i]))
            touching_[s].push_back(i);
        if (auto* ne = std::get_if<NotEquals>(&cs[i])) {
            ++not_equals_count_[ne->first];
            ++not_equals_count_[ne->second];
            continue;
        }
        const std::vector<Step>* scope = nullptr;
        Counter counter;
        counter.constraint = i;
        if (auto* am = std::get_if<AtMost>(&cs[i])) {
            counter.at_most = true;
            counter.bound = am->bound;
            scope = &am->scope;
        } else if (auto* al = std::get_if<AtLeast>(&cs[i])) {
            counter.bound = al->bound;
            scope = &al->scope;
        } else {
            continue;
        }
        counter.unassigned = static_cast<int>(scope->size());
        counter.label_count.assign(k + 2, 0);
        counter_of_[i] = static_cast<int>(counters_.size());
        counters_.push_back(std::move(counter));
        shift_buckets(counters_.back(), -1, 0);
    }
}

// Moves every scope step of an at-most counter from bucket r - old to
// bucket r - new. old_distinct = -1 only registers the new bucket.
void SearchState::shift_buckets(const Counter& counter, int old_distinct, int new_distinct)
{
    if (!counter.at_most)
        return;
    const int from = old_distinct < 0 ? -1 : counter.bound - old_distinct;
    const int to = counter.bound - new_distinct;
    const auto& scope = std::get<AtMost>(instance_->constraints()[counter.constraint]).scope;
    for (Step s : scope) {
        if (from >= 0 && from <= 2)
            --tightness_[s][from];
        if (to >= 0 && to <= 2)
            ++tightness_[s][to];
    }
}

void SearchState::push(Step step, int label)
{
    trail_.push(step, label);
    for (int c : touching_[step]) {
        int idx = counter_of_[c];
        if (idx < 0)
            continue;
        Counter& counter = counters_[idx];
        --counter.unassigned;
        if (counter.label_count[label]++ == 0) {
            ++counter.distinct;
            shift_buckets(counter, counter.distinct - 1, counter.distinct);
        }
    }
}

void SearchState::pop()
{
    Step step = trail_.order().back();
    int label = trail_.pattern()[step];
    trail_.pop();
    for (int c : touching_[step]) {
        int idx = counter_of_[c];
        if (idx < 0)
            continue;
        Counter& counter = counters_[idx];
        ++counter.unassigned;
        if (--counter.label_count[label] == 0) {
            --counter.distinct;
            shift_buckets(counter, counter.distinct + 1, counter.distinct);
        }
    }
}

double SearchState::rho(Step step) const
{
    const auto& t = tightness_[step];
    return not_equals_count_[step] + params_.alpha * t[0] + params_.beta * t[1] +
           params_.gamma * t[2];
}

double SearchState::rho_from_scratch(Step step) const
{
    const Pattern& p = pattern();
    double score = 0;
    for (const auto& c : instance_->constraints()) {
        if (auto* ne = std::get_if<NotEquals>(&c)) {
            if (ne->first == step || ne->second == step)
                score += 1;
        } else if (auto* am = std::get_if<AtMost>(&c)) {
            bool involved = false;
            std::vector<int> labels;
            for (Step s : am->scope) {
                involved |= s == step;
                if (p[s] != 0 && std::find(labels.begin(), labels.end(), p[s]) == labels.end())
                    labels.push_back(p[s]);
            }
            if (!involved)
                continue;
            int slack = am->bound - static_cast<int>(labels.size());
            if (slack == 0)
                score += params_.alpha;
            else if (slack == 1)
                score += params_.beta;
            else if (slack == 2)
                score += params_.gamma;
        }
    }
    return score;
}

Step SearchState::select_step() const
{
    Step best = -1;
    double best_score = 0;
    for (Step s = 0; s < trail_.step_count(); ++s) {
        if (pattern().assigned(s))
            continue;
        double score = rho(s);
        if (best < 0 || score > best_score) {
            best = s;
            best_score = score;
        }
    }
    if (best < 0)
        throw std::logic_error("select_step on a complete pattern");
    return best;
}

bool SearchState::block_authorised(Step step) const
{
    return !trail_.block_users(pattern()[step]).empty();
}

bool SearchState::eligible_at(Step step) const
{
    const Pattern& p = pattern();
    auto cs = instance_->constraints();
    for (int c : touching_[step]) {
        if (int idx = counter_of_[c]; idx >= 0) {
            const Counter& counter = counters_[idx];
            if (counting_status(counter.at_most, counter.bound, counter.distinct, counter.unassigned) ==
                PartialStatus::Dead)
                return false;
        } else if (auto* ne = std::get_if<NotEquals>(&cs[c])) {
            if (p[ne->first] != 0 && p[ne->first] == p[ne->second])
                return false;
        } else if (check_partial(cs[c], p) == PartialStatus::Dead) {
            return false;
        }
    }
    return true;
}

bool SearchState::eligible_complete() const
{
    for (const auto& c : instance_->constraints())
        if (!check_complete(c, pattern()))
            return false;
    return true;
}

namespace {

using Clock = std::chrono::steady_clock;

class Search {
public:
    Search(const WorkflowInstance& instance, const SolverOptions& options, bool enumerate)
        : state_(instance, options.heuristic), options_(options), enumerate_(enumerate)
    {
        if (options.time_limit)
            deadline_ = Clock::now() +
                        std::chrono::duration_cast<Clock::duration>(*options.time_limit);
    }

    /// True when the search should stop (success in solve mode, or timeout).
    bool run() { return recurse(); }

    SolveStats stats;
    bool timed_out = false;
    std::optional<Plan> plan;
    std::vector<Pattern> patterns;
    std::vector<Plan> witnesses;

private:
    bool recurse()
    {
        ++stats.nodes;
        if (deadline_ && stats.nodes % kDeadlineStride == 1 && Clock::now() >= *deadline_) {
            timed_out = true;
            return true;
        }
        const PatternTrail& trail = state_.trail();
        if (trail.complete())
            return leaf();

        const Step step = state_.select_step();
        const int top = trail.next_label();
        for (int x = 1; x <= top; ++x) {
            state_.push(step, x);
            bool stop = false;
            if (options_.authorisation_prune && !state_.block_authorised(step)) {
                ++stats.authorisation_prunes;
            } else if (options_.eligibility_gate && !state_.eligible_at(step)) {
                ++stats.eligibility_prunes;
            } else {
                stop = recurse();
            }
            state_.pop();
            if (stop)
                return true;
        }
        return false;
    }

    bool leaf()
    {
        if (!options_.eligibility_gate && !state_.eligible_complete()) {
            ++stats.eligibility_prunes;
            return false;
        }
        build_graph(state_.trail(), graph_);
        ++stats.matchings_attempted;
        auto matching = matcher_.find_full(graph_);
        if (!matching)
            return false;
        ++stats.matchings_full;
        Plan found = matching_to_plan(state_.pattern(), *matching);
        if (!enumerate_) {
            plan = std::move(found);
            return true;
        }
        patterns.push_back(canonicalize(state_.pattern()));
        witnesses.push_back(std::move(found));
        return false;
    }

    SearchState state_;
    const SolverOptions& options_;
    bool enumerate_;
    std::optional<Clock::time_point> deadline_;
    PatternGraph graph_;
    Matcher matcher_;
};

bool some_step_unauthorised(const WorkflowInstance& instance)
{
    for (Step s = 0; s < instance.step_count(); ++s)
        if (instance.authorisations().users_of(s).empty())
            return true;
    return false;
}

void require_preprocessed(const WorkflowInstance& instance)
{
    if (instance.has_binding_of_duty())
        throw std::invalid_argument("binding-of-duty constraints must be preprocessed away");
}

} // namespace

SolveOutcome solve(const WorkflowInstance& instance, const SolverOptions& options)
{
    require_preprocessed(instance);
    const auto start = Clock::now();
    SolveOutcome outcome;
    if (!some_step_unauthorised(instance)) {
        Search search(instance, options, false);
        search.run();
        outcome.stats = search.stats;
        if (search.timed_out) {
            outcome.verdict = Verdict::Timeout;
        } else if (search.plan) {
            outcome.verdict = Verdict::Sat;
            outcome.plan = std::move(search.plan);
        }
    }
    outcome.stats.wall_time = Clock::now() - start;
    return outcome;
}

SolveOutcome solve_workflow(const WorkflowInstance& instance, const SolverOptions& options)
{
    const auto start = Clock::now();
    Preprocessed pre = preprocess(instance);
    SolveOutcome outcome;
    if (!pre.contradictory) {
        outcome = solve(pre.instance, options);
        if (outcome.plan)
            outcome.plan = pre.expand(*outcome.plan);
    }
    outcome.stats.wall_time = Clock::now() - start;
    return outcome;
}

Enumeration solve_enumerating(const WorkflowInstance& instance, const SolverOptions& options)
{
    require_preprocessed(instance);
    const auto start = Clock::now();
    Enumeration result;
    if (!some_step_unauthorised(instance)) {
        Search search(instance, options, true);
        search.run();
        result.stats = search.stats;
        result.timed_out = search.timed_out;
        result.patterns = std::move(search.patterns);
        result.witnesses = std::move(search.witnesses);
    }
    result.stats.wall_time = Clock::now() - start;
    return result;
}

Enumeration enumerate_workflow(const WorkflowInstance& instance, const SolverOptions& options)
{
    const auto start = Clock::now();
    Preprocessed pre = preprocess(instance);
    Enumeration result;
    if (!pre.contradictory) {
        result = solve_enumerating(pre.instance, options);
        for (std::size_t i = 0; i < result.witnesses.size(); ++i) {
            result.witnesses[i] = pre.expand(result.witnesses[i]);
            result.patterns[i] = encode(result.witnesses[i]);
        }
    }
    result.stats.wall_time = Clock::now() - start;
    return result;
}

} // namespace wsp
