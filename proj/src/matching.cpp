#include "wsp/matching.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wsp {

PatternGraph build_graph(const WorkflowInstance& instance, const Pattern& pattern)
{
    if (!pattern.complete())
        throw std::invalid_argument("matching graph needs a complete pattern");
    if (pattern.step_count() != instance.step_count())
        throw std::invalid_argument("pattern size does not match the instance");
    const auto& auth = instance.authorisations();
    PatternGraph g;
    g.user_count = instance.user_count();
    std::vector<std::vector<Step>> by_label(pattern.max_label() + 1);
    for (Step s = 0; s < pattern.step_count(); ++s)
        by_label[pattern[s]].push_back(s);
    for (int x = 1; x <= pattern.max_label(); ++x) {
        if (by_label[x].empty())
            continue;
        UserSet users = auth.users_of(by_label[x].front());
        for (Step s : by_label[x])
            users &= auth.users_of(s);
        g.labels.push_back(x);
        g.blocks.push_back(std::move(by_label[x]));
        g.adjacency.push_back(std::move(users));
    }
    return g;
}

void build_graph(const PatternTrail& trail, PatternGraph& g)
{
    if (!trail.complete() || !trail.tracks_users())
        throw std::invalid_argument("trail must be complete and track users");
    const Pattern& p = trail.pattern();
    const int blocks = p.max_label();
    g.labels.resize(blocks);
    g.blocks.resize(blocks);
    g.adjacency.resize(blocks);
    for (int x = 1; x <= blocks; ++x) {
        g.labels[x - 1] = x;
        g.blocks[x - 1].clear();
        g.adjacency[x - 1] = trail.block_users(x);
    }
    for (Step s = 0; s < p.step_count(); ++s)
        g.blocks[p[s] - 1].push_back(s);
    g.user_count = g.adjacency.empty() ? 0 : g.adjacency.front().capacity();
}

int Matching::size() const
{
    return static_cast<int>(std::count_if(user_of_label.begin(), user_of_label.end(),
                                          [](User u) { return u != kUnmatched; }));
}

bool Matcher::augment(const PatternGraph& g, int left)
{
    const UserSet& adj = g.adjacency[left];
    // Prefer a free user before searching deeper.
    bool found = adj.any_of([&](User u) {
        if (owner_[u] >= 0)
            return false;
        owner_[u] = left;
        match_[left] = u;
        return true;
    });
    if (found)
        return true;
    return adj.any_of([&](User u) {
        if (seen_[u] == stamp_)
            return false;
        seen_[u] = stamp_;
        if (!augment(g, owner_[u]))
            return false;
        owner_[u] = left;
        match_[left] = u;
        return true;
    });
}

std::optional<Matching> Matcher::find_full(const PatternGraph& g)
{
    const int m = g.left_size();
    if (static_cast<int>(owner_.size()) < g.user_count) {
        owner_.assign(g.user_count, -1);
        seen_.assign(g.user_count, 0);
        stamp_ = 0;
    }
    order_.resize(m);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
        return g.blocks[a].size() > g.blocks[b].size();
    });
    match_.assign(m, -1);

    bool full = true;
    for (int left : order_) {
        if (++stamp_ == 0) {
            std::fill(seen_.begin(), seen_.end(), 0);
            stamp_ = 1;
        }
        if (!augment(g, left)) {
            full = false;
            break;
        }
    }

    std::optional<Matching> result;
    if (full) {
        Matching mt;
        int top = m == 0 ? 0 : *std::max_element(g.labels.begin(), g.labels.end());
        mt.user_of_label.assign(top + 1, Matching::kUnmatched);
        for (int i = 0; i < m; ++i)
            mt.user_of_label[g.labels[i]] = match_[i];
        result = std::move(mt);
    }
    for (int i = 0; i < m; ++i)
        if (match_[i] >= 0)
            owner_[match_[i]] = -1;
    return result;
}

std::optional<Matching> find_full_matching(const PatternGraph& graph)
{
    Matcher m;
    return m.find_full(graph);
}

Plan matching_to_plan(const Pattern& pattern, const Matching& matching)
{
    if (!pattern.complete())
        throw std::invalid_argument("matching_to_plan needs a complete pattern");
    Plan plan(pattern.step_count());
    for (Step s = 0; s < pattern.step_count(); ++s) {
        int x = pattern[s];
        if (x >= static_cast<int>(matching.user_of_label.size()) ||
            matching.user_of_label[x] == Matching::kUnmatched)
            throw std::invalid_argument("block " + std::to_string(x) + " is not covered");
        plan.assign(s, matching.user_of_label[x]);
    }
    return plan;
}

} // namespace wsp
