#include "wsp/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wsp {

Pattern Pattern::from_labels(std::vector<int> labels)
{
    const int k = static_cast<int>(labels.size());
    Pattern p;
    for (int x : labels) {
        if (x < 0 || x > k)
            throw std::invalid_argument("pattern label " + std::to_string(x) +
                                        " outside [0, " + std::to_string(k) + "]");
        p.max_label_ = std::max(p.max_label_, x);
    }
    p.labels_ = std::move(labels);
    return p;
}

bool Pattern::complete() const
{
    return std::none_of(labels_.begin(), labels_.end(), [](int x) { return x == 0; });
}

int Pattern::assigned_count() const
{
    return static_cast<int>(
        std::count_if(labels_.begin(), labels_.end(), [](int x) { return x != 0; }));
}

int Pattern::block_count() const
{
    std::vector<char> seen(labels_.size() + 1, 0);
    int n = 0;
    for (int x : labels_)
        if (x != 0 && !seen[x]) {
            seen[x] = 1;
            ++n;
        }
    return n;
}

std::vector<Step> Pattern::block(int label) const
{
    std::vector<Step> out;
    if (label == 0)
        return out;
    for (Step s = 0; s < step_count(); ++s)
        if (labels_[s] == label)
            out.push_back(s);
    return out;
}

std::vector<std::vector<Step>> Pattern::blocks() const
{
    std::vector<std::vector<Step>> by_label(max_label_ + 1);
    for (Step s = 0; s < step_count(); ++s)
        if (labels_[s] != 0)
            by_label[labels_[s]].push_back(s);
    std::vector<std::vector<Step>> out;
    for (auto& b : by_label)
        if (!b.empty())
            out.push_back(std::move(b));
    return out;
}

std::vector<Step> natural_order(int step_count)
{
    std::vector<Step> order(step_count);
    std::iota(order.begin(), order.end(), 0);
    return order;
}

namespace {

void check_order(std::span<const Step> order, int k)
{
    if (static_cast<int>(order.size()) != k)
        throw std::invalid_argument("step order has wrong length");
    std::vector<char> seen(k, 0);
    for (Step s : order) {
        if (s < 0 || s >= k || seen[s])
            throw std::invalid_argument("step order is not a permutation");
        seen[s] = 1;
    }
}

} // namespace

Pattern encode(const Plan& plan, std::span<const Step> order)
{
    const int k = plan.step_count();
    check_order(order, k);
    std::vector<int> labels(k, 0);
    // Users seen so far, in order of first occurrence; label = position + 1.
    std::vector<User> seen;
    for (Step s : order) {
        if (!plan.assigned(s))
            continue;
        auto it = std::find(seen.begin(), seen.end(), plan[s]);
        if (it == seen.end()) {
            seen.push_back(plan[s]);
            labels[s] = static_cast<int>(seen.size());
        } else {
            labels[s] = static_cast<int>(it - seen.begin()) + 1;
        }
    }
    return Pattern::from_labels(std::move(labels));
}

Pattern encode(const Plan& plan)
{
    return encode(plan, natural_order(plan.step_count()));
}

Pattern extend(const Pattern& pattern, Step step, int label)
{
    if (step < 0 || step >= pattern.step_count())
        throw std::invalid_argument("step out of range");
    if (pattern.assigned(step))
        throw std::invalid_argument("step " + std::to_string(step) + " already assigned");
    if (label < 1 || label > pattern.next_label())
        throw std::invalid_argument("label " + std::to_string(label) + " outside 1.." +
                                    std::to_string(pattern.next_label()));
    std::vector<int> labels(pattern.labels().begin(), pattern.labels().end());
    labels[step] = label;
    return Pattern::from_labels(std::move(labels));
}

Pattern canonicalize(const Pattern& pattern, std::span<const Step> order)
{
    const int k = pattern.step_count();
    check_order(order, k);
    std::vector<int> relabel(k + 1, 0);
    std::vector<int> labels(k, 0);
    int next = 0;
    for (Step s : order) {
        int x = pattern[s];
        if (x == 0)
            continue;
        if (relabel[x] == 0)
            relabel[x] = ++next;
        labels[s] = relabel[x];
    }
    return Pattern::from_labels(std::move(labels));
}

Pattern canonicalize(const Pattern& pattern)
{
    return canonicalize(pattern, natural_order(pattern.step_count()));
}

PatternTrail::PatternTrail(int step_count)
    : pattern_(step_count)
    , block_size_(step_count + 2, 0)
    , block_slot_(step_count + 2, -1)
{
    undo_.reserve(step_count);
    order_.reserve(step_count);
}

PatternTrail::PatternTrail(const AuthorisationLists& auth)
    : PatternTrail(auth.step_count())
{
    auth_ = &auth;
    storage_.assign(auth.step_count(), UserSet(auth.user_count()));
}

void PatternTrail::push(Step step, int label)
{
    if (step < 0 || step >= step_count() || pattern_.labels_[step] != 0)
        throw std::invalid_argument("push on an assigned or invalid step");
    if (label < 1 || label > pattern_.next_label())
        throw std::invalid_argument("label outside 1..k'");

    const int slot = depth();
    undo_.push_back({step, label, pattern_.max_label_, block_slot_[label]});
    order_.push_back(step);
    pattern_.labels_[step] = label;
    pattern_.max_label_ = std::max(pattern_.max_label_, label);
    if (auth_) {
        const UserSet& base =
            block_size_[label] == 0 ? auth_->users_of(step) : storage_[block_slot_[label]];
        storage_[slot].assign_intersection(base, auth_->users_of(step));
        block_slot_[label] = slot;
    }
    ++block_size_[label];
}

void PatternTrail::pop()
{
    if (undo_.empty())
        throw std::logic_error("pop on empty pattern trail");
    const Undo u = undo_.back();
    undo_.pop_back();
    order_.pop_back();
    pattern_.labels_[u.step] = 0;
    pattern_.max_label_ = u.previous_max;
    --block_size_[u.label];
    block_slot_[u.label] = u.previous_slot;
}

namespace {

void enumerate_from(PatternTrail& trail, EnumerationCount& count,
                    const std::function<void(const Pattern&)>& visitor)
{
    ++count.nodes;
    if (trail.complete()) {
        ++count.patterns;
        if (visitor)
            visitor(trail.pattern());
        return;
    }
    Step step = 0;
    while (trail.pattern().assigned(step))
        ++step;
    const int top = trail.next_label();
    for (int x = 1; x <= top; ++x) {
        trail.push(step, x);
        enumerate_from(trail, count, visitor);
        trail.pop();
    }
}

} // namespace

EnumerationCount enumerate_complete(int step_count,
                                    const std::function<void(const Pattern&)>& visitor)
{
    if (step_count < 1)
        throw std::invalid_argument("enumerate_complete needs k >= 1");
    PatternTrail trail(step_count);
    EnumerationCount count;
    enumerate_from(trail, count, visitor);
    return count;
}

} // namespace wsp
