#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wsp/authorisation.hpp"
#include "wsp/plan.hpp"

namespace wsp {

/// Encoding of a plan's equivalence class: one label per step, 0 for
/// unassigned, equal nonzero labels for steps that share a user. Labels are
/// stored by step index; "canonical" is relative to a chosen step order.
class Pattern {
public:
    Pattern() = default;
    explicit Pattern(int step_count) : labels_(step_count, 0) {}

    /// Accepts any labels in [0, k]; no canonicality is required.
    static Pattern from_labels(std::vector<int> labels);

    int step_count() const { return static_cast<int>(labels_.size()); }
    int operator[](Step s) const { return labels_[s]; }
    std::span<const int> labels() const { return labels_; }

    bool assigned(Step s) const { return labels_[s] != 0; }
    bool complete() const;
    int assigned_count() const;

    int max_label() const { return max_label_; }
    /// k' = 1 + max label: the largest label an extension may use.
    int next_label() const { return max_label_ + 1; }

    /// Number of distinct nonzero labels.
    int block_count() const;
    /// P^-1(label), ascending.
    std::vector<Step> block(int label) const;
    /// Nonempty blocks ordered by label.
    std::vector<std::vector<Step>> blocks() const;

    bool operator==(const Pattern& other) const { return labels_ == other.labels_; }
    auto operator<=>(const Pattern& other) const { return labels_ <=> other.labels_; }

private:
    friend class PatternTrail;

    std::vector<int> labels_;
    int max_label_ = 0;
};

std::vector<Step> natural_order(int step_count);

/// Pattern of a (possibly partial) plan, labelling blocks by first
/// occurrence along `order`.
Pattern encode(const Plan& plan, std::span<const Step> order);
Pattern encode(const Plan& plan);

/// Copy of `pattern` with `step` set to `label`. Throws std::invalid_argument
/// if the step is already assigned or the label is outside 1..next_label().
Pattern extend(const Pattern& pattern, Step step, int label);

/// Relabels blocks by first occurrence along `order`.
Pattern canonicalize(const Pattern& pattern, std::span<const Step> order);
Pattern canonicalize(const Pattern& pattern);

/// Single mutable pattern with an undo stack, as used by depth-first search.
/// When constructed with authorisation lists, each block also carries the
/// intersection of A^-1 over its steps, maintained in O(n/64) per push.
class PatternTrail {
public:
    explicit PatternTrail(int step_count);
    explicit PatternTrail(const AuthorisationLists& auth);

    const Pattern& pattern() const { return pattern_; }
    int step_count() const { return pattern_.step_count(); }
    int depth() const { return static_cast<int>(undo_.size()); }
    bool complete() const { return depth() == step_count(); }
    int next_label() const { return pattern_.next_label(); }

    /// Steps in assignment order.
    std::span<const Step> order() const { return order_; }

    void push(Step step, int label);
    void pop();

    int block_size(int label) const { return block_size_[label]; }
    /// Users authorised for every step in the block. Requires the
    /// authorisation-aware constructor.
    const UserSet& block_users(int label) const { return storage_[block_slot_[label]]; }
    bool tracks_users() const { return auth_ != nullptr; }

private:
    struct Undo {
        Step step;
        int label;
        int previous_max;
        int previous_slot;
    };

    Pattern pattern_;
    const AuthorisationLists* auth_ = nullptr;
    std::vector<Undo> undo_;
    std::vector<Step> order_;
    std::vector<int> block_size_;
    std::vector<int> block_slot_;
    std::vector<UserSet> storage_;
};

struct EnumerationCount {
    std::uint64_t patterns = 0;
    std::uint64_t nodes = 0;
};

/// Visits every complete pattern over k steps once, extending the lowest
/// unassigned step with labels 1..k' in ascending order. `nodes` counts
/// every pattern touched, the empty root included.
EnumerationCount enumerate_complete(int step_count,
                                    const std::function<void(const Pattern&)>& visitor = {});

} // namespace wsp
