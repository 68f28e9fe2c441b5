#pragma once

#include <optional>
#include <vector>

#include "wsp/model.hpp"
#include "wsp/pattern.hpp"

namespace wsp {

/// G = (X u U, E) for a complete pattern: one left vertex per block, joined
/// to every user authorised for all steps of the block.
struct PatternGraph {
    int user_count = 0;
    std::vector<int> labels;                // block label of each left vertex
    std::vector<std::vector<Step>> blocks;  // P^-1(label) of each left vertex
    std::vector<UserSet> adjacency;

    int left_size() const { return static_cast<int>(labels.size()); }
};

PatternGraph build_graph(const WorkflowInstance& instance, const Pattern& pattern);

/// Builds from the block intersections cached on the trail, reusing the
/// storage in `graph`. The trail must be complete and track users.
void build_graph(const PatternTrail& trail, PatternGraph& graph);

/// Block label -> user; kUnmatched where a label has no partner.
struct Matching {
    static constexpr User kUnmatched = -1;
    std::vector<User> user_of_label;

    int size() const;
};

/// Augmenting-path matcher that gives up at the first left vertex with no
/// augmenting path: at that point no matching can cover X. Left vertices
/// are processed largest block first. Scratch space is kept between calls.
class Matcher {
public:
    /// A matching covering every left vertex, or nullopt if none exists.
    std::optional<Matching> find_full(const PatternGraph& graph);

private:
    bool augment(const PatternGraph& graph, int left);

    std::vector<int> order_;
    std::vector<User> match_;   // left vertex -> user
    std::vector<int> owner_;    // user -> left vertex
    std::vector<unsigned> seen_;
    unsigned stamp_ = 0;
};

std::optional<Matching> find_full_matching(const PatternGraph& graph);

/// pi(s) = user matched to the block of s. Throws std::invalid_argument if
/// some block of the complete `pattern` is uncovered.
Plan matching_to_plan(const Pattern& pattern, const Matching& matching);

} // namespace wsp
