#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "wsp/authorisation.hpp"

namespace wsp {

/// Partial map from steps to users. Unassigned steps hold kUnassigned.
class Plan {
public:
    static constexpr User kUnassigned = -1;

    Plan() = default;
    explicit Plan(int step_count) : users_(step_count, kUnassigned) {}
    explicit Plan(std::vector<User> users) : users_(std::move(users))
    {
        for (auto u : users_)
            if (u < kUnassigned)
                throw std::invalid_argument("plan holds a negative user index");
    }

    int step_count() const { return static_cast<int>(users_.size()); }

    void assign(Step s, User u) { users_.at(s) = u; }
    void unassign(Step s) { users_.at(s) = kUnassigned; }

    bool assigned(Step s) const { return users_[s] != kUnassigned; }
    User operator[](Step s) const { return users_[s]; }

    bool complete() const
    {
        return std::none_of(users_.begin(), users_.end(),
                            [](User u) { return u == kUnassigned; });
    }

    std::span<const User> users() const { return users_; }

    bool operator==(const Plan&) const = default;

private:
    std::vector<User> users_;
};

} // namespace wsp
