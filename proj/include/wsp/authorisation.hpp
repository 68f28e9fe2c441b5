#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace wsp {

using Step = int;
using User = int;

/// Fixed-capacity bitset over user indices. All sets that interact share a
/// capacity, so binary operations assume equal word counts.
class UserSet {
public:
    UserSet() = default;
    explicit UserSet(int capacity)
        : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

    int capacity() const { return capacity_; }

    void insert(User u) { words_[u >> 6] |= std::uint64_t{1} << (u & 63); }
    void erase(User u) { words_[u >> 6] &= ~(std::uint64_t{1} << (u & 63)); }
    bool contains(User u) const { return (words_[u >> 6] >> (u & 63)) & 1u; }

    bool empty() const
    {
        for (auto w : words_)
            if (w)
                return false;
        return true;
    }

    int size() const
    {
        int n = 0;
        for (auto w : words_)
            n += std::popcount(w);
        return n;
    }

    /// *this = a & b, reusing storage.
    void assign_intersection(const UserSet& a, const UserSet& b)
    {
        capacity_ = a.capacity_;
        words_.resize(a.words_.size());
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] = a.words_[i] & b.words_[i];
    }

    UserSet& operator&=(const UserSet& other)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= other.words_[i];
        return *this;
    }

    template <typename F>
    void for_each(F&& f) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            auto w = words_[i];
            while (w) {
                int bit = std::countr_zero(w);
                f(static_cast<User>(i * 64 + bit));
                w &= w - 1;
            }
        }
    }

    /// Visits members in ascending order until `f` returns true.
    template <typename F>
    bool any_of(F&& f) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            auto w = words_[i];
            while (w) {
                int bit = std::countr_zero(w);
                if (f(static_cast<User>(i * 64 + bit)))
                    return true;
                w &= w - 1;
            }
        }
        return false;
    }

    std::vector<User> to_vector() const
    {
        std::vector<User> out;
        for_each([&](User u) { out.push_back(u); });
        return out;
    }

    bool operator==(const UserSet&) const = default;

private:
    int capacity_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Authorisation lists kept in both directions: A(u) as step lists and
/// A^-1(s) as user bitsets. Mutation goes through grant() so the views agree.
class AuthorisationLists {
public:
    AuthorisationLists() = default;
    AuthorisationLists(int step_count, int user_count);

    int step_count() const { return step_count_; }
    int user_count() const { return user_count_; }

    void grant(User u, Step s);
    void revoke(User u, Step s);
    bool allows(User u, Step s) const { return by_step_[s].contains(u); }

    /// A(u), sorted ascending.
    std::span<const Step> steps_of(User u) const { return by_user_[u]; }
    /// A^-1(s).
    const UserSet& users_of(Step s) const { return by_step_[s]; }

    /// Both views describe the same relation.
    bool consistent() const;

    bool operator==(const AuthorisationLists&) const = default;

private:
    int step_count_ = 0;
    int user_count_ = 0;
    std::vector<std::vector<Step>> by_user_;
    std::vector<UserSet> by_step_;
};

} // namespace wsp
