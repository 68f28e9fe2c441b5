#include "wsp/authorisation.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsp {

AuthorisationLists::AuthorisationLists(int step_count, int user_count)
    : step_count_(step_count)
    , user_count_(user_count)
    , by_user_(user_count)
    , by_step_(step_count, UserSet(user_count))
{
    if (step_count < 0 || user_count < 0)
        throw std::invalid_argument("negative step or user count");
}

void AuthorisationLists::grant(User u, Step s)
{
    if (u < 0 || u >= user_count_ || s < 0 || s >= step_count_)
        throw std::out_of_range("authorisation index out of range");
    auto& steps = by_user_[u];
    auto it = std::lower_bound(steps.begin(), steps.end(), s);
    if (it != steps.end() && *it == s)
        return;
    steps.insert(it, s);
    by_step_[s].insert(u);
}

void AuthorisationLists::revoke(User u, Step s)
{
    if (u < 0 || u >= user_count_ || s < 0 || s >= step_count_)
        throw std::out_of_range("authorisation index out of range");
    auto& steps = by_user_[u];
    auto it = std::lower_bound(steps.begin(), steps.end(), s);
    if (it == steps.end() || *it != s)
        return;
    steps.erase(it);
    by_step_[s].erase(u);
}

bool AuthorisationLists::consistent() const
{
    for (User u = 0; u < user_count_; ++u)
        for (Step s = 0; s < step_count_; ++s) {
            bool listed = std::binary_search(by_user_[u].begin(), by_user_[u].end(), s);
            if (listed != by_step_[s].contains(u))
                return false;
        }
    return true;
}

} // namespace wsp
