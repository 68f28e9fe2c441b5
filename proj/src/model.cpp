#include "wsp/model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace wsp {

WorkflowInstance::WorkflowInstance(AuthorisationLists auth, std::vector<Constraint> constraints)
    : auth_(std::move(auth))
{
    if (auth_.step_count() < 1 || auth_.user_count() < 1)
        throw std::invalid_argument("instance needs at least one step and one user");
    for (auto& c : constraints) {
        check_well_formed(c, auth_.step_count());
        if (std::find(constraints_.begin(), constraints_.end(), c) == constraints_.end())
            constraints_.push_back(std::move(c));
    }
}

bool WorkflowInstance::has_binding_of_duty() const
{
    return std::any_of(constraints_.begin(), constraints_.end(), [](const Constraint& c) {
        return std::holds_alternative<BindingOfDuty>(c);
    });
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

int to_int(std::string_view tok, int line)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
    return value;
}

} // namespace

WorkflowInstance parse_instance(std::string_view text)
{
    int k = -1;
    int n = -1;
    int line_no = 0;
    std::optional<AuthorisationLists> auth;
    std::vector<char> auth_seen;
    std::vector<Constraint> constraints;

    auto step_index = [&](std::string_view tok) {
        int s = to_int(tok, line_no);
        if (s < 0 || s >= k)
            throw ParseError(line_no, "step index " + std::to_string(s) + " out of range [0, " +
                                          std::to_string(k) + ")");
        return s;
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        auto tok = tokenize(line);
        if (tok.empty())
            continue;

        const std::string_view tag = tok[0];
        if (tag == "wsp") {
            if (auth)
                throw ParseError(line_no, "duplicate header");
            if (tok.size() != 3)
                throw ParseError(line_no, "header must be 'wsp <k> <n>'");
            k = to_int(tok[1], line_no);
            n = to_int(tok[2], line_no);
            if (k < 1 || n < 1)
                throw ParseError(line_no, "k and n must be positive");
            auth.emplace(k, n);
            auth_seen.assign(n, 0);
            continue;
        }
        if (!auth)
            throw ParseError(line_no, "expected header 'wsp <k> <n>' before '" + std::string(tag) + "'");

        try {
            if (tag == "auth") {
                if (tok.size() < 2)
                    throw ParseError(line_no, "auth line needs a user index");
                int u = to_int(tok[1], line_no);
                if (u < 0 || u >= n)
                    throw ParseError(line_no, "user index " + std::to_string(u) +
                                                  " out of range [0, " + std::to_string(n) + ")");
                if (auth_seen[u])
                    throw ParseError(line_no, "duplicate auth line for user " + std::to_string(u));
                auth_seen[u] = 1;
                for (std::size_t i = 2; i < tok.size(); ++i)
                    auth->grant(u, step_index(tok[i]));
            } else if (tag == "ne" || tag == "bd") {
                if (tok.size() != 3)
                    throw ParseError(line_no, std::string(tag) + " takes exactly two steps");
                Step s = step_index(tok[1]);
                Step t = step_index(tok[2]);
                constraints.push_back(tag == "ne" ? not_equals(s, t) : binding_of_duty(s, t));
            } else if (tag == "atmost" || tag == "atleast") {
                if (tok.size() < 4)
                    throw ParseError(line_no, std::string(tag) + " needs a bound and a scope");
                int r = to_int(tok[1], line_no);
                std::vector<Step> scope;
                for (std::size_t i = 2; i < tok.size(); ++i)
                    scope.push_back(step_index(tok[i]));
                constraints.push_back(tag == "atmost" ? at_most(r, std::move(scope))
                                                      : at_least(r, std::move(scope)));
            } else {
                throw ParseError(line_no, "unknown tag '" + std::string(tag) + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
    }

    if (!auth)
        throw ParseError(line_no, "missing header 'wsp <k> <n>'");
    for (int u = 0; u < n; ++u)
        if (!auth_seen[u])
            throw ParseError(line_no, "missing auth line for user " + std::to_string(u));
    return WorkflowInstance(std::move(*auth), std::move(constraints));
}

std::string serialize_instance(const WorkflowInstance& instance)
{
    std::ostringstream out;
    const auto& auth = instance.authorisations();
    out << "wsp " << instance.step_count() << ' ' << instance.user_count() << '\n';
    for (User u = 0; u < instance.user_count(); ++u) {
        out << "auth " << u;
        for (Step s : auth.steps_of(u))
            out << ' ' << s;
        out << '\n';
    }
    for (const auto& c : instance.constraints()) {
        if (std::holds_alternative<Custom>(c))
            throw std::invalid_argument("custom constraints have no file representation");
        out << to_string(c) << '\n';
    }
    return out.str();
}

WorkflowInstance load_instance(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void save_instance(const std::filesystem::path& path, const WorkflowInstance& instance)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << serialize_instance(instance);
}

PlanCheck validate_plan(const WorkflowInstance& instance, const Plan& plan)
{
    if (plan.step_count() != instance.step_count())
        throw std::invalid_argument("plan size does not match the instance");
    if (!plan.complete())
        throw std::invalid_argument("validate_plan needs a complete plan");
    const auto& auth = instance.authorisations();
    for (Step s = 0; s < plan.step_count(); ++s) {
        if (plan[s] >= instance.user_count())
            throw std::invalid_argument("plan names an unknown user");
        if (!auth.allows(plan[s], s))
            return {PlanCheck::Kind::NotAuthorised, s, -1};
    }
    auto cs = instance.constraints();
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (!satisfied_by(cs[i], plan))
            return {PlanCheck::Kind::Violates, -1, static_cast<int>(i)};
    return {};
}

namespace {

/// Evaluates an original-step predicate on a merged-step pattern by copying
/// each merged label back onto every member.
class MergedPredicate : public PatternPredicate {
public:
    MergedPredicate(std::shared_ptr<const PatternPredicate> inner, std::vector<Step> representative,
                    std::vector<Step> scope)
        : inner_(std::move(inner)), representative_(std::move(representative)), scope_(std::move(scope))
    {
    }

    std::span<const Step> scope() const override { return scope_; }
    bool satisfied(const Pattern& p) const override { return inner_->satisfied(lift(p)); }
    bool may_be_satisfied(const Pattern& p) const override
    {
        return inner_->may_be_satisfied(lift(p));
    }
    std::string name() const override { return inner_->name(); }

private:
    Pattern lift(const Pattern& p) const
    {
        std::vector<int> labels(representative_.size());
        for (std::size_t s = 0; s < labels.size(); ++s)
            labels[s] = p[representative_[s]];
        return Pattern::from_labels(std::move(labels));
    }

    std::shared_ptr<const PatternPredicate> inner_;
    std::vector<Step> representative_;
    std::vector<Step> scope_;
};

Step find_root(std::vector<Step>& parent, Step s)
{
    while (parent[s] != s) {
        parent[s] = parent[parent[s]];
        s = parent[s];
    }
    return s;
}

} // namespace

Preprocessed preprocess(const WorkflowInstance& instance)
{
    const int k = instance.step_count();
    const int n = instance.user_count();
    std::vector<Step> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& c : instance.constraints())
        if (auto* bd = std::get_if<BindingOfDuty>(&c)) {
            Step a = find_root(parent, bd->first);
            Step b = find_root(parent, bd->second);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }

    // Merged steps are numbered by their lowest original member.
    std::vector<Step> representative(k, -1);
    std::vector<std::vector<Step>> members;
    std::vector<Step> root_to_merged(k, -1);
    for (Step s = 0; s < k; ++s) {
        Step root = find_root(parent, s);
        if (root_to_merged[root] < 0) {
            root_to_merged[root] = static_cast<Step>(members.size());
            members.emplace_back();
        }
        representative[s] = root_to_merged[root];
        members[representative[s]].push_back(s);
    }
    const int merged_k = static_cast<int>(members.size());

    const auto& auth = instance.authorisations();
    AuthorisationLists merged_auth(merged_k, n);
    for (Step m = 0; m < merged_k; ++m) {
        UserSet users = auth.users_of(members[m].front());
        for (Step s : members[m])
            users &= auth.users_of(s);
        users.for_each([&](User u) { merged_auth.grant(u, m); });
    }

    bool contradictory = false;
    std::vector<Constraint> rewritten;
    auto map_scope = [&](const std::vector<Step>& scope) {
        std::vector<Step> out;
        for (Step s : scope)
            out.push_back(representative[s]);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    for (const auto& c : instance.constraints()) {
        if (std::holds_alternative<BindingOfDuty>(c))
            continue;
        if (auto* ne = std::get_if<NotEquals>(&c)) {
            Step a = representative[ne->first];
            Step b = representative[ne->second];
            if (a == b)
                contradictory = true;
            else
                rewritten.push_back(not_equals(a, b));
        } else if (auto* am = std::get_if<AtMost>(&c)) {
            auto scope = map_scope(am->scope);
            if (static_cast<int>(scope.size()) > am->bound)
                rewritten.push_back(at_most(am->bound, std::move(scope)));
        } else if (auto* al = std::get_if<AtLeast>(&c)) {
            auto scope = map_scope(al->scope);
            if (static_cast<int>(scope.size()) < al->bound)
                contradictory = true;
            else if (al->bound > 1)
                rewritten.push_back(at_least(al->bound, std::move(scope)));
        } else if (auto* cu = std::get_if<Custom>(&c)) {
            std::vector<Step> original(cu->predicate->scope().begin(), cu->predicate->scope().end());
            auto scope = map_scope(original);
            rewritten.push_back(
                Custom{std::make_shared<MergedPredicate>(cu->predicate, representative, std::move(scope))});
        }
    }

    return Preprocessed{WorkflowInstance(std::move(merged_auth), std::move(rewritten)),
                        std::move(representative), std::move(members), contradictory};
}

Plan Preprocessed::expand(const Plan& merged) const
{
    if (merged.step_count() != static_cast<int>(members.size()))
        throw std::invalid_argument("plan does not match the merged instance");
    Plan out(static_cast<int>(representative.size()));
    for (Step s = 0; s < out.step_count(); ++s)
        if (merged.assigned(representative[s]))
            out.assign(s, merged[representative[s]]);
    return out;
}

Plan Preprocessed::reduce(const Plan& original) const
{
    if (original.step_count() != static_cast<int>(representative.size()))
        throw std::invalid_argument("plan does not match the original instance");
    Plan out(static_cast<int>(members.size()));
    for (Step m = 0; m < out.step_count(); ++m)
        if (original.assigned(members[m].front()))
            out.assign(m, original[members[m].front()]);
    return out;
}

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Sat:
        return "sat";
    case Verdict::Unsat:
        return "unsat";
    case Verdict::Timeout:
        return "timeout";
    }
    return "unknown";
}

std::string format_solution(const SolveOutcome& outcome)
{
    std::ostringstream out;
    out << to_string(outcome.verdict) << '\n';
    if (outcome.verdict == Verdict::Sat) {
        if (!outcome.plan || !outcome.plan->complete())
            throw std::invalid_argument("sat outcome without a complete plan");
        for (Step s = 0; s < outcome.plan->step_count(); ++s)
            out << "assign " << s << ' ' << (*outcome.plan)[s] << '\n';
    }
    return out.str();
}

SolveOutcome parse_solution(std::string_view text, int step_count)
{
    SolveOutcome outcome;
    bool have_verdict = false;
    Plan plan(step_count);
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        auto tok = tokenize(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (tok.empty())
            continue;
        if (!have_verdict) {
            if (tok[0] == "sat")
                outcome.verdict = Verdict::Sat;
            else if (tok[0] == "unsat")
                outcome.verdict = Verdict::Unsat;
            else if (tok[0] == "timeout")
                outcome.verdict = Verdict::Timeout;
            else
                throw ParseError(line_no, "expected sat, unsat or timeout");
            have_verdict = true;
            continue;
        }
        if (outcome.verdict != Verdict::Sat || tok[0] != "assign" || tok.size() != 3)
            throw ParseError(line_no, "unexpected line in solution");
        Step s = to_int(tok[1], line_no);
        User u = to_int(tok[2], line_no);
        if (s < 0 || s >= step_count || u < 0)
            throw ParseError(line_no, "assignment out of range");
        if (plan.assigned(s))
            throw ParseError(line_no, "step assigned twice");
        plan.assign(s, u);
    }
    if (!have_verdict)
        throw ParseError(line_no, "empty solution");
    if (outcome.verdict == Verdict::Sat) {
        if (!plan.complete())
            throw ParseError(line_no, "sat solution does not assign every step");
        outcome.plan = std::move(plan);
    }
    return outcome;
}

} // namespace wsp
