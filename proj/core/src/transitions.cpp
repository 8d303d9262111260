#include "orbitscope/transitions.hpp"

#include "orbitscope/error.hpp"

#include <algorithm>
#include <charconv>

namespace orbitscope {

TransitionCounts::TransitionCounts(std::string label, int variables)
  : _label(std::move(label)), _n(StateSpace(variables).variables())
{
}

void TransitionCounts::add(StateId from, StateId to, std::uint64_t count)
{
    const StateSpace space(_n);
    if (!space.contains(from) || !space.contains(to))
        throw ValidationError("transition " + std::to_string(from) + "->" +
                              std::to_string(to) + " outside S_" + std::to_string(_n));
    if (count == 0)
        return;
    _counts[{from, to}] += count;
    _total += count;
}

std::uint64_t TransitionCounts::count(StateId from, StateId to) const
{
    auto it = _counts.find({from, to});
    return it == _counts.end() ? 0 : it->second;
}

void TransitionCounts::merge(const TransitionCounts& other)
{
    if (other._n != _n)
        throw ValidationError("cannot merge transition counts over S_" +
                              std::to_string(other._n) + " into S_" + std::to_string(_n));
    for (const auto& [key, c] : other._counts)
        _counts[key] += c;
    _total += other._total;
    _subjects += other._subjects;
}

// ----------------------------------------------------------------------------

StateSubset::StateSubset(std::string name, int variables, std::set<StateId> ids)
  : _name(std::move(name)), _n(variables), _ids(std::move(ids))
{
    const StateSpace space(variables);
    _size = space.size();
    for (auto id : _ids)
        if (!space.contains(id))
            throw ValidationError("subset '" + _name + "' contains id " + std::to_string(id) +
                                  " outside S_" + std::to_string(variables));
}

StateSubset StateSubset::all(int variables)
{
    StateSubset s("all", variables, {});
    s._universal = true;
    return s;
}

StateSubset subset_l() { return StateSubset("L", 3, {23, 24}); }

StateSubset subset_h() { return StateSubset("H", 3, {23, 24, 29, 30, 31, 32}); }

StateSubset subset_h_leading() { return leading_subset(3, 1, 1, "H8"); }

StateSubset leading_subset(int variables, int variable, int value, std::string name)
{
    const StateSpace space(variables);
    if (variable < 0 || variable >= variables || (value != 0 && value != 1))
        throw ValidationError("leading subset needs a variable in [0, n) and a 0/1 value");
    const auto members = factorial(variables - 1) << (variables - 1);
    if (members > (std::uint64_t{1} << 20))
        throw ValidationError("leading subset of S_" + std::to_string(variables) +
                              " is too large to list");

    std::set<StateId> ids;
    const auto half = std::uint64_t{1} << (variables - 1);
    for (std::uint64_t rank = 0; rank < factorial(variables); ++rank)
    {
        if (perm_unrank(rank, variables)[0] != variable)
            continue;
        // Leading answer is the most significant bit.
        const auto base = (rank << variables) + (value == 1 ? half : 0) + 1;
        for (std::uint64_t v = 0; v < half; ++v)
            ids.insert(base + v);
    }
    return StateSubset(std::move(name), variables, std::move(ids));
}

StateSubset parse_subset(std::string_view text, int variables)
{
    auto require_three = [&](const char* name) {
        if (variables != 3)
            throw ValidationError(std::string("subset '") + name +
                                  "' is defined for n = 3 only");
    };
    if (text == "all")
        return StateSubset::all(variables);
    if (text == "L")
    {
        require_three("L");
        return subset_l();
    }
    if (text == "H")
    {
        require_three("H");
        return subset_h();
    }
    if (text == "H8")
    {
        require_three("H8");
        return subset_h_leading();
    }

    std::set<StateId> ids;
    std::size_t start = 0;
    while (start <= text.size())
    {
        auto end = text.find(',', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto field = text.substr(start, end - start);
        StateId id = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), id);
        if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
            throw ValidationError("subset '" + std::string(text) +
                                  "' is neither a known name nor an id list");
        ids.insert(id);
        start = end + 1;
    }
    return StateSubset(std::string(text), variables, std::move(ids));
}

// ----------------------------------------------------------------------------

TransitionCounts accumulate_transitions(std::span<const Orbit> orbits, std::string label,
                                        TransitionFilter filter)
{
    int n = 0;
    for (const auto& o : orbits)
    {
        if (o.states.empty())
            continue;
        if (n == 0)
            n = o.variables();
        else if (o.variables() != n)
            throw ValidationError("orbit '" + o.subject_id + "' has " +
                                  std::to_string(o.variables()) +
                                  " variables, population has " + std::to_string(n));
    }
    TransitionCounts counts(std::move(label), n == 0 ? 1 : n);
    for (const auto& o : orbits)
    {
        if (o.states.empty())
            continue;
        counts.add_subjects(1);
        for (std::size_t t = 1; t < o.states.size(); ++t)
        {
            if (!filter.include_imputed && t < o.imputed.size() && o.imputed[t])
                continue;
            counts.add(o.states[t - 1].id(), o.states[t].id());
        }
    }
    return counts;
}

RestrictedCounts restrict(const TransitionCounts& counts, const StateSubset& subset)
{
    RestrictedCounts out{TransitionCounts(counts.label(), counts.variables()), 0.0};
    out.counts.add_subjects(counts.subjects());
    for (const auto& [key, c] : counts.entries())
        if (subset.contains(key.from) && subset.contains(key.to))
            out.counts.add(key.from, key.to, c);
    if (counts.total() > 0)
        out.retained_share =
            static_cast<double>(out.counts.total()) / static_cast<double>(counts.total());
    return out;
}

OddsRatioResult odds_ratio(const TransitionCounts& first, const TransitionCounts& second,
                           StateId from, StateId to, const StateSubset& scope)
{
    if (first.variables() != second.variables())
        throw ValidationError("odds ratio needs both populations over the same state space");
    if (!scope.contains(from) || !scope.contains(to))
        throw ValidationError("transition " + std::to_string(from) + "->" +
                              std::to_string(to) + " is outside scope '" + scope.name() + "'");

    OddsRatioResult r;
    r.from = from;
    r.to = to;
    r.a = first.count(from, to);
    r.c = second.count(from, to);
    r.b = restrict(first, scope).counts.total() - r.a;
    r.d = restrict(second, scope).counts.total() - r.c;
    if (r.c > 0 && r.b > 0)
        r.value = (static_cast<double>(r.a) * static_cast<double>(r.d)) /
                  (static_cast<double>(r.c) * static_cast<double>(r.b));
    return r;
}

TransitionShares transition_shares(const TransitionCounts& first,
                                   const TransitionCounts& second, StateId from, StateId to)
{
    TransitionShares s;
    s.first = first.count(from, to);
    s.second = second.count(from, to);
    const auto total = s.first + s.second;
    if (total > 0)
    {
        s.first_percent = 100.0 * static_cast<double>(s.first) / static_cast<double>(total);
        s.second_percent = 100.0 * static_cast<double>(s.second) / static_cast<double>(total);
    }
    return s;
}

Occupancy occupancy_timeseries(std::span<const Orbit> orbits)
{
    Occupancy occ;
    for (const auto& o : orbits)
        occ.times.insert(occ.times.end(), o.times.begin(), o.times.end());
    std::sort(occ.times.begin(), occ.times.end());
    occ.times.erase(std::unique(occ.times.begin(), occ.times.end()), occ.times.end());
    occ.defined.assign(occ.times.size(), 0);

    for (const auto& o : orbits)
    {
        for (std::size_t t = 0; t < o.states.size() && t < o.times.size(); ++t)
        {
            const auto k = static_cast<std::size_t>(
                std::lower_bound(occ.times.begin(), occ.times.end(), o.times[t]) -
                occ.times.begin());
            auto& series = occ.counts[o.states[t].id()];
            if (series.empty())
                series.assign(occ.times.size(), 0);
            ++series[k];
            ++occ.defined[k];
        }
    }
    return occ;
}

State project_fixed_order(const State& state, const QuestionOrder& fixed)
{
    return encode_row(decode_state(state), fixed);
}

TransitionCounts project_counts(const TransitionCounts& counts, const QuestionOrder& fixed)
{
    if (fixed.size() != counts.variables())
        throw ValidationError("fixed order length does not match the state space");
    TransitionCounts out(counts.label(), counts.variables());
    out.add_subjects(counts.subjects());
    std::map<StateId, StateId> cache;
    auto project = [&](StateId id) {
        auto it = cache.find(id);
        if (it != cache.end())
            return it->second;
        const auto p = project_fixed_order(state_from_id(id, counts.variables()), fixed).id();
        cache.emplace(id, p);
        return p;
    };
    for (const auto& [key, c] : counts.entries())
        out.add(project(key.from), project(key.to), c);
    return out;
}

} // namespace orbitscope
