// transitions.hpp -- transition densities over orbit populations, subsets of
// the state space, odds ratios and state occupancy.

#pragma once

#include "orbitscope/orbit.hpp"
#include "orbitscope/state_space.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orbitscope {

struct Transition
{
    StateId from = 0;
    StateId to = 0;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Sparse accumulated densities d_ij of a labelled sub-population.
class TransitionCounts
{
public:
    TransitionCounts() = default;
    TransitionCounts(std::string label, int variables);

    const std::string& label() const noexcept { return _label; }
    int variables() const noexcept { return _n; }

    /// Number of orbits that contributed.
    std::uint64_t subjects() const noexcept { return _subjects; }
    void add_subjects(std::uint64_t k) noexcept { _subjects += k; }

    /// Throws ValidationError if either id is outside S_n.
    void add(StateId from, StateId to, std::uint64_t count = 1);

    std::uint64_t count(StateId from, StateId to) const;
    std::uint64_t total() const noexcept { return _total; }
    bool empty() const noexcept { return _counts.empty(); }
    const std::map<Transition, std::uint64_t>& entries() const noexcept { return _counts; }

    /// Entrywise sum. Throws ValidationError on differing n.
    void merge(const TransitionCounts& other);

private:
    std::string _label;
    int _n = 0;
    std::uint64_t _subjects = 0;
    std::uint64_t _total = 0;
    std::map<Transition, std::uint64_t> _counts;
};

/// A named set of states. The universal subset holds every state of S_n
/// without materialising it.
class StateSubset
{
public:
    StateSubset() = default;

    /// Throws ValidationError if an id lies outside S_n.
    StateSubset(std::string name, int variables, std::set<StateId> ids);

    static StateSubset all(int variables);

    const std::string& name() const noexcept { return _name; }
    int variables() const noexcept { return _n; }
    bool is_universal() const noexcept { return _universal; }

    /// Empty for the universal subset.
    const std::set<StateId>& ids() const noexcept { return _ids; }

    bool contains(StateId id) const noexcept
    {
        return _universal ? (id >= 1 && id <= _size) : _ids.count(id) > 0;
    }

private:
    std::string _name;
    int _n = 0;
    bool _universal = false;
    std::uint64_t _size = 0;
    std::set<StateId> _ids;
};

/// {23, 24}: adult head, no adult death, mother absent or present.
StateSubset subset_l();

/// {23, 24, 29, 30, 31, 32} as listed for the household panel.
StateSubset subset_h();

/// {(x, y) : x = 1**, y = 1**}, which also contains 21 and 22.
StateSubset subset_h_leading();

/// All states whose order starts with `variable` and whose leading answer is
/// `value`. Throws ValidationError when that would exceed 2^20 states.
StateSubset leading_subset(int variables, int variable, int value, std::string name);

/// Resolves "L", "H", "H8", "all" or a comma-separated id list.
StateSubset parse_subset(std::string_view text, int variables);

// ----------------------------------------------------------------------------

/// Which steps of an orbit count as transitions.
struct TransitionFilter
{
    bool include_imputed = true;
};

/// Counts every consecutive state pair, self-transitions included. Throws
/// ValidationError if orbits have different n.
TransitionCounts accumulate_transitions(std::span<const Orbit> orbits, std::string label,
                                        TransitionFilter filter = {});

struct RestrictedCounts
{
    TransitionCounts counts;
    double retained_share = 0.0; ///< kept / total, 0 when total is 0
};

/// Keeps transitions with both endpoints in `subset`.
RestrictedCounts restrict(const TransitionCounts& counts, const StateSubset& subset);

/// 2x2 table of one transition against all others within a scope.
struct OddsRatioResult
{
    StateId from = 0;
    StateId to = 0;
    std::uint64_t a = 0; ///< (from, to) in the first population
    std::uint64_t b = 0; ///< every other in-scope transition, first population
    std::uint64_t c = 0; ///< (from, to) in the second population
    std::uint64_t d = 0; ///< every other in-scope transition, second population
    std::optional<double> value; ///< ad / cb; empty when cb == 0
};

/// OR = ad / cb, where b and d sum all in-scope pairs other than (from, to).
/// Throws ValidationError if from or to is outside `scope` or n differs.
OddsRatioResult odds_ratio(const TransitionCounts& first, const TransitionCounts& second,
                           StateId from, StateId to, const StateSubset& scope);

struct TransitionShares
{
    std::uint64_t first = 0;
    std::uint64_t second = 0;
    std::optional<double> first_percent;  ///< 100 a / (a + c)
    std::optional<double> second_percent; ///< 100 c / (a + c)
};

TransitionShares transition_shares(const TransitionCounts& first,
                                   const TransitionCounts& second, StateId from,
                                   StateId to);

/// counts[id][k] = number of orbits in state id at times[k].
struct Occupancy
{
    std::vector<std::int64_t> times;
    std::vector<std::uint64_t> defined; ///< orbits that have times[k]
    std::map<StateId, std::vector<std::uint64_t>> counts;
};

/// Orbits are aligned on the sorted union of their time labels; an orbit
/// contributes only at its own labels.
Occupancy occupancy_timeseries(std::span<const Orbit> orbits);

/// Re-encodes `state` under a fixed order; the decoded answers are unchanged.
State project_fixed_order(const State& state, const QuestionOrder& fixed);

/// Collapses counts through project_fixed_order applied to both endpoints.
TransitionCounts project_counts(const TransitionCounts& counts, const QuestionOrder& fixed);

} // namespace orbitscope
