// orbit.hpp -- turning a subject's binary panel into its orbit through S_n.
//
// Orbit construction:
//   1. count how often each variable changes (gaps bridged, see below);
//   2. order variables by ascending change count, ties by ascending
//      population rate, remaining ties by index;
//   3. at every later time move each changed variable, with its new answer,
//      to the right end of the order, rightmost changed variable first.
//
// Missing cells are filled by last observation carried forward (LOCF).
// A run of missing cells counts one change at most, at the observation that
// closes it, and only when that value differs from the one before the gap.

#pragma once

#include "orbitscope/state_space.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace orbitscope {

/// Coded panel cell: 0, 1 or kMissing.
using Cell = std::int8_t;
inline constexpr Cell kMissing = -1;

/// Uncoded survey answer.
enum class RawAnswer
{
    no,
    yes,
    missing,
};

/// What to do with a subject whose first row is incomplete.
enum class LeadingGapPolicy
{
    reject, ///< throw ValidationError naming the subject
    trim,   ///< drop rows until the first fully observed one
};

/// One subject's coded panel: T rows of n cells, times strictly increasing,
/// row 0 fully observed.
class SubjectSeries
{
public:
    /// `cells` is row-major, T * n entries. Throws ValidationError on any
    /// broken invariant; the message names the subject.
    SubjectSeries(std::string subject_id, std::vector<std::int64_t> times,
                  int variables, std::vector<Cell> cells);

    const std::string& subject_id() const noexcept { return _subject_id; }
    int variables() const noexcept { return _n; }
    int length() const noexcept { return static_cast<int>(_times.size()); }
    std::span<const std::int64_t> times() const noexcept { return _times; }
    std::span<const Cell> cells() const noexcept { return _cells; }

    Cell cell(int t, int i) const
    {
        return _cells[static_cast<std::size_t>(t) * static_cast<std::size_t>(_n) +
                      static_cast<std::size_t>(i)];
    }
    std::span<const Cell> row(int t) const
    {
        return std::span<const Cell>(_cells).subspan(
            static_cast<std::size_t>(t) * static_cast<std::size_t>(_n),
            static_cast<std::size_t>(_n));
    }
    bool row_complete(int t) const;

private:
    std::string _subject_id;
    std::vector<std::int64_t> _times;
    int _n;
    std::vector<Cell> _cells;
};

/// Builds a series, applying `policy` when row 0 has missing cells.
SubjectSeries make_series(std::string subject_id, std::vector<std::int64_t> times,
                          int variables, std::vector<Cell> cells,
                          LeadingGapPolicy policy = LeadingGapPolicy::reject);

/// Codes raw yes/no answers by each question's polarity. `raw` holds one
/// vector of n answers per time.
SubjectSeries code_answers(std::string subject_id, std::vector<std::int64_t> times,
                           const std::vector<std::vector<RawAnswer>>& raw,
                           std::span<const QuestionSpec> specs,
                           LeadingGapPolicy policy = LeadingGapPolicy::reject);

Cell code_answer(RawAnswer answer, Polarity polarity) noexcept;

/// Per-variable number of observed answer changes of one subject.
struct ChangeFrequencies
{
    std::vector<int> counts;

    friend bool operator==(const ChangeFrequencies&, const ChangeFrequencies&) = default;
};

/// Population-level change rates used to break ties in the initial order.
class PopulationFrequencies
{
public:
    PopulationFrequencies() = default;

    /// Rates must lie in [0, 1].
    explicit PopulationFrequencies(std::vector<double> rates);

    /// Pooled counts; rate = changes / pairs (0 when pairs is 0).
    PopulationFrequencies(std::vector<std::uint64_t> changes,
                          std::vector<std::uint64_t> pairs);

    int variables() const noexcept { return static_cast<int>(_rates.size()); }
    const std::vector<double>& rates() const noexcept { return _rates; }
    double rate(int i) const { return _rates[static_cast<std::size_t>(i)]; }

    /// Each variable's share of all change events. Falls back to normalised
    /// rates when built from rates alone; all zeros if nothing changes.
    std::vector<double> event_shares() const;

    const std::vector<std::uint64_t>& changes() const noexcept { return _changes; }
    const std::vector<std::uint64_t>& pairs() const noexcept { return _pairs; }

private:
    std::vector<double> _rates;
    std::vector<std::uint64_t> _changes;
    std::vector<std::uint64_t> _pairs;
};

/// A subject's full state sequence.
struct Orbit
{
    std::string subject_id;
    std::vector<std::int64_t> times;
    std::vector<State> states;
    ChangeFrequencies frequencies;
    std::vector<bool> imputed; ///< row t had at least one missing cell

    int variables() const { return states.empty() ? 0 : states.front().variables(); }
    int length() const noexcept { return static_cast<int>(states.size()); }
};

ChangeFrequencies change_frequencies(const SubjectSeries& series);

/// Number of observed consecutive pairs per variable (gap-bridged), i.e. the
/// denominator matching change_frequencies.
std::vector<int> observed_pairs(const SubjectSeries& series);

/// Throws ValidationError when `freqs` and `pop` disagree on n.
QuestionOrder initial_order(const ChangeFrequencies& freqs,
                            const PopulationFrequencies& pop);

State initial_state(const SubjectSeries& series, const QuestionOrder& order);

/// Variables whose answer differs between `state` and `new_row`, in the
/// order step() relocates them: decreasing position in state.order().
std::vector<int> relocated_variables(const State& state, const AnswerString& new_row);

/// One update: each changed variable and its new answer is removed and
/// appended at the right end, processed by decreasing position at entry.
/// Returns `state` unchanged when nothing changes.
State step(const State& state, const AnswerString& new_row);

/// Rows with missing cells filled by LOCF.
std::vector<AnswerString> locf_rows(const SubjectSeries& series);

Orbit build_orbit(const SubjectSeries& series, const PopulationFrequencies& pop);

/// Same, but every orbit starts from the given order instead of its own
/// frequency ranking.
Orbit build_orbit(const SubjectSeries& series, const QuestionOrder& fixed_initial_order);

/// Builds all orbits, in input order, using up to `threads` workers
/// (0 = hardware concurrency).
std::vector<Orbit> build_orbits(std::span<const SubjectSeries> population,
                                const PopulationFrequencies& pop,
                                unsigned threads = 1);

/// Pooled changes / observed pairs per variable. Throws ValidationError on
/// an empty population or mixed n.
PopulationFrequencies population_frequencies(std::span<const SubjectSeries> population);

} // namespace orbitscope
