#include "orbitscope/orbit.hpp"

#include "orbitscope/error.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace orbitscope {

SubjectSeries::SubjectSeries(std::string subject_id, std::vector<std::int64_t> times,
                             int variables, std::vector<Cell> cells)
  : _subject_id(std::move(subject_id)), _times(std::move(times)), _n(variables),
    _cells(std::move(cells))
{
    const auto where = " (subject '" + _subject_id + "')";
    if (_n < 1 || _n > kMaxVariables)
        throw ValidationError("variable count must be between 1 and " +
                              std::to_string(kMaxVariables) + where);
    if (_times.empty())
        throw ValidationError("series has no rows" + where);
    if (_cells.size() != _times.size() * static_cast<std::size_t>(_n))
        throw ValidationError("series has " + std::to_string(_cells.size()) +
                              " cells, expected " +
                              std::to_string(_times.size() * static_cast<std::size_t>(_n)) +
                              where);
    for (std::size_t t = 1; t < _times.size(); ++t)
        if (_times[t] <= _times[t - 1])
            throw ValidationError("time labels must be strictly increasing" + where);
    for (auto c : _cells)
        if (c != 0 && c != 1 && c != kMissing)
            throw ValidationError("cell values must be 0, 1 or missing" + where);
    if (!row_complete(0))
        throw ValidationError("first row (t = " + std::to_string(_times.front()) +
                              ") has missing answers" + where);
}

bool SubjectSeries::row_complete(int t) const
{
    auto r = row(t);
    return std::none_of(r.begin(), r.end(), [](Cell c) { return c == kMissing; });
}

SubjectSeries make_series(std::string subject_id, std::vector<std::int64_t> times,
                          int variables, std::vector<Cell> cells, LeadingGapPolicy policy)
{
    if (policy == LeadingGapPolicy::trim && variables > 0)
    {
        const auto n = static_cast<std::size_t>(variables);
        std::size_t first = 0;
        while (first < times.size() &&
               std::any_of(cells.begin() + static_cast<std::ptrdiff_t>(first * n),
                           cells.begin() + static_cast<std::ptrdiff_t>((first + 1) * n),
                           [](Cell c) { return c == kMissing; }))
            ++first;
        if (first == times.size())
            throw ValidationError("no fully observed row (subject '" + subject_id + "')");
        if (first > 0 && cells.size() == times.size() * n)
        {
            times.erase(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(first));
            cells.erase(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(first * n));
        }
    }
    return SubjectSeries(std::move(subject_id), std::move(times), variables, std::move(cells));
}

Cell code_answer(RawAnswer answer, Polarity polarity) noexcept
{
    if (answer == RawAnswer::missing)
        return kMissing;
    const bool yes = answer == RawAnswer::yes;
    return (yes == (polarity == Polarity::yes_is_favourable)) ? 1 : 0;
}

SubjectSeries code_answers(std::string subject_id, std::vector<std::int64_t> times,
                           const std::vector<std::vector<RawAnswer>>& raw,
                           std::span<const QuestionSpec> specs, LeadingGapPolicy policy)
{
    validate_question_specs(specs);
    std::vector<Cell> cells;
    cells.reserve(raw.size() * specs.size());
    for (std::size_t t = 0; t < raw.size(); ++t)
    {
        if (raw[t].size() != specs.size())
            throw ValidationError("row " + std::to_string(t) + " has " +
                                  std::to_string(raw[t].size()) + " answers, expected " +
                                  std::to_string(specs.size()) + " (subject '" +
                                  subject_id + "')");
        for (std::size_t i = 0; i < specs.size(); ++i)
            cells.push_back(code_answer(raw[t][i], specs[i].polarity));
    }
    return make_series(std::move(subject_id), std::move(times),
                       static_cast<int>(specs.size()), std::move(cells), policy);
}

// ----------------------------------------------------------------------------

PopulationFrequencies::PopulationFrequencies(std::vector<double> rates)
  : _rates(std::move(rates))
{
    for (double r : _rates)
        if (!(r >= 0.0 && r <= 1.0))
            throw ValidationError("population rates must lie in [0, 1]");
}

PopulationFrequencies::PopulationFrequencies(std::vector<std::uint64_t> changes,
                                             std::vector<std::uint64_t> pairs)
  : _changes(std::move(changes)), _pairs(std::move(pairs))
{
    if (_changes.size() != _pairs.size())
        throw ValidationError("change and pair counts differ in length");
    _rates.resize(_changes.size());
    for (std::size_t i = 0; i < _changes.size(); ++i)
    {
        if (_changes[i] > _pairs[i])
            throw ValidationError("more changes than observed pairs for variable " +
                                  std::to_string(i));
        _rates[i] = _pairs[i] == 0 ? 0.0
                                   : static_cast<double>(_changes[i]) /
                                         static_cast<double>(_pairs[i]);
    }
}

std::vector<double> PopulationFrequencies::event_shares() const
{
    std::vector<double> weights;
    if (!_changes.empty())
        weights.assign(_changes.begin(), _changes.end());
    else
        weights = _rates;
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (auto& w : weights)
        w = total > 0.0 ? w / total : 0.0;
    return weights;
}

// ----------------------------------------------------------------------------

namespace {

// Walks each variable's observed values; calls on_pair(i, changed) for each
// pair of consecutive observations.
template <typename F>
void for_each_observed_pair(const SubjectSeries& series, F&& on_pair)
{
    for (int i = 0; i < series.variables(); ++i)
    {
        Cell last = series.cell(0, i);
        for (int t = 1; t < series.length(); ++t)
        {
            const Cell c = series.cell(t, i);
            if (c == kMissing)
                continue;
            on_pair(i, c != last);
            last = c;
        }
    }
}

} // namespace

ChangeFrequencies change_frequencies(const SubjectSeries& series)
{
    ChangeFrequencies f{std::vector<int>(static_cast<std::size_t>(series.variables()), 0)};
    for_each_observed_pair(series, [&](int i, bool changed) {
        if (changed)
            ++f.counts[static_cast<std::size_t>(i)];
    });
    return f;
}

std::vector<int> observed_pairs(const SubjectSeries& series)
{
    std::vector<int> pairs(static_cast<std::size_t>(series.variables()), 0);
    for_each_observed_pair(series, [&](int i, bool) { ++pairs[static_cast<std::size_t>(i)]; });
    return pairs;
}

QuestionOrder initial_order(const ChangeFrequencies& freqs, const PopulationFrequencies& pop)
{
    const auto n = freqs.counts.size();
    if (pop.variables() != static_cast<int>(n))
        throw ValidationError("subject has " + std::to_string(n) +
                              " variables but population frequencies have " +
                              std::to_string(pop.variables()));
    std::vector<std::uint8_t> order(n);
    std::iota(order.begin(), order.end(), std::uint8_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::uint8_t a, std::uint8_t b) {
        if (freqs.counts[a] != freqs.counts[b])
            return freqs.counts[a] < freqs.counts[b];
        return pop.rate(a) < pop.rate(b);
    });
    return QuestionOrder(std::move(order));
}

State initial_state(const SubjectSeries& series, const QuestionOrder& order)
{
    if (order.size() != series.variables())
        throw ValidationError("question order length does not match subject '" +
                              series.subject_id() + "'");
    auto first = series.row(0);
    return encode_row(AnswerString(std::vector<std::uint8_t>(first.begin(), first.end())),
                      order);
}

std::vector<int> relocated_variables(const State& state, const AnswerString& new_row)
{
    if (new_row.size() != state.variables())
        throw ValidationError("new row has " + std::to_string(new_row.size()) +
                              " answers, state has " + std::to_string(state.variables()));
    std::vector<int> changed;
    for (int j = state.variables() - 1; j >= 0; --j)
    {
        const int variable = state.order()[j];
        if (new_row[variable] != state.answers()[j])
            changed.push_back(variable);
    }
    return changed;
}

State step(const State& state, const AnswerString& new_row)
{
    const auto changed = relocated_variables(state, new_row);
    if (changed.empty())
        return state;

    auto order_bits = state.order().indices();
    auto answer_bits = state.answers().bits();
    std::vector<std::uint8_t> order(order_bits.begin(), order_bits.end());
    std::vector<std::uint8_t> answers(answer_bits.begin(), answer_bits.end());

    for (int variable : changed)
    {
        auto pos = std::find(order.begin(), order.end(), variable) - order.begin();
        order.erase(order.begin() + pos);
        answers.erase(answers.begin() + pos);
        order.push_back(static_cast<std::uint8_t>(variable));
        answers.push_back(new_row[variable]);
    }
    return State(AnswerString(std::move(answers)), QuestionOrder(std::move(order)));
}

std::vector<AnswerString> locf_rows(const SubjectSeries& series)
{
    std::vector<AnswerString> rows;
    rows.reserve(static_cast<std::size_t>(series.length()));
    auto first = series.row(0);
    std::vector<std::uint8_t> current(first.begin(), first.end());
    rows.emplace_back(current);
    for (int t = 1; t < series.length(); ++t)
    {
        auto r = series.row(t);
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] != kMissing)
                current[i] = static_cast<std::uint8_t>(r[i]);
        rows.emplace_back(current);
    }
    return rows;
}

namespace {

Orbit build_from(const SubjectSeries& series, const QuestionOrder& order,
                 ChangeFrequencies freqs)
{
    Orbit orbit;
    orbit.subject_id = series.subject_id();
    orbit.times.assign(series.times().begin(), series.times().end());
    orbit.frequencies = std::move(freqs);

    const auto rows = locf_rows(series);
    orbit.states.reserve(rows.size());
    orbit.imputed.reserve(rows.size());
    orbit.states.push_back(encode_row(rows.front(), order));
    orbit.imputed.push_back(false);
    for (int t = 1; t < series.length(); ++t)
    {
        orbit.states.push_back(step(orbit.states.back(), rows[static_cast<std::size_t>(t)]));
        orbit.imputed.push_back(!series.row_complete(t));
    }
    return orbit;
}

} // namespace

Orbit build_orbit(const SubjectSeries& series, const PopulationFrequencies& pop)
{
    auto freqs = change_frequencies(series);
    auto order = initial_order(freqs, pop);
    return build_from(series, order, std::move(freqs));
}

Orbit build_orbit(const SubjectSeries& series, const QuestionOrder& fixed_initial_order)
{
    if (fixed_initial_order.size() != series.variables())
        throw ValidationError("fixed initial order has " +
                              std::to_string(fixed_initial_order.size()) +
                              " variables, subject '" + series.subject_id() + "' has " +
                              std::to_string(series.variables()));
    return build_from(series, fixed_initial_order, change_frequencies(series));
}

std::vector<Orbit> build_orbits(std::span<const SubjectSeries> population,
                                const PopulationFrequencies& pop, unsigned threads)
{
    std::vector<Orbit> orbits(population.size());
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, std::max<std::size_t>(1, population.size() / 64)));

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k)
            orbits[k] = build_orbit(population[k], pop);
    };
    if (threads <= 1)
    {
        work(0, population.size());
        return orbits;
    }

    // Each worker writes a disjoint slice; exceptions are rethrown in order.
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (population.size() + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w)
        {
            const auto begin = std::min(population.size(), w * chunk);
            const auto end = std::min(population.size(), begin + chunk);
            workers.emplace_back([&, w, begin, end] {
                try
                {
                    work(begin, end);
                }
                catch (...)
                {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return orbits;
}

PopulationFrequencies population_frequencies(std::span<const SubjectSeries> population)
{
    if (population.empty())
        throw ValidationError("cannot compute population frequencies of an empty population");
    const int n = population.front().variables();
    std::vector<std::uint64_t> changes(static_cast<std::size_t>(n), 0);
    std::vector<std::uint64_t> pairs(static_cast<std::size_t>(n), 0);
    for (const auto& series : population)
    {
        if (series.variables() != n)
            throw ValidationError("subject '" + series.subject_id() + "' has " +
                                  std::to_string(series.variables()) +
                                  " variables, population has " + std::to_string(n));
        for_each_observed_pair(series, [&](int i, bool changed) {
            ++pairs[static_cast<std::size_t>(i)];
            if (changed)
                ++changes[static_cast<std::size_t>(i)];
        });
    }
    return PopulationFrequencies(std::move(changes), std::move(pairs));
}

} // namespace orbitscope
