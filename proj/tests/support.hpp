// support.hpp -- fixtures shared by the unit and acceptance tests.

#pragma once

#include "orbitscope/orbit.hpp"
#include "orbitscope/transitions.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace orbitscope::testing {

/// The 8 x 3 worked example, rows t = 0..7 as (Q0, Q1, Q2).
inline SubjectSeries worked_example()
{
    const std::vector<Cell> cells{1, 1, 1, 1, 1, 0, 0, 1, 1, 0, 1, 0,
                                  0, 1, 1, 0, 1, 0, 1, 1, 1, 0, 1, 0};
    return SubjectSeries("k", {0, 1, 2, 3, 4, 5, 6, 7}, 3, cells);
}

/// Its orbit, as printed: (x, y) per t.
inline const std::vector<std::pair<std::string, std::string>>& worked_example_states()
{
    static const std::vector<std::pair<std::string, std::string>> states{
        {"111", "102"}, {"110", "102"}, {"110", "120"}, {"100", "102"},
        {"101", "102"}, {"100", "102"}, {"111", "120"}, {"100", "102"}};
    return states;
}

inline const std::vector<StateId>& worked_example_ids()
{
    static const std::vector<StateId> ids{32, 31, 23, 29, 30, 29, 24, 29};
    return ids;
}

/// The household panel's accumulated counts within {23, 24}.
inline TransitionCounts household_counts(bool defaulting)
{
    TransitionCounts t(defaulting ? "defaulting" : "non-defaulting", 3);
    if (defaulting)
    {
        t.add(24, 24, 2256);
        t.add(24, 23, 2082);
        t.add(23, 23, 1904);
        t.add(23, 24, 1796);
    }
    else
    {
        t.add(24, 24, 2080);
        t.add(24, 23, 1568);
        t.add(23, 23, 1260);
        t.add(23, 24, 1367);
    }
    return t;
}

/// Random coded series: row 0 complete, later cells missing with
/// probability `missing`.
inline SubjectSeries random_series(std::mt19937_64& rng, std::string id, int n, int T,
                                   double missing)
{
    std::bernoulli_distribution bit(0.5);
    std::bernoulli_distribution gap(missing);
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(n * T));
    for (int t = 0; t < T; ++t)
        for (int i = 0; i < n; ++i)
            cells.push_back(t > 0 && gap(rng) ? kMissing : static_cast<Cell>(bit(rng)));
    std::vector<std::int64_t> times(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t)
        times[static_cast<std::size_t>(t)] = 2000 + t;
    return SubjectSeries(std::move(id), times, n, cells);
}

/// Independent orbit construction on plain vectors: the order is a list of
/// variables, the answers are kept by variable and read out through it.
struct NaiveOrbit
{
    std::vector<std::vector<int>> orders;  // per t
    std::vector<std::vector<int>> answers; // per t, in order arrangement
};

inline NaiveOrbit naive_orbit(const std::vector<std::vector<int>>& rows,
                              const std::vector<double>& pop_rates)
{
    const int n = static_cast<int>(rows.front().size());
    std::vector<int> changes(static_cast<std::size_t>(n), 0);
    for (std::size_t t = 1; t < rows.size(); ++t)
        for (int i = 0; i < n; ++i)
            if (rows[t][static_cast<std::size_t>(i)] != rows[t - 1][static_cast<std::size_t>(i)])
                ++changes[static_cast<std::size_t>(i)];

    // selection sort on (changes, rate, index)
    std::vector<int> order;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int slot = 0; slot < n; ++slot)
    {
        int best = -1;
        for (int i = 0; i < n; ++i)
        {
            if (used[static_cast<std::size_t>(i)])
                continue;
            const auto bi = static_cast<std::size_t>(best);
            const auto ii = static_cast<std::size_t>(i);
            if (best < 0 || changes[ii] < changes[bi] ||
                (changes[ii] == changes[bi] && pop_rates[ii] < pop_rates[bi]))
                best = i;
        }
        used[static_cast<std::size_t>(best)] = true;
        order.push_back(best);
    }

    NaiveOrbit result;
    auto read = [&](const std::vector<int>& row) {
        std::vector<int> x;
        for (int v : order)
            x.push_back(row[static_cast<std::size_t>(v)]);
        return x;
    };
    result.orders.push_back(order);
    result.answers.push_back(read(rows.front()));
    for (std::size_t t = 1; t < rows.size(); ++t)
    {
        // changed variables from right to left, each moved to the end
        for (int pos = n - 1; pos >= 0;)
        {
            const int v = order[static_cast<std::size_t>(pos)];
            if (rows[t][static_cast<std::size_t>(v)] != rows[t - 1][static_cast<std::size_t>(v)])
            {
                order.erase(order.begin() + pos);
                order.push_back(v);
            }
            --pos;
        }
        result.orders.push_back(order);
        result.answers.push_back(read(rows[t]));
    }
    return result;
}

} // namespace orbitscope::testing
