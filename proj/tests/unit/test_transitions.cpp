#include "orbitscope/error.hpp"
#include "orbitscope/transitions.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace orbitscope;
namespace fx = orbitscope::testing;

namespace {

Orbit worked_orbit()
{
    const auto s = fx::worked_example();
    return build_orbit(s, population_frequencies(std::span(&s, 1)));
}

Orbit orbit_of_ids(std::string id, const std::vector<StateId>& ids, int n)
{
    Orbit o;
    o.subject_id = std::move(id);
    for (std::size_t t = 0; t < ids.size(); ++t)
    {
        o.times.push_back(static_cast<std::int64_t>(t));
        o.states.push_back(state_from_id(ids[t], n));
        o.imputed.push_back(false);
    }
    return o;
}

} // namespace

TEST(Accumulate, WorkedExample)
{
    const std::vector<Orbit> orbits{worked_orbit()};
    const auto counts = accumulate_transitions(orbits, "all");
    const std::map<Transition, std::uint64_t> expected{
        {{32, 31}, 1}, {{31, 23}, 1}, {{23, 29}, 1}, {{29, 30}, 1},
        {{30, 29}, 1}, {{29, 24}, 1}, {{24, 29}, 1}};
    EXPECT_EQ(counts.entries(), expected);
    EXPECT_EQ(counts.total(), 7u);
    EXPECT_EQ(counts.subjects(), 1u);
}

TEST(Accumulate, IdleAndAdditivity)
{
    const std::vector<Orbit> idle{orbit_of_ids("i", {5, 5, 5, 5, 5}, 3)};
    EXPECT_EQ(accumulate_transitions(idle, "x").count(5, 5), 4u);

    const std::vector<Orbit> twice{worked_orbit(), worked_orbit()};
    const auto doubled = accumulate_transitions(twice, "x");
    for (const auto& [key, c] : doubled.entries())
        EXPECT_EQ(c, 2u);
}

TEST(Accumulate, ImputedStepsCanBeExcluded)
{
    auto o = orbit_of_ids("i", {5, 6, 6, 7}, 3);
    o.imputed[2] = true;
    const std::vector<Orbit> orbits{o};
    EXPECT_EQ(accumulate_transitions(orbits, "x").total(), 3u);
    const auto strict = accumulate_transitions(orbits, "x", {false});
    // the step into the filled row is dropped, the step out of it is kept
    EXPECT_EQ(strict.total(), 2u);
    EXPECT_EQ(strict.count(6, 6), 0u);
    EXPECT_EQ(strict.count(6, 7), 1u);
}

TEST(Accumulate, RejectsBadIds)
{
    TransitionCounts t("x", 3);
    EXPECT_THROW(t.add(0, 1), ValidationError);
    EXPECT_THROW(t.add(1, 49), ValidationError);
    const std::vector<Orbit> mixed{orbit_of_ids("a", {1, 2}, 2), orbit_of_ids("b", {1, 2}, 3)};
    EXPECT_THROW(accumulate_transitions(mixed, "x"), ValidationError);
}

TEST(Restrict, Examples)
{
    const std::vector<Orbit> orbits{worked_orbit()};
    const auto counts = accumulate_transitions(orbits, "all");
    const auto all = restrict(counts, StateSubset::all(3));
    EXPECT_EQ(all.counts.entries(), counts.entries());
    EXPECT_DOUBLE_EQ(all.retained_share, 1.0);

    const auto l = restrict(counts, subset_l());
    EXPECT_TRUE(l.counts.empty());
    EXPECT_DOUBLE_EQ(l.retained_share, 0.0);

    const auto h8 = restrict(counts, subset_h_leading());
    EXPECT_EQ(h8.counts.total(), 7u);
    EXPECT_DOUBLE_EQ(h8.retained_share, 1.0);
}

TEST(Subsets, NamedSets)
{
    EXPECT_EQ(subset_l().ids(), (std::set<StateId>{23, 24}));
    EXPECT_EQ(subset_h().ids(), (std::set<StateId>{23, 24, 29, 30, 31, 32}));
    EXPECT_EQ(subset_h_leading().ids(), (std::set<StateId>{21, 22, 23, 24, 29, 30, 31, 32}));
    EXPECT_EQ(parse_subset("23,24", 3).ids(), subset_l().ids());
    EXPECT_TRUE(parse_subset("all", 13).contains(StateSpace(13).size()));
    EXPECT_THROW(parse_subset("L", 4), ValidationError);
    EXPECT_THROW(parse_subset("0,1", 3), ValidationError);
    EXPECT_THROW(parse_subset("nonsense", 3), ValidationError);
}

TEST(Subsets, LeadingSubsetOracle)
{
    // every state whose order starts with variable v and whose first answer is b
    for (int v = 0; v < 3; ++v)
        for (int b = 0; b < 2; ++b)
        {
            std::set<StateId> expected;
            for (StateId id = 1; id <= 48; ++id)
            {
                const auto s = state_from_id(id, 3);
                if (s.order()[0] == v && s.answers()[0] == b)
                    expected.insert(id);
            }
            EXPECT_EQ(leading_subset(3, v, b, "x").ids(), expected);
        }
    EXPECT_THROW(leading_subset(13, 0, 1, "x"), ValidationError);
}

TEST(OddsRatio, Examples)
{
    TransitionCounts first("a", 2);
    TransitionCounts second("b", 2);
    first.add(1, 1, 2);
    first.add(1, 2, 1);
    second.add(1, 1, 1);
    second.add(1, 2, 1);
    const auto r = odds_ratio(first, second, 1, 1, StateSubset::all(2));
    EXPECT_EQ(r.a, 2u);
    EXPECT_EQ(r.b, 1u);
    EXPECT_EQ(r.c, 1u);
    EXPECT_EQ(r.d, 1u);
    EXPECT_DOUBLE_EQ(*r.value, 2.0);

    const auto sym = odds_ratio(first, first, 1, 2, StateSubset::all(2));
    EXPECT_DOUBLE_EQ(*sym.value, 1.0);
}

TEST(OddsRatio, UndefinedWhenDenominatorIsZero)
{
    TransitionCounts first("a", 2);
    TransitionCounts second("b", 2);
    first.add(1, 1, 3);
    second.add(1, 2, 3);
    EXPECT_FALSE(odds_ratio(first, second, 1, 1, StateSubset::all(2)).value);
    EXPECT_THROW(odds_ratio(first, second, 1, 5, subset_l()), ValidationError);
}

TEST(OddsRatio, HouseholdCountsWithinL)
{
    const auto nd = fx::household_counts(false);
    const auto d = fx::household_counts(true);
    // ad / cb with the complement of the pair taken within L
    auto oracle = [&](StateId i, StateId j) {
        const double a = static_cast<double>(nd.count(i, j));
        const double c = static_cast<double>(d.count(i, j));
        const double b = static_cast<double>(nd.total()) - a;
        const double dd = static_cast<double>(d.total()) - c;
        return a * dd / (c * b);
    };
    const auto r = odds_ratio(nd, d, 24, 24, subset_l());
    EXPECT_EQ(r.b, 4195u);
    EXPECT_EQ(r.d, 5782u);
    EXPECT_NEAR(*r.value, 1.2708, 1e-4);
    for (auto [i, j] : {std::pair<StateId, StateId>{24, 24}, {24, 23}, {23, 23}, {23, 24}})
        EXPECT_NEAR(*odds_ratio(nd, d, i, j, subset_l()).value, oracle(i, j), 1e-12);
}

TEST(OddsRatio, SwappingPopulationsInverts)
{
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 200; ++rep)
    {
        TransitionCounts x("x", 2);
        TransitionCounts y("y", 2);
        for (StateId i = 1; i <= 8; ++i)
            for (StateId j = 1; j <= 8; ++j)
            {
                x.add(i, j, 1 + rng() % 50);
                y.add(i, j, 1 + rng() % 50);
            }
        const StateId i = 1 + rng() % 8;
        const StateId j = 1 + rng() % 8;
        const auto fwd = odds_ratio(x, y, i, j, StateSubset::all(2));
        const auto back = odds_ratio(y, x, i, j, StateSubset::all(2));
        EXPECT_NEAR(*fwd.value * *back.value, 1.0, 1e-12);
    }
}

TEST(Shares, Examples)
{
    const auto nd = fx::household_counts(false);
    const auto d = fx::household_counts(true);
    auto s = transition_shares(nd, d, 24, 24);
    EXPECT_NEAR(*s.first_percent, 47.97, 0.005);
    EXPECT_NEAR(*s.second_percent, 52.03, 0.005);
    s = transition_shares(nd, d, 23, 23);
    EXPECT_NEAR(*s.first_percent, 100.0 * 1260.0 / 3164.0, 1e-12);
    EXPECT_NEAR(*s.first_percent + *s.second_percent, 100.0, 1e-12);

    TransitionCounts e("e", 3);
    e.add(1, 1, 5);
    s = transition_shares(e, e, 1, 1);
    EXPECT_DOUBLE_EQ(*s.first_percent, 50.0);
    EXPECT_FALSE(transition_shares(e, e, 2, 2).first_percent);
}

TEST(OccupancyTest, Examples)
{
    const std::vector<Orbit> one{worked_orbit()};
    const auto occ = occupancy_timeseries(one);
    EXPECT_EQ(occ.counts.at(29), (std::vector<std::uint64_t>{0, 0, 0, 1, 0, 1, 0, 1}));

    const std::vector<Orbit> swap{orbit_of_ids("a", {23, 24, 23, 24}, 3),
                                  orbit_of_ids("b", {24, 23, 24, 23}, 3)};
    const auto sw = occupancy_timeseries(swap);
    for (std::size_t t = 0; t < 4; ++t)
        EXPECT_EQ(sw.counts.at(23)[t] + sw.counts.at(24)[t], 2u);

    const std::vector<Orbit> idle{orbit_of_ids("a", {7, 7, 7}, 3), orbit_of_ids("b", {7, 7, 7}, 3)};
    EXPECT_EQ(occupancy_timeseries(idle).counts.at(7), (std::vector<std::uint64_t>{2, 2, 2}));
}

TEST(Projection, FixedOrderIdentities)
{
    const auto y = QuestionOrder::parse("120");
    EXPECT_EQ(project_fixed_order(state_from_id(29, 3), y).id(), 21u);
    EXPECT_EQ(project_fixed_order(state_from_id(31, 3), y).id(), 22u);
    EXPECT_EQ(project_fixed_order(state_from_id(30, 3), y).id(), 23u);
    EXPECT_EQ(project_fixed_order(state_from_id(32, 3), y).id(), 24u);
    for (StateId id = 1; id <= 48; ++id)
    {
        const auto s = state_from_id(id, 3);
        EXPECT_EQ(project_fixed_order(s, s.order()), s);
        EXPECT_EQ(decode_state(project_fixed_order(s, y)), decode_state(s));
    }
}

TEST(Projection, CountsCollapseAndConserveTotal)
{
    std::mt19937_64 rng(11);
    std::vector<Orbit> orbits;
    for (int k = 0; k < 50; ++k)
    {
        const auto s = fx::random_series(rng, "s" + std::to_string(k), 3, 10, 0.0);
        orbits.push_back(build_orbit(s, PopulationFrequencies({0.1, 0.2, 0.3})));
    }
    const auto counts = accumulate_transitions(orbits, "x");
    const auto y = QuestionOrder::parse("120");
    const auto projected = project_counts(counts, y);
    EXPECT_EQ(projected.total(), counts.total());
    for (const auto& [key, c] : projected.entries())
    {
        EXPECT_EQ(state_from_id(key.from, 3).order(), y);
        EXPECT_EQ(state_from_id(key.to, 3).order(), y);
    }
}
