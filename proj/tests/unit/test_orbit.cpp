#include "orbitscope/error.hpp"
#include "orbitscope/orbit.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace orbitscope;
using orbitscope::testing::worked_example;

namespace {

State st(const char* x, const char* y)
{
    return State(AnswerString::parse(x), QuestionOrder::parse(y));
}

SubjectSeries one_variable(std::vector<Cell> cells)
{
    std::vector<std::int64_t> times(cells.size());
    for (std::size_t t = 0; t < times.size(); ++t)
        times[t] = static_cast<std::int64_t>(t);
    return SubjectSeries("s", times, 1, std::move(cells));
}

} // namespace

TEST(Coding, Polarity)
{
    EXPECT_EQ(code_answer(RawAnswer::yes, Polarity::yes_is_favourable), 1);
    EXPECT_EQ(code_answer(RawAnswer::yes, Polarity::yes_is_unfavourable), 0);
    EXPECT_EQ(code_answer(RawAnswer::no, Polarity::yes_is_unfavourable), 1);
    EXPECT_EQ(code_answer(RawAnswer::missing, Polarity::yes_is_favourable), kMissing);
}

TEST(Series, Validation)
{
    EXPECT_THROW(SubjectSeries("a", {0, 0}, 1, {1, 1}), ValidationError);
    EXPECT_THROW(SubjectSeries("a", {0, 1}, 1, {1}), ValidationError);
    EXPECT_THROW(SubjectSeries("a", {0}, 1, {2}), ValidationError);
    EXPECT_THROW(SubjectSeries("a", {}, 1, {}), ValidationError);
    try
    {
        SubjectSeries("subject-7", {0, 1}, 2, {kMissing, 1, 1, 1});
        FAIL();
    }
    catch (const ValidationError& e)
    {
        EXPECT_NE(std::string(e.what()).find("subject-7"), std::string::npos);
    }
}

TEST(Series, TrimLeadingGap)
{
    auto s = make_series("a", {0, 1, 2}, 2, {kMissing, 1, 0, 1, 1, 1}, LeadingGapPolicy::trim);
    EXPECT_EQ(s.length(), 2);
    EXPECT_EQ(s.times()[0], 1);
    EXPECT_THROW(make_series("a", {0}, 1, {kMissing}, LeadingGapPolicy::trim), ValidationError);
}

TEST(ChangeFrequencyTest, WorkedExample)
{
    EXPECT_EQ(change_frequencies(worked_example()).counts, (std::vector<int>{3, 0, 7}));
    EXPECT_EQ(observed_pairs(worked_example()), (std::vector<int>{7, 7, 7}));
}

TEST(ChangeFrequencyTest, GapCountsOnceAtClosingObservation)
{
    EXPECT_EQ(change_frequencies(one_variable({1, kMissing, kMissing, 0})).counts,
              std::vector<int>{1});
    EXPECT_EQ(change_frequencies(one_variable({1, kMissing, kMissing, 1})).counts,
              std::vector<int>{0});
    EXPECT_EQ(observed_pairs(one_variable({1, kMissing, kMissing, 0})), std::vector<int>{1});
    EXPECT_EQ(change_frequencies(one_variable({1, 1, 1, 1})).counts, std::vector<int>{0});
}

TEST(InitialOrder, Examples)
{
    const PopulationFrequencies flat(std::vector<double>{0.1, 0.1, 0.1});
    EXPECT_EQ(initial_order({{3, 0, 7}}, flat).to_string(), "102");
    EXPECT_EQ(initial_order({{3, 0, 7}}, PopulationFrequencies({0.9, 0.5, 0.0})).to_string(),
              "102");
    EXPECT_EQ(initial_order({{2, 0, 2}}, PopulationFrequencies({0.4, 0.1, 0.2})).to_string(),
              "120");
    EXPECT_EQ(initial_order({{2, 0, 2}}, flat).to_string(), "102");
    EXPECT_THROW(initial_order({{1, 2}}, flat), ValidationError);
}

TEST(Step, Examples)
{
    EXPECT_EQ(step(st("111", "102"), AnswerString::parse("110")), st("110", "102"));
    EXPECT_EQ(step(st("110", "102"), AnswerString::parse("011")), st("110", "120"));
    EXPECT_EQ(step(st("111", "120"), AnswerString::parse("010")), st("100", "102"));
    EXPECT_EQ(relocated_variables(st("111", "120"), AnswerString::parse("010")),
              (std::vector<int>{0, 2}));
}

TEST(Step, FixpointOnUnchangedRow)
{
    for (StateId id = 1; id <= 48; ++id)
    {
        const auto s = state_from_id(id, 3);
        EXPECT_EQ(step(s, decode_state(s)), s);
    }
}

TEST(BuildOrbit, WorkedExample)
{
    const auto series = worked_example();
    const auto pop = population_frequencies(std::span(&series, 1));
    const auto orbit = build_orbit(series, pop);
    ASSERT_EQ(orbit.length(), 8);
    const auto& expected = orbitscope::testing::worked_example_states();
    for (int t = 0; t < 8; ++t)
    {
        const auto& s = orbit.states[static_cast<std::size_t>(t)];
        EXPECT_EQ(s.answers().to_string(), expected[static_cast<std::size_t>(t)].first) << t;
        EXPECT_EQ(s.order().to_string(), expected[static_cast<std::size_t>(t)].second) << t;
        EXPECT_EQ(s.id(), orbitscope::testing::worked_example_ids()[static_cast<std::size_t>(t)]);
    }
    EXPECT_EQ(orbit.frequencies.counts, (std::vector<int>{3, 0, 7}));
}

TEST(BuildOrbit, ConstantSeriesIdles)
{
    const SubjectSeries s("c", {0, 1, 2, 3}, 2, {1, 0, 1, 0, 1, 0, 1, 0});
    const auto orbit = build_orbit(s, PopulationFrequencies({0.0, 0.0}));
    for (const auto& state : orbit.states)
        EXPECT_EQ(state, orbit.states.front());
}

TEST(BuildOrbit, MissingRowRepeatsPreviousState)
{
    const SubjectSeries s("m", {0, 1, 2, 3}, 2,
                          {1, 0, 0, 0, kMissing, kMissing, 1, 1});
    const auto orbit = build_orbit(s, PopulationFrequencies({0.0, 0.0}));
    EXPECT_EQ(orbit.states[2], orbit.states[1]);
    EXPECT_EQ(orbit.imputed, (std::vector<bool>{false, false, true, false}));
}

TEST(BuildOrbit, MatchesNaiveReferenceOnRandomPanels)
{
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 500; ++rep)
    {
        const int n = 1 + static_cast<int>(rng() % 6);
        const int T = 1 + static_cast<int>(rng() % 12);
        const auto s = orbitscope::testing::random_series(rng, "r", n, T, 0.0);
        std::vector<std::vector<int>> rows;
        for (int t = 0; t < T; ++t)
        {
            std::vector<int> row;
            for (int i = 0; i < n; ++i)
                row.push_back(s.cell(t, i));
            rows.push_back(row);
        }
        std::vector<double> rates(static_cast<std::size_t>(n));
        for (auto& r : rates)
            r = static_cast<double>(rng() % 5) / 10.0;
        const auto orbit = build_orbit(s, PopulationFrequencies(rates));
        const auto naive = orbitscope::testing::naive_orbit(rows, rates);
        for (int t = 0; t < T; ++t)
        {
            const auto& st = orbit.states[static_cast<std::size_t>(t)];
            for (int j = 0; j < n; ++j)
            {
                ASSERT_EQ(st.order()[j], naive.orders[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)]);
                ASSERT_EQ(st.answers()[j], naive.answers[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)]);
            }
        }
    }
}

TEST(BuildOrbit, DecodeEqualsLocfRows)
{
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 1000; ++rep)
    {
        const auto s = orbitscope::testing::random_series(
            rng, "r", 1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 20), 0.3);
        const auto orbit = build_orbit(s, PopulationFrequencies(std::vector<double>(
                                              static_cast<std::size_t>(s.variables()), 0.0)));
        const auto rows = locf_rows(s);
        for (int t = 0; t < s.length(); ++t)
            ASSERT_EQ(decode_state(orbit.states[static_cast<std::size_t>(t)]),
                      rows[static_cast<std::size_t>(t)]);
    }
}

TEST(BuildOrbits, ParallelMatchesSerial)
{
    std::mt19937_64 rng(9);
    std::vector<SubjectSeries> pop;
    for (int k = 0; k < 200; ++k)
        pop.push_back(orbitscope::testing::random_series(rng, "s" + std::to_string(k), 4, 8, 0.1));
    const auto freqs = population_frequencies(pop);
    const auto serial = build_orbits(pop, freqs, 1);
    const auto parallel = build_orbits(pop, freqs, 4);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t k = 0; k < serial.size(); ++k)
    {
        EXPECT_EQ(serial[k].subject_id, parallel[k].subject_id);
        EXPECT_EQ(serial[k].states, parallel[k].states);
    }
}

TEST(PopulationFrequencyTest, Examples)
{
    const auto series = worked_example();
    const auto pop = population_frequencies(std::span(&series, 1));
    EXPECT_DOUBLE_EQ(pop.rate(0), 3.0 / 7.0);
    EXPECT_DOUBLE_EQ(pop.rate(1), 0.0);
    EXPECT_DOUBLE_EQ(pop.rate(2), 1.0);
    EXPECT_DOUBLE_EQ(pop.event_shares()[2], 0.7);

    const std::vector<SubjectSeries> two{SubjectSeries("a", {0, 1, 2}, 1, {0, 1, 1}),
                                         SubjectSeries("b", {0, 1, 2}, 1, {0, 0, 0})};
    EXPECT_DOUBLE_EQ(population_frequencies(two).rate(0), 0.25);
    EXPECT_THROW(population_frequencies(std::span<const SubjectSeries>()), ValidationError);
    EXPECT_THROW(PopulationFrequencies({1.5}), ValidationError);
}
