#include "orbitscope/error.hpp"
#include "orbitscope/simulate.hpp"
#include "orbitscope/transitions.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace orbitscope;

namespace {

SimulationConfig config(int K, std::vector<double> p, int T, std::uint64_t seed)
{
    SimulationConfig c;
    c.subjects = K;
    c.variables = static_cast<int>(p.size());
    c.timesteps = T;
    c.flip_probabilities = std::move(p);
    c.seed = seed;
    return c;
}

} // namespace

TEST(Simulate, Validation)
{
    EXPECT_THROW(validate_config(config(0, {0.1}, 3, 1)), ValidationError);
    EXPECT_THROW(validate_config(config(1, {1.1}, 3, 1)), ValidationError);
    auto c = config(1, {0.1, 0.2}, 3, 1);
    c.variables = 3;
    EXPECT_THROW(validate_config(c), ValidationError);
    c = config(1, std::vector<double>(14, 0.1), 3, 1);
    EXPECT_THROW(validate_config(c), ValidationError);
}

TEST(Simulate, Deterministic)
{
    const auto a = simulate_population(config(50, {0.1, 0.3, 0.5}, 8, 42));
    const auto b = simulate_population(config(50, {0.1, 0.3, 0.5}, 8, 42));
    const auto c = simulate_population(config(50, {0.1, 0.3, 0.5}, 8, 43));
    bool differs = false;
    for (std::size_t k = 0; k < a.subjects.size(); ++k)
    {
        const auto x = a.subjects[k].cells();
        const auto y = b.subjects[k].cells();
        const auto z = c.subjects[k].cells();
        EXPECT_TRUE(std::equal(x.begin(), x.end(), y.begin(), y.end()));
        differs = differs || !std::equal(x.begin(), x.end(), z.begin(), z.end());
    }
    EXPECT_TRUE(differs);
    EXPECT_EQ(a.subjects.front().subject_id(), "s00000");
}

TEST(Simulate, ExtremeFlipProbabilities)
{
    const auto still = simulate_population(config(100, {0.0, 0.0}, 6, 1));
    for (const auto& s : still.subjects)
    {
        const auto orbit = build_orbit(s, PopulationFrequencies({0.0, 0.0}));
        for (const auto& st : orbit.states)
            EXPECT_EQ(st, orbit.states.front());
    }
    const auto flip = simulate_population(config(20, {1.0, 1.0, 1.0}, 3, 1));
    for (const auto& s : flip.subjects)
        EXPECT_EQ(change_frequencies(s).counts, (std::vector<int>{2, 2, 2}));
}

TEST(Simulate, FlipRateConvergesWithinThreeStandardErrors)
{
    const std::vector<double> p{0.05, 0.2, 0.5};
    const int K = 2000;
    const int T = 11;
    const auto panel = simulate_population(config(K, p, T, 7));
    const auto pop = population_frequencies(panel.subjects);
    const double pairs = static_cast<double>(K) * (T - 1);
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        const double se = std::sqrt(p[i] * (1.0 - p[i]) / pairs);
        EXPECT_NEAR(pop.rate(static_cast<int>(i)), p[i], 3.0 * se) << i;
    }
    std::size_t ones = 0;
    for (const auto& s : panel.subjects)
        ones += static_cast<std::size_t>(s.cell(0, 0));
    EXPECT_NEAR(static_cast<double>(ones) / K, 0.5, 3.0 * std::sqrt(0.25 / K));
}

TEST(Simulate, StableVariableClustersLeft)
{
    const auto panel = simulate_population(config(1000, {0.01, 0.5}, 10, 2024));
    const auto pop = population_frequencies(panel.subjects);
    int leftmost = 0;
    for (const auto& s : panel.subjects)
    {
        const auto orbit = build_orbit(s, pop);
        leftmost += orbit.states.front().order()[0] == 0 ? 1 : 0;
        if (orbit.frequencies.counts[0] == 0)
            for (const auto& st : orbit.states)
                ASSERT_EQ(st.order().position_of(0), orbit.states.front().order().position_of(0));
    }
    EXPECT_GE(leftmost, 950);
}

TEST(Presets, Parameters)
{
    const auto f3 = preset("fig3", 1);
    ASSERT_TRUE(f3);
    EXPECT_EQ(f3->subjects, 3000);
    EXPECT_EQ(f3->variables, 4);
    EXPECT_EQ(f3->timesteps, 10);
    const auto f4 = preset("fig4", 1);
    ASSERT_TRUE(f4);
    EXPECT_EQ(f4->variables, 13);
    EXPECT_NEAR(f4->flip_probabilities.front(), 0.02, 1e-12);
    EXPECT_NEAR(f4->flip_probabilities.back(), 0.5, 1e-12);
    EXPECT_FALSE(preset("fig9", 1));
    EXPECT_EQ(shared_initial_order_13().size(), 13);

    const auto g = geometric_probabilities(3, 0.02, 0.5);
    EXPECT_NEAR(g[1] * g[1], g[0] * g[2], 1e-12);
}
