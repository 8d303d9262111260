#include "orbitscope/education.hpp"
#include "orbitscope/error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace orbitscope;

namespace {

// Direct transcription of the two rules: age gate, then years against
// (f - 1) + (age - 7 - f).
bool defaulting_oracle(int age, int years, int f)
{
    if (age < 7 + f)
        return false;
    const int r = age - 7 - f;
    return years <= (f - 1) + r;
}

} // namespace

TEST(ClassifyChild, Examples)
{
    EXPECT_EQ(classify_child({"a", 10, 0}, 4), ChildStatus::non_defaulting);
    EXPECT_EQ(classify_child({"b", 16, 9}, 4), ChildStatus::non_defaulting);
    EXPECT_EQ(classify_child({"c", 16, 8}, 4), ChildStatus::defaulting);
    EXPECT_EQ(classify_child({"d", 11, 2}, 4), ChildStatus::defaulting);
}

TEST(ClassifyChild, MatchesRulesEverywhere)
{
    for (int f = kMinFailureYears; f <= kMaxFailureYears; ++f)
        for (int age = 0; age <= 20; ++age)
            for (int years = 0; years <= age; ++years)
                EXPECT_EQ(classify_child({"x", age, years}, f) == ChildStatus::defaulting,
                          defaulting_oracle(age, years, f))
                    << age << ' ' << years << ' ' << f;
}

TEST(ClassifyChild, Validation)
{
    EXPECT_THROW(classify_child({"x", 10, 11}, 4), ValidationError);
    EXPECT_THROW(classify_child({"x", -1, 0}, 4), ValidationError);
    EXPECT_THROW(classify_child({"x", 10, 1}, 1), ValidationError);
}

TEST(ClassifyHousehold, Examples)
{
    EXPECT_FALSE(classify_household({"h", {{"a", 10, 0}, {"b", 16, 9}}}).is_defaulting);
    const auto one = classify_household(
        {"h", {{"a", 10, 0}, {"b", 16, 9}, {"c", 9, 2}, {"d", 8, 1}, {"e", 16, 8}}});
    EXPECT_TRUE(one.is_defaulting);
    EXPECT_EQ(one.defaulting_children, 1);
    EXPECT_TRUE(classify_household({"h", {{"a", 16, 8}, {"b", 16, 9}}}, 4).is_defaulting);
    EXPECT_THROW(classify_household({"h", {}}), ValidationError);
}

TEST(DefaultDistribution, Examples)
{
    const std::vector<HouseholdRecord> young{{"h", {{"a", 8, 0}, {"b", 5, 0}}}};
    for (const auto& [f, fraction] : default_distribution(young))
        EXPECT_EQ(fraction, 0.0) << f;

    const std::vector<HouseholdRecord> one{{"h", {{"a", 16, 8}}}};
    const auto dist = default_distribution(one);
    EXPECT_EQ(dist.size(), 8u);
    for (const auto& [f, fraction] : dist)
        EXPECT_EQ(fraction, 1.0) << f;

    EXPECT_THROW(default_distribution(one, 1, 9), ValidationError);
    EXPECT_THROW(default_distribution(one, 2, 10), ValidationError);
}

TEST(DefaultDistribution, NonIncreasingInF)
{
    std::mt19937_64 rng(23);
    for (int cohort = 0; cohort < 200; ++cohort)
    {
        std::vector<HouseholdRecord> households;
        for (int h = 0; h < 30; ++h)
        {
            HouseholdRecord rec{"h" + std::to_string(h), {}};
            const int children = 1 + static_cast<int>(rng() % 4);
            for (int c = 0; c < children; ++c)
            {
                const int age = 5 + static_cast<int>(rng() % 12);
                rec.children.push_back(
                    {"c", age, static_cast<int>(rng() % static_cast<std::uint64_t>(age - 4))});
            }
            households.push_back(rec);
        }
        const auto dist = default_distribution(households);
        double previous = 1.0;
        for (const auto& [f, fraction] : dist)
        {
            EXPECT_LE(fraction, previous);
            previous = fraction;
        }
    }
}

TEST(RangeWarnings, FlagsOutOfRangeRecords)
{
    EXPECT_TRUE(range_warnings({"a", 14, 3}, 4).empty());
    EXPECT_FALSE(range_warnings({"a", 19, 3}, 4).empty());
}
