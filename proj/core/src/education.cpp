#include "orbitscope/education.hpp"

#include "orbitscope/error.hpp"

namespace orbitscope {

void validate_child(const ChildRecord& child)
{
    if (child.age < 0)
        throw ValidationError("child '" + child.child_id + "' has negative age");
    if (child.years_completed < 0 || child.years_completed > child.age)
        throw ValidationError("child '" + child.child_id + "' has " +
                              std::to_string(child.years_completed) +
                              " completed years at age " + std::to_string(child.age));
}

const char* to_string(ChildStatus status)
{
    return status == ChildStatus::defaulting ? "defaulting" : "non-defaulting";
}

ChildStatus classify_child(const ChildRecord& child, int f)
{
    if (f < kMinFailureYears)
        throw ValidationError("failure count f must be at least 2, got " + std::to_string(f));
    validate_child(child);

    if (child.age < kSchoolEntryAge + f)
        return ChildStatus::non_defaulting;
    const int r = child.age - kSchoolEntryAge - f;
    return child.years_completed <= (f - 1) + r ? ChildStatus::defaulting
                                                : ChildStatus::non_defaulting;
}

HouseholdEducation classify_household(const HouseholdRecord& household, int f)
{
    if (household.children.empty())
        throw ValidationError("household '" + household.household_id + "' has no children");
    HouseholdEducation out{household.household_id, household.children, false, 0};
    for (const auto& child : household.children)
        if (classify_child(child, f) == ChildStatus::defaulting)
            ++out.defaulting_children;
    out.is_defaulting = out.defaulting_children > 0;
    return out;
}

std::map<int, double> default_distribution(std::span<const HouseholdRecord> households,
                                           int f_min, int f_max)
{
    if (f_min < kMinFailureYears || f_max > kMaxFailureYears || f_min > f_max)
        throw ValidationError("failure range must lie within [2, 9]");
    std::map<int, double> fractions;
    for (int f = f_min; f <= f_max; ++f)
    {
        std::size_t defaulting = 0;
        for (const auto& h : households)
            if (classify_household(h, f).is_defaulting)
                ++defaulting;
        fractions[f] = households.empty() ? 0.0
                                          : static_cast<double>(defaulting) /
                                                static_cast<double>(households.size());
    }
    return fractions;
}

std::vector<std::string> range_warnings(const ChildRecord& child, int f)
{
    std::vector<std::string> warnings;
    if (child.age > kMaxSurveyAge)
        warnings.push_back("child '" + child.child_id + "' is " + std::to_string(child.age) +
                           ", above the school-going range 7-16");
    if (child.age >= kSchoolEntryAge + f)
    {
        const int r = child.age - kSchoolEntryAge - f;
        if (r < f - 2 || r > 7)
            warnings.push_back("child '" + child.child_id + "' has r = " + std::to_string(r) +
                               " outside [" + std::to_string(f - 2) + ", 7] at f = " +
                               std::to_string(f));
    }
    return warnings;
}

} // namespace orbitscope
