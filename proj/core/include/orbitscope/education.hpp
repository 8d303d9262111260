// education.hpp -- child and household educational default classification.
//
// A child of age a who has failed f school years is only judged once
// a >= 7 + f. With r = a - 7 - f the child defaults iff the completed years
// y satisfy y <= (f - 1) + r. Younger children never default.

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace orbitscope {

inline constexpr int kSchoolEntryAge = 7;
inline constexpr int kMinFailureYears = 2;
inline constexpr int kMaxFailureYears = 9;
inline constexpr int kHouseholdFailureYears = 4;
inline constexpr int kMaxSurveyAge = 16;

struct ChildRecord
{
    std::string child_id;
    int age = 0;
    int years_completed = 0;
};

/// Throws ValidationError unless 0 <= years_completed <= age.
void validate_child(const ChildRecord& child);

enum class ChildStatus
{
    non_defaulting,
    defaulting,
};

const char* to_string(ChildStatus status);

/// Throws ValidationError if f < 2 or the record is invalid.
ChildStatus classify_child(const ChildRecord& child, int f);

/// A household's children before classification.
struct HouseholdRecord
{
    std::string household_id;
    std::vector<ChildRecord> children;
};

struct HouseholdEducation
{
    std::string household_id;
    std::vector<ChildRecord> children;
    bool is_defaulting = false;
    int defaulting_children = 0;
};

/// Defaulting iff at least one child defaults at `f`. Throws ValidationError
/// on an empty child list.
HouseholdEducation classify_household(const HouseholdRecord& household,
                                      int f = kHouseholdFailureYears);

/// Fraction of households defaulting at each f in [f_min, f_max], which must
/// lie within [2, 9]. An empty population maps every f to 0.
std::map<int, double> default_distribution(std::span<const HouseholdRecord> households,
                                           int f_min = kMinFailureYears,
                                           int f_max = kMaxFailureYears);

/// Non-fatal observations about a record: ages above the survey range and
/// r = a - 7 - f outside [f - 2, 7] for judged children.
std::vector<std::string> range_warnings(const ChildRecord& child, int f);

} // namespace orbitscope
