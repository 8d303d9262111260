// panel_io.hpp -- file formats: panel, orbit, density, occupancy, education,
// question specs and group labels.
//
// All readers are strict: every diagnostic is a ParseError carrying
// (file, line, column). Writers always emit LF line endings.

#pragma once

#include "orbitscope/education.hpp"
#include "orbitscope/orbit.hpp"
#include "orbitscope/state_space.hpp"
#include "orbitscope/transitions.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace orbitscope {

/// A coded panel: subjects sorted by id, rows sorted by time.
struct PanelDataset
{
    std::vector<QuestionSpec> specs;
    std::vector<SubjectSeries> subjects;
    std::vector<std::int64_t> time_labels; ///< sorted union over subjects

    int variables() const noexcept { return static_cast<int>(specs.size()); }
};

struct PanelReadOptions
{
    LeadingGapPolicy leading_gap = LeadingGapPolicy::reject;
};

/// Header: subject_id,t,<question columns>. Question columns are named
/// q<i> or by the spec label. Cells: 0, 1, yes, no (coded through the
/// question's polarity), or empty / NA for missing.
PanelDataset parse_panel_csv(std::istream& in, std::span<const QuestionSpec> specs,
                             const std::string& source = "<panel>",
                             PanelReadOptions options = {});

/// Same, with generic specs q0..q{n-1} inferred from the header width.
PanelDataset parse_panel_csv(std::istream& in, const std::string& source = "<panel>",
                             PanelReadOptions options = {});

/// Writes coded values (0/1, empty for missing) with q<i> headers.
void write_panel_csv(std::ostream& out, const PanelDataset& panel);

// ----------------------------------------------------------------------------

/// Header: subject_id,t,x,y,state_id,imputed.
void write_orbit_csv(std::ostream& out, std::span<const Orbit> orbits);

/// Rebuilds orbits, validating each state id against its (x, y) pair.
/// Change frequencies are recomputed from the decoded state sequence.
std::vector<Orbit> read_orbit_csv(std::istream& in, const std::string& source = "<orbits>");

/// Header: from_id,to_id,count,label. Rows follow table order, then id order.
void write_density_csv(std::ostream& out, std::span<const TransitionCounts> tables);

/// One table per label, in first-appearance order.
std::vector<TransitionCounts> read_density_csv(std::istream& in, int variables,
                                               const std::string& source = "<density>");

/// Header: state_id,t,count. Only states in `subset` (all when null).
void write_occupancy_csv(std::ostream& out, const Occupancy& occupancy,
                         const StateSubset* subset = nullptr);

// ----------------------------------------------------------------------------

/// Header: household_id,child_id,age,years_completed. Households sorted by
/// id; children keep file order.
std::vector<HouseholdRecord> parse_education_csv(std::istream& in,
                                                 const std::string& source = "<education>");

/// Lines "q<i>=<label>,<polarity>"; '#' starts a comment.
std::vector<QuestionSpec> parse_specs(std::istream& in, const std::string& source = "<specs>");
void write_specs(std::ostream& out, std::span<const QuestionSpec> specs);

/// Header: subject_id,label.
std::map<std::string, std::string> parse_groups_csv(std::istream& in,
                                                    const std::string& source = "<groups>");

} // namespace orbitscope
