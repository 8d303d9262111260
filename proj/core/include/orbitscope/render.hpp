// render.hpp -- deterministic, self-contained SVG 1.1 figures.
//
// Every drawn element carries a class and data-* attributes so the output
// can be checked structurally:
//   state space    circle.state, line.transition, circle.self-loop
//   time expanded  polyline.orbit (data-ids)
//   density graph  g.node, path.edge, text.edge-label
//   occupancy      polyline.series (data-state, data-values)

#pragma once

#include "orbitscope/orbit.hpp"
#include "orbitscope/transitions.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace orbitscope {

enum class AxisLabelMode
{
    ids,   ///< label visited states by id
    pairs, ///< label axes by answer strings and orders only
};

struct FigureConfig
{
    int width = 800;
    int height = 600;
    double dot_radius = 4.0;
    /// Edge opacity runs linearly from this value (weakest edge) to 1
    /// (strongest edge).
    double min_edge_opacity = 0.15;
    /// Restricts what is drawn; required for n > 5 in grid-based figures.
    std::optional<StateSubset> subset;
    AxisLabelMode axis_labels = AxisLabelMode::pairs;
    /// Density graph edges with a smaller count are omitted.
    std::uint64_t min_edge_count = 0;
    std::string title;
};

/// Throws ValidationError on non-positive sizes or opacity outside (0, 1].
void validate_figure_config(const FigureConfig& config);

/// Opacity in (0, 1] for an edge of `count` when the heaviest has `max_count`.
double edge_opacity(const FigureConfig& config, std::uint64_t count, std::uint64_t max_count);

/// x: answer strings by ascending value, left to right. y: orders by
/// descending-lex rank, bottom to top. One dot per visited state, one line
/// per distinct observed transition, a ring per self-transition.
std::string render_state_space(std::span<const Orbit> orbits, const FigureConfig& config);

/// x: time; y: state id. One polyline per orbit.
std::string render_time_expanded(std::span<const Orbit> orbits, const FigureConfig& config);

/// Nodes are the subset's states on a circle; edges are labelled with their
/// counts, self-transitions with "id".
std::string render_density_graph(const TransitionCounts& counts, const StateSubset& subset,
                                 const FigureConfig& config);

/// One polyline per state with a legend; y = orbits in that state.
std::string render_occupancy(const Occupancy& occupancy, const FigureConfig& config);

} // namespace orbitscope
