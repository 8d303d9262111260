// simulate.hpp -- seeded synthetic binary panels.
//
// Each variable is an independent two-state flip chain: row 0 is drawn with
// P(1) = initial_probability, and every later cell flips the previous value
// with that variable's flip probability. Subject k draws from its own
// generator seeded by (seed, k), so output does not depend on thread count.

#pragma once

#include "orbitscope/panel_io.hpp"
#include "orbitscope/state_space.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orbitscope {

struct SimulationConfig
{
    int subjects = 1;
    int variables = 1;
    int timesteps = 1;
    std::vector<double> flip_probabilities;
    double initial_probability = 0.5;
    std::uint64_t seed = 0;
};

/// Throws ValidationError on K, n or T below 1, n above kMaxVariables, a
/// flip vector of the wrong length or any probability outside [0, 1].
void validate_config(const SimulationConfig& config);

/// n values spaced geometrically from `lowest` to `highest`.
std::vector<double> geometric_probabilities(int n, double lowest, double highest);

/// "fig3": K = 3000, n = 4, T = 10. "fig4": K = 3000, n = 13, T = 10.
/// Both use geometric flip probabilities from 0.02 to 0.5.
std::optional<SimulationConfig> preset(std::string_view name, std::uint64_t seed);

/// Shared initial order used for the fixed-start 13-variable scenario.
QuestionOrder shared_initial_order_13();

/// Subjects are named s00000, s00001, ...; time labels are 0..T-1.
PanelDataset simulate_population(const SimulationConfig& config);

} // namespace orbitscope
