#include "orbitscope/simulate.hpp"

#include "orbitscope/error.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace orbitscope {

namespace {

// 53 random mantissa bits; unlike std::uniform_real_distribution the result
// is identical across standard library implementations.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 subject_stream(std::uint64_t seed, std::uint64_t subject)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(subject),
                      static_cast<std::uint32_t>(subject >> 32)};
    return std::mt19937_64(seq);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

} // namespace

void validate_config(const SimulationConfig& config)
{
    if (config.subjects < 1 || config.timesteps < 1)
        throw ValidationError("simulation needs at least one subject and one timestep");
    if (config.variables < 1 || config.variables > kMaxVariables)
        throw ValidationError("simulation variable count must be between 1 and " +
                              std::to_string(kMaxVariables));
    if (config.flip_probabilities.size() != static_cast<std::size_t>(config.variables))
        throw ValidationError("expected " + std::to_string(config.variables) +
                              " flip probabilities, got " +
                              std::to_string(config.flip_probabilities.size()));
    for (double p : config.flip_probabilities)
        if (!is_probability(p))
            throw ValidationError("flip probability " + std::to_string(p) +
                                  " outside [0, 1]");
    if (!is_probability(config.initial_probability))
        throw ValidationError("initial probability outside [0, 1]");
}

std::vector<double> geometric_probabilities(int n, double lowest, double highest)
{
    if (n < 1 || !(lowest > 0.0) || !is_probability(highest) || lowest > highest)
        throw ValidationError("geometric probabilities need n >= 1 and 0 < lowest <= highest <= 1");
    std::vector<double> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        p[static_cast<std::size_t>(i)] =
            n == 1 ? lowest : lowest * std::pow(highest / lowest, double(i) / double(n - 1));
    return p;
}

std::optional<SimulationConfig> preset(std::string_view name, std::uint64_t seed)
{
    SimulationConfig c;
    c.seed = seed;
    c.subjects = 3000;
    c.timesteps = 10;
    if (name == "fig3")
        c.variables = 4;
    else if (name == "fig4")
        c.variables = 13;
    else
        return std::nullopt;
    c.flip_probabilities = geometric_probabilities(c.variables, 0.02, 0.5);
    return c;
}

QuestionOrder shared_initial_order_13()
{
    return QuestionOrder::parse("2:1:0:3:6:9:7:8:5:4:10:12:11");
}

PanelDataset simulate_population(const SimulationConfig& config)
{
    validate_config(config);
    const auto n = static_cast<std::size_t>(config.variables);
    const auto T = static_cast<std::size_t>(config.timesteps);

    PanelDataset panel;
    panel.specs = generic_question_specs(config.variables);
    for (std::size_t t = 0; t < T; ++t)
        panel.time_labels.push_back(static_cast<std::int64_t>(t));
    panel.subjects.reserve(static_cast<std::size_t>(config.subjects));

    for (int k = 0; k < config.subjects; ++k)
    {
        auto rng = subject_stream(config.seed, static_cast<std::uint64_t>(k));
        std::vector<Cell> cells(T * n);
        for (std::size_t i = 0; i < n; ++i)
            cells[i] = unit_draw(rng) < config.initial_probability ? 1 : 0;
        for (std::size_t t = 1; t < T; ++t)
            for (std::size_t i = 0; i < n; ++i)
            {
                const Cell prev = cells[(t - 1) * n + i];
                const bool flip = unit_draw(rng) < config.flip_probabilities[i];
                cells[t * n + i] = flip ? static_cast<Cell>(1 - prev) : prev;
            }
        char name[32];
        std::snprintf(name, sizeof name, "s%05d", k);
        panel.subjects.emplace_back(name, panel.time_labels, config.variables,
                                    std::move(cells));
    }
    return panel;
}

} // namespace orbitscope
