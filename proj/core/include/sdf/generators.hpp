#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sdf/action_path.hpp"
#include "sdf/sdf.hpp"

namespace sdf {

// Every path of the axis in every scenario.
PathOutcomes product_outcomes(const ScenarioSpace& space, const TimeAxis& time, const ActionSpace& actions);

// Agents each act in {0,1}; outcomes are the componentwise decreasing paths.
PathOutcomes timing_outcomes(const ScenarioSpace& space, const TimeAxis& time, const std::vector<std::string>& agents);

// Decreasing {0,1} paths of one agent; a path may drop to 0 at time s only
// while the price has stayed below 2 up to and including s. price[w][k] is
// the price in scenario w at time index k and must start at 1 and stay
// positive. Between grid points nothing is assumed about the price.
PathOutcomes up_and_out_outcomes(const ScenarioSpace& space, const TimeAxis& time,
                                 const std::vector<std::vector<Time>>& price);

// The two-scenario, two-period example as paths over {1,2} and its variant
// over {0,1,2} where 0 stands for inaction after the shortened branch.
PathOutcomes simple_action_path();
PathOutcomes variant_action_path();

// Small fixed instances used by the builtins and the acceptance checks.
PathOutcomes timing_example();     // two agents, times {0,1,2}, two scenarios
PathOutcomes up_and_out_example();  // prices (1,5/2,3) and (1,3/2,1/2) on {0,1,2}
PathOutcomes product_example();    // one agent with {0,1}, times {0,1}, two scenarios

// Seed from SDF_SEED, falling back to `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = 20240601);

struct RandomOutcomeOptions {
    std::size_t max_scenarios = 3;
    std::size_t max_times = 3;
    std::size_t max_actions = 3;
    double keep_probability = 0.6;  // per candidate path
};

// Random partition of the scenarios and a random nonempty path set per
// scenario. The result need not satisfy any assumption.
PathOutcomes random_path_outcomes(std::mt19937_64& rng, const RandomOutcomeOptions& options = {});

// Random family of at most `max_sets` distinct nonempty subsets of a
// universe of at most `max_universe` elements, together with that size.
struct SetFamily {
    std::size_t universe = 0;
    std::vector<IndexSet> sets;
};
SetFamily random_set_family(std::mt19937_64& rng, std::size_t max_universe = 5, std::size_t max_sets = 10);

}  // namespace sdf
