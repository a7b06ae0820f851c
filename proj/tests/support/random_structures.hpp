#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "sdf/generators.hpp"
#include "sdf/order.hpp"
#include "sdf/set_forest.hpp"

namespace fixture {

// Shared generator; SDF_SEED overrides the default seed.
std::mt19937_64& rng();

// Random partial order on n elements: a random DAG, transitively closed.
sdf::Poset random_poset(std::mt19937_64& g, std::size_t n, double density = 0.3);

// Random rooted forest on n elements (each element picks an earlier parent
// or becomes a root).
sdf::Poset random_forest(std::mt19937_64& g, std::size_t n);

// Forest nodes over {0..n-1} labelled "v0", "v1", ...
sdf::SetForest set_forest(std::size_t n, const std::vector<std::vector<std::size_t>>& nodes);

}  // namespace fixture
