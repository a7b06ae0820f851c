#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdf/error.hpp"
#include "sdf/index_set.hpp"

namespace sdf {

// Finite partial order stored extensionally: geq(x, y) holds iff x >= y.
// Elements are 0..size()-1 with display labels.
class Poset {
public:
    Poset() = default;
    // Validates reflexivity, antisymmetry and transitivity.
    Poset(std::vector<std::string> labels, std::vector<std::vector<bool>> geq);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t x) const;
    std::size_t index_of(const std::string& label) const;

    bool geq(std::size_t x, std::size_t y) const { return up_[y].test(x); }
    bool gt(std::size_t x, std::size_t y) const { return x != y && geq(x, y); }
    bool comparable(std::size_t x, std::size_t y) const { return geq(x, y) || geq(y, x); }

    // {y | y >= x} and {y | x >= y}.
    const IndexSet& up(std::size_t x) const { return up_[x]; }
    const IndexSet& down(std::size_t x) const { return down_[x]; }

private:
    std::vector<std::string> labels_;
    std::vector<IndexSet> up_;
    std::vector<IndexSet> down_;
};

struct ChainSet {
    std::vector<IndexSet> chains;  // sorted
    bool maximal = false;
};

IndexSet up_set(const Poset& p, std::size_t x);
IndexSet down_set(const Poset& p, std::size_t x);

bool is_chain(const Poset& p, const IndexSet& s);
bool is_forest(const Poset& p);
bool is_rooted_forest(const Poset& p);

IndexSet maximal_elements(const Poset& p);
IndexSet minimal_elements(const Poset& p);

// Blocks sorted by smallest member. Requires a forest.
std::vector<IndexSet> connected_components(const Poset& p);

// All maximal chains. Forests use the terminal up-sets; other posets go
// through maximal-clique enumeration of the comparability graph.
ChainSet maximal_chains(const Poset& p, std::size_t cap = kDefaultWorkCap);
// The clique route regardless of shape (kept separate for cross-checks).
ChainSet maximal_chains_general(const Poset& p, std::size_t cap = kDefaultWorkCap);

bool separates(const Poset& p, std::size_t x, std::size_t y, std::size_t cap = kDefaultWorkCap);

// First pair (in index order) not separated by any maximal chain.
std::optional<std::pair<std::size_t, std::size_t>> unseparated_pair(
    const Poset& p, std::size_t cap = kDefaultWorkCap);

// Rooted forest in which every pair of distinct elements is separated.
bool is_decision_forest(const Poset& p, std::size_t cap = kDefaultWorkCap);

// Order isomorphism search, returns the map p -> q.
std::optional<std::vector<std::size_t>> find_order_isomorphism(const Poset& p, const Poset& q);

}  // namespace sdf
