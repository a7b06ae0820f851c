#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdf/error.hpp"
#include "sdf/index_set.hpp"
#include "sdf/order.hpp"

namespace sdf {

// A family of nonempty outcome subsets ordered by reverse inclusion.
// Construction checks shape only (nonempty, in-universe, no duplicates);
// being a decision forest is what verify_own_representation decides.
class SetForest {
public:
    SetForest() = default;
    SetForest(std::vector<std::string> outcome_labels, std::vector<IndexSet> nodes);

    std::size_t outcome_count() const { return outcomes_.size(); }
    const std::vector<std::string>& outcomes() const { return outcomes_; }
    const std::string& outcome_label(std::size_t v) const { return outcomes_.at(v); }
    std::size_t outcome_index(const std::string& label) const;

    std::size_t size() const { return nodes_.size(); }
    const std::vector<IndexSet>& nodes() const { return nodes_; }
    const IndexSet& node(std::size_t i) const { return nodes_.at(i); }
    std::optional<std::size_t> find_node(const IndexSet& outcomes) const;

    // Node i >= node j iff node(i) contains node(j).
    const Poset& poset() const { return poset_; }

    // Nodes containing outcome v (the up-set of {v} when {v} is a node).
    const IndexSet& nodes_containing(std::size_t v) const { return containing_.at(v); }

    // "{a,b}" in outcome order.
    std::string describe(const IndexSet& outcomes) const;

private:
    std::vector<std::string> outcomes_;
    std::vector<IndexSet> nodes_;
    std::unordered_map<IndexSet, std::size_t, IndexSetHash> lookup_;
    std::vector<IndexSet> containing_;
    Poset poset_;
};

Poset induced_poset(const SetForest& sf);

// Checks that v -> {x | v in x} is a bijection onto the maximal chains with
// (Pf)(y) = W(y), plus that terminal nodes are singletons.
Verdict verify_own_representation(const SetForest& sf);

// Own representation plus a single component whose root is the universe.
Verdict verify_decision_tree(const SetForest& sf);

// Outcomes are the maximal chains of p (labelled by their least element);
// node of x is the set of chains through x. Node i corresponds to element i.
SetForest representation_by_decision_paths(const Poset& p);

struct TreePart {
    IndexSet root_outcomes;               // in the forest's universe
    SetForest tree;                       // over the root's outcomes only
    std::vector<std::size_t> outcome_of;  // tree outcome -> forest outcome
    std::vector<std::size_t> node_of;     // tree node -> forest node
};

std::vector<TreePart> decompose(const SetForest& sf);

// Disjoint union over tagged outcomes "(v,k)" with k the input position.
SetForest glue(const std::vector<SetForest>& trees);

// Outcome bijection a -> b mapping the node family of a onto that of b.
// `allowed` can restrict which outcome pairs may correspond; `accept` can
// reject complete candidates so the search continues.
std::optional<std::vector<std::size_t>> find_outcome_bijection(
    const SetForest& a, const SetForest& b,
    const std::function<bool(std::size_t, std::size_t)>& allowed = {},
    const std::function<bool(const std::vector<std::size_t>&)>& accept = {});

}  // namespace sdf
