#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sdf/error.hpp"
#include "sdf/index_set.hpp"
#include "sdf/order.hpp"
#include "sdf/set_forest.hpp"

namespace sdf {

// Finite scenario set with the sigma-algebra generated by a partition.
class ScenarioSpace {
public:
    ScenarioSpace() = default;
    ScenarioSpace(std::vector<std::string> labels, std::vector<IndexSet> atoms);

    static ScenarioSpace discrete(std::vector<std::string> labels);
    static ScenarioSpace trivial(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t w) const { return labels_.at(w); }
    std::size_t index_of(const std::string& label) const;

    const std::vector<IndexSet>& atoms() const { return atoms_; }
    std::size_t atom_of(std::size_t w) const { return atom_of_.at(w); }
    IndexSet all() const { return IndexSet::full(size()); }
    IndexSet none() const { return IndexSet(size()); }

    // E is an event iff it is a union of atoms.
    bool is_event(const IndexSet& e) const;
    // Every event, ordered by index set order (2^#atoms of them).
    std::vector<IndexSet> events() const;

    std::string describe(const IndexSet& e) const;

private:
    std::vector<std::string> labels_;
    std::vector<IndexSet> atoms_;
    std::vector<std::size_t> atom_of_;
};

// Section of moves over an event: assignment[w] is a node index for w in
// the domain and empty elsewhere.
struct RandomMove {
    std::string name;
    IndexSet domain;
    std::vector<std::optional<std::size_t>> assignment;

    std::size_t at(std::size_t w) const;
    bool same_map(const RandomMove& other) const {
        return domain == other.domain && assignment == other.assignment;
    }
};

class Sdf {
public:
    Sdf() = default;
    // Shape checks only; the axioms are checked by verify_sdf.
    Sdf(SetForest forest, ScenarioSpace space, std::vector<std::size_t> projection,
        std::vector<RandomMove> moves);

    const SetForest& forest() const { return forest_; }
    const ScenarioSpace& space() const { return space_; }
    const std::vector<std::size_t>& projection() const { return projection_; }
    std::size_t scenario_of_node(std::size_t x) const { return projection_.at(x); }
    const std::vector<RandomMove>& moves() const { return moves_; }
    const RandomMove& move(std::size_t i) const { return moves_.at(i); }
    std::size_t move_count() const { return moves_.size(); }
    std::size_t move_index(const std::string& name) const;

    const Poset& poset() const { return forest_.poset(); }
    bool is_terminal(std::size_t x) const { return poset().down(x).count() == 1; }
    bool is_move_node(std::size_t x) const { return !is_terminal(x); }
    bool is_root(std::size_t x) const { return poset().up(x).count() == 1; }

    // Scenario of the nodes containing outcome w (taken from any of them).
    std::optional<std::size_t> scenario_of_outcome(std::size_t w) const { return outcome_scenario_.at(w); }
    // W_A: outcomes whose scenario lies in A.
    IndexSet outcomes_in(const IndexSet& event) const;
    // F_A: nodes whose scenario lies in A.
    IndexSet nodes_in(const IndexSet& event) const;
    // Image of a random move as a node set.
    IndexSet image(std::size_t move) const;

    // x_i >=_X x_j: D_i contains D_j and x_i(w) contains x_j(w) on D_j.
    bool move_geq(std::size_t i, std::size_t j) const;

    std::string describe_node(std::size_t x) const { return forest_.describe(forest_.node(x)); }

private:
    SetForest forest_;
    ScenarioSpace space_;
    std::vector<std::size_t> projection_;
    std::vector<RandomMove> moves_;
    std::vector<std::optional<std::size_t>> outcome_scenario_;
};

struct AxiomResult {
    std::string id;
    Verdict verdict;
};

struct SdfVerdict {
    std::vector<AxiomResult> axioms;  // 1, 2, 3a, 3b, 3c, 3d, 3e, 3f in order

    bool ok() const;
    bool partial() const;
    const Verdict& axiom(const std::string& id) const;
};

struct VerifyOptions {
    std::size_t max_x = 6;                    // exhaustive axiom-3e mode up to this many moves
    std::size_t work_cap = kDefaultWorkCap;   // partitions tried in exhaustive mode
};

SdfVerdict verify_sdf(const Sdf& s, const VerifyOptions& options = {});

// Axioms 3a-3d for an arbitrary candidate family of sections (used by the
// axiom-3e oracle on merged families). Returns the first failure.
AxiomResult check_section_axioms(const Sdf& s, const std::vector<RandomMove>& family);

// T_w per scenario, after checking components equal the fibres of pi.
std::vector<IndexSet> fibres(const Sdf& s);

struct TTreeEntry {
    std::optional<std::size_t> move;  // random move, or
    std::size_t scenario = 0;         // random terminal node (scenario, outcome)
    std::size_t outcome = 0;
};

struct TTree {
    std::vector<TTreeEntry> entries;  // moves first, in move order
    Poset order;
};

TTree tmap_order(const Sdf& s);

Verdict check_evaluation_bijection(const Sdf& s);

// Throws roots-not-moves when some root of F is terminal.
Verdict check_derived_tree(const Sdf& s);

// Removes scenarios whose tree is a lone terminal node (the reduction that
// makes every root a move); the algebra is traced on the kept scenarios.
Sdf drop_moveless_scenarios(const Sdf& s);

struct SdfIsomorphism {
    std::vector<std::size_t> scenario_map;
    std::vector<std::size_t> outcome_map;
    std::vector<std::size_t> node_map;
    std::vector<std::size_t> move_map;
};

// Bijections on scenarios, outcomes, nodes and random moves commuting with
// projection, inclusion and the random moves.
std::optional<SdfIsomorphism> find_sdf_isomorphism(const Sdf& a, const Sdf& b);

// The two-scenario, two-period example and its variant with a shortened
// branch. Outcomes are labelled "(w,k,m)" (and "(1,2)" in the variant).
Sdf build_simple();
Sdf build_variant();

}  // namespace sdf
