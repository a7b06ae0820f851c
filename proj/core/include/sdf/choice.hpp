#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sdf/error.hpp"
#include "sdf/index_set.hpp"
#include "sdf/sdf.hpp"
#include "sdf/sigma.hpp"

namespace sdf {

// Choices are outcome sets (over the forest's outcomes). Node sets are
// index sets over the forest's nodes; move sets over Sdf::moves().

// Nodes contained in c.
IndexSet down_set(const Sdf& s, const IndexSet& c);

// Immediate predecessors by the literal definition: nodes x for which some
// y below c has up(x) = up(y) minus the nodes below c.
IndexSet predecessors(const Sdf& s, const IndexSet& c);

// Nonempty and the union of the nodes it contains.
bool is_choice(const Sdf& s, const IndexSet& c);

// Scenarios w in the domain with x(w) in `nodes`.
IndexSet preimage(const Sdf& s, std::size_t move, const IndexSet& nodes);

struct Classification {
    bool non_redundant = false;
    bool complete = false;
    IndexSet available_at;  // moves whose whole domain maps into P(c)
    std::string witness;    // first redundancy / incompleteness found
};

// Throws not-a-choice.
Classification classify(const Sdf& s, const IndexSet& c);

// P(c & W_A) = P(c) & F_A. Throws not-an-event for A outside the algebra.
Verdict restrict_check(const Sdf& s, const IndexSet& c, const IndexSet& event);

struct Rcs {
    std::vector<std::vector<IndexSet>> per_move;  // indexed like Sdf::moves()
};

Verdict verify_rcs(const Sdf& s, const Rcs& r);

struct MoveVerdict {
    std::size_t move = 0;
    Verdict verdict;
};

struct AdaptedResult {
    Verdict verdict;
    std::vector<MoveVerdict> per_move;  // one entry per move c is available at
};

// For each move c is available at and each reference choice there, the
// preimage of P(c & c') must be an event of the move's sigma-algebra.
AdaptedResult is_adapted(const Sdf& s, const Eis& e, const Rcs& r, const IndexSet& c);

}  // namespace sdf
