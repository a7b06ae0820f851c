#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sdf/error.hpp"
#include "sdf/index_set.hpp"
#include "sdf/sdf.hpp"
#include "sdf/time.hpp"

namespace sdf {

// Sigma-algebra on a carrier event, represented by its atoms.
class SubSigma {
public:
    SubSigma() = default;
    SubSigma(IndexSet carrier, std::vector<IndexSet> atoms);

    static SubSigma trivial(const IndexSet& carrier);
    static SubSigma discrete(const IndexSet& carrier);

    const IndexSet& carrier() const { return carrier_; }
    const std::vector<IndexSet>& atoms() const { return atoms_; }

    // E is measurable iff E lies in the carrier and is a union of atoms.
    bool contains(const IndexSet& e) const;
    // {E & d | E measurable}, a sigma-algebra on carrier & d.
    SubSigma trace(const IndexSet& d) const;
    // Every event of `other` (same carrier) is an event here.
    bool refines(const SubSigma& other) const;
    // Each atom is an event of the scenario space.
    bool within(const ScenarioSpace& space) const;

    friend bool operator==(const SubSigma&, const SubSigma&) = default;

private:
    IndexSet carrier_;
    std::vector<IndexSet> atoms_;  // sorted by least member
};

// Common refinement; carriers must agree.
SubSigma join(const SubSigma& a, const SubSigma& b);

// Sigma-algebra on `carrier` generated by the level sets of `values`
// (indexed by scenario).
SubSigma generated_by(const IndexSet& carrier, const std::vector<long>& values);

struct Eis {
    std::vector<SubSigma> per_move;  // indexed like Sdf::moves()
    friend bool operator==(const Eis&, const Eis&) = default;
};

// Throws carrier-mismatch when a carrier differs from its move's domain.
Verdict verify_eis(const Sdf& s, const Eis& e);

// Every EIS, ordered lexicographically by the per-move atom partitions
// (moves in index order, partitions in restricted-growth order).
std::vector<Eis> enumerate_eis(const Sdf& s, std::size_t cap = kDefaultWorkCap);

class Filtration {
public:
    Filtration() = default;
    // Carriers must be the full scenario set; checks monotonicity.
    Filtration(std::vector<Time> times, std::vector<SubSigma> algebras);

    const std::vector<Time>& times() const { return times_; }
    const std::vector<SubSigma>& algebras() const { return algebras_; }
    const SubSigma& at(const Time& t) const;

private:
    std::vector<Time> times_;
    std::vector<SubSigma> algebras_;
};

struct ChainTrace {
    std::vector<std::size_t> moves;       // ordered from the top of the chain down
    std::vector<SubSigma> algebras;
    Verdict trace_monotone;
    std::optional<Filtration> filtration;  // when every carrier is the whole scenario set
};

// Throws not-a-chain if the moves are not totally ordered by >=_X.
ChainTrace chain_filtration(const Sdf& s, const Eis& e, const std::vector<std::size_t>& chain);

struct ObservationFamily {
    std::vector<std::vector<long>> per_move;  // per move, a value per scenario
};

struct ConstructedEis {
    Eis eis;
    Verdict check;  // verify_eis on the result
};

// F_x = G_{t(x)} traced on D_x. `move_times` is indexed like Sdf::moves().
ConstructedEis eis_from_filtration(const Sdf& s, const std::vector<Time>& move_times, const Filtration& g);

// F_x = (sigma(Y_x' : x' >=_X x) joined with G_{t(x)}) traced on D_x.
ConstructedEis eis_from_observations(const Sdf& s, const std::vector<Time>& move_times, const Filtration& g,
                                     const ObservationFamily& y);

// All partitions of {0..n-1} as restricted-growth strings, in lexicographic order.
std::vector<std::vector<std::size_t>> set_partitions(std::size_t n);
std::size_t bell_number(std::size_t n);

}  // namespace sdf
