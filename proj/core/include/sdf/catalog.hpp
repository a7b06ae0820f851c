#pragma once

#include <string>
#include <vector>

#include "sdf/choice.hpp"
#include "sdf/index_set.hpp"
#include "sdf/sdf.hpp"
#include "sdf/sigma.hpp"

namespace sdf {

// Named sets for the two-scenario examples built by build_simple() and
// build_variant(). Maps Omega -> {1,2} are written by their values on
// scenarios 1 and 2, so "12" is the identity.
//   c_<f>_*  first action f(w)
//   c_<k>_<g> first action k, second g(w)
//   c_*_<g>  second action g(w)
struct NamedChoice {
    std::string name;
    IndexSet outcomes;
    IndexSet expected_predecessors;  // closed form, as a node set
};

struct NamedEis {
    std::string name;
    Eis eis;
};

struct AdaptedRow {
    std::string eis;                  // name of the information structure
    std::vector<std::string> choices;  // choices listed as adapted under it
};

struct ExampleCatalog {
    std::vector<NamedChoice> choices;
    std::vector<NamedEis> eis;        // the listed structures, in table order
    Rcs reference;                    // first-action choices at the root, second-action choices below
    std::vector<AdaptedRow> table;
    // Choices that must fail adaptedness under a given structure.
    std::vector<AdaptedRow> negatives;

    const NamedChoice& choice(const std::string& name) const;
    const NamedEis& structure(const std::string& name) const;
};

// `s` must be build_simple() or build_variant() (outcome labels are used).
ExampleCatalog simple_catalog(const Sdf& s);
ExampleCatalog variant_catalog(const Sdf& s);

}  // namespace sdf
