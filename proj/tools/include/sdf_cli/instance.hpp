#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdf/action_path.hpp"
#include "sdf/catalog.hpp"
#include "sdf/sdf.hpp"
#include "sdf/sigma.hpp"

namespace sdf::cli {

struct WindowEntry {
    std::string name;
    WindowChoiceSpec spec;
    std::optional<bool> expect_valid;  // expected outcome of C0-C2
};

struct AgentChoiceEntry {
    std::string name;
    std::size_t agent = 0;
    Time t;
    HistorySet history;
    AgentMap g;
};

struct FiltrationEntry {
    std::vector<Time> move_times;  // indexed like the random moves
    Filtration g;
    std::optional<ObservationFamily> observations;
};

// Expected adaptedness of listed choices under a named structure.
struct AdaptedExpectation {
    std::string eis;
    std::vector<std::string> choices;
    bool expect = true;
};

struct Instance {
    std::string kind;  // explicit-sdf, action-path or builtin
    std::string name;

    std::optional<Sdf> sdf;
    std::optional<PathOutcomes> po;
    std::optional<ActionPathSdf> ap;  // for action-path documents sdf is ap->sdf
    std::string build_error;          // why sdf is missing

    std::vector<NamedEis> eis;
    std::optional<Rcs> rcs;
    std::vector<NamedChoice> choices;
    std::vector<AdaptedExpectation> adapted;
    std::vector<WindowEntry> windows;
    std::vector<AgentChoiceEntry> agent_choices;
    std::optional<FiltrationEntry> filtration;

    // Builtins only.
    std::optional<ExampleCatalog> catalog;
    std::optional<Sdf> reference;  // direct construction the encoding should match
};

// Throws syntax-error (with line and column), schema-error and
// unresolved-reference (with a JSON pointer to the offending value).
Instance parse_instance(std::string_view text);

// simple, variant, timing, upandout. Throws unknown-element.
Instance load_builtin(const std::string& name);

const std::vector<std::string>& builtin_names();

}  // namespace sdf::cli
