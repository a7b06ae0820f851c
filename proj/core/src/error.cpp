#include "sdf/error.hpp"

namespace sdf {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::unknown_element: return "unknown-element";
        case ErrorKind::invalid_argument: return "invalid-argument";
        case ErrorKind::not_a_forest: return "not-a-forest";
        case ErrorKind::size_cap_exceeded: return "size-cap-exceeded";
        case ErrorKind::duplicate_node: return "duplicate-node";
        case ErrorKind::not_a_decision_forest: return "not-a-decision-forest";
        case ErrorKind::empty_list: return "empty-list";
        case ErrorKind::fibre_mismatch: return "fibre-mismatch";
        case ErrorKind::roots_not_moves: return "roots-not-moves";
        case ErrorKind::carrier_mismatch: return "carrier-mismatch";
        case ErrorKind::not_a_chain: return "not-a-chain";
        case ErrorKind::time_index_mismatch: return "time-index-mismatch";
        case ErrorKind::apw0_violation: return "apw0-violation";
        case ErrorKind::assumption_failure: return "assumption-failure";
        case ErrorKind::no_factorization: return "no-factorization";
        case ErrorKind::precondition_violation: return "precondition-violation";
        case ErrorKind::not_a_choice: return "not-a-choice";
        case ErrorKind::not_a_move: return "not-a-move";
        case ErrorKind::not_an_event: return "not-an-event";
        case ErrorKind::syntax_error: return "syntax-error";
        case ErrorKind::schema_error: return "schema-error";
        case ErrorKind::unresolved_reference: return "unresolved-reference";
        case ErrorKind::unknown_command: return "unknown-command";
    }
    return "unknown";
}

}  // namespace sdf
