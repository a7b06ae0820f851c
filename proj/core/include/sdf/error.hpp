#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdf {

// Default bound on enumeration work (chains visited, partitions tried, ...).
inline constexpr std::size_t kDefaultWorkCap = std::size_t{1} << 16;

enum class ErrorKind {
    unknown_element,
    invalid_argument,
    not_a_forest,
    size_cap_exceeded,
    duplicate_node,
    not_a_decision_forest,
    empty_list,
    fibre_mismatch,
    roots_not_moves,
    carrier_mismatch,
    not_a_chain,
    time_index_mismatch,
    apw0_violation,
    assumption_failure,
    no_factorization,
    precondition_violation,
    not_a_choice,
    not_a_move,
    not_an_event,
    syntax_error,
    schema_error,
    unresolved_reference,
    unknown_command,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Outcome of a check. Failures carry a human-readable witness naming the
// offending elements; `partial` marks verdicts produced by an incomplete
// search mode.
struct Verdict {
    bool ok = true;
    bool partial = false;
    std::string witness;
    std::vector<std::string> notes;

    static Verdict pass() { return {}; }
    static Verdict fail(std::string witness) {
        Verdict v;
        v.ok = false;
        v.witness = std::move(witness);
        return v;
    }

    explicit operator bool() const { return ok; }
};

}  // namespace sdf
