#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sdf_cli/instance.hpp"

namespace sdf::cli {

struct RunOptions {
    std::size_t max_x = VerifyOptions{}.max_x;
    std::size_t max_time_subsets = ApwOptions{}.max_time_subsets;
};

struct CheckRecord {
    std::string id;  // command as given, e.g. "predecessors=c_1_11"
    bool ok = true;
    bool partial = false;
    std::string witness;             // first failure
    std::vector<std::string> lines;  // human-readable detail
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    double millis = 0;
};

struct Report {
    std::string kind;
    std::string name;
    std::vector<CheckRecord> checks;
    bool ok() const;
};

// Commands: verify, ttree, enumerate-eis, predecessors[=choice],
// classify[=choice], adapted[=choice], apw, apc[=agent], measurability,
// eis, rcs, window, filtration, roundtrip. Throws unknown-command, and lets
// size-cap-exceeded through.
Report run(const Instance& in, const std::vector<std::string>& commands, const RunOptions& options = {});

// What `sdf verify <file>` runs when no checks are named.
std::vector<std::string> default_commands(const Instance& in);

const std::vector<std::string>& command_names();

std::string render_text(const Report& r);
// Timings are left out unless asked for, so equal inputs give equal bytes.
std::string render_json(const Report& r, bool timing = false);

}  // namespace sdf::cli
