#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdf/choice.hpp"
#include "sdf/error.hpp"
#include "sdf/index_set.hpp"
#include "sdf/sdf.hpp"
#include "sdf/sigma.hpp"
#include "sdf/time.hpp"

namespace sdf {

// Finite time axis containing 0, kept sorted. Time index k is the position
// of a point; the history before point k is a prefix of length k.
class TimeAxis {
public:
    TimeAxis() = default;
    explicit TimeAxis(std::vector<Time> points);

    std::size_t size() const { return points_.size(); }
    const std::vector<Time>& points() const { return points_; }
    const Time& at(std::size_t k) const { return points_.at(k); }
    // Throws time-index-mismatch for points off the axis.
    std::size_t index_of(const Time& t) const;
    bool contains(const Time& t) const;

private:
    std::vector<Time> points_;
};

// Per-agent coordinates of each action.
struct Factorization {
    std::vector<std::string> agents;
    std::vector<std::vector<std::string>> agent_actions;
    std::vector<std::vector<std::uint32_t>> coords;  // coords[a][i]
};

class ActionSpace {
public:
    ActionSpace() = default;
    explicit ActionSpace(std::vector<std::string> labels, std::optional<Factorization> factorization = {});

    // Full product of the agents' action sets, lexicographic in agent order,
    // labels joined by '|'.
    static ActionSpace product(std::vector<std::string> agents, std::vector<std::vector<std::string>> agent_actions);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t a) const { return labels_.at(a); }
    std::size_t index_of(const std::string& label) const;

    bool has_factorization() const { return factorization_.has_value(); }
    // Throws no-factorization.
    const Factorization& factorization() const;
    std::size_t agent_count() const { return factorization_ ? factorization_->agents.size() : 0; }
    std::size_t agent_index(const std::string& name) const;
    std::size_t agent_action_count(std::size_t i) const;
    std::uint32_t project(std::size_t i, std::size_t a) const;

private:
    std::vector<std::string> labels_;
    std::optional<Factorization> factorization_;
};

// The factorization is a bijection onto the product of the agents' sets.
Verdict check_factorization(const ActionSpace& a);

using Path = std::vector<std::uint32_t>;    // action index per time index
using Prefix = std::vector<std::uint32_t>;  // restriction to the first k time points

struct PathOutcome {
    std::size_t scenario = 0;
    Path path;
    friend bool operator==(const PathOutcome&, const PathOutcome&) = default;
};

class PathOutcomes {
public:
    PathOutcomes() = default;
    // Throws invalid-argument on malformed paths, duplicates, or a scenario
    // without any path.
    PathOutcomes(TimeAxis time, ActionSpace actions, ScenarioSpace space, std::vector<PathOutcome> paths);

    const TimeAxis& time() const { return time_; }
    const ActionSpace& actions() const { return actions_; }
    const ScenarioSpace& space() const { return space_; }
    const std::vector<PathOutcome>& paths() const { return paths_; }
    std::size_t size() const { return paths_.size(); }
    const PathOutcome& outcome(std::size_t w) const { return paths_.at(w); }
    Prefix prefix(std::size_t w, std::size_t k) const;
    // Distinct length-k prefixes of W, sorted.
    std::vector<Prefix> realized_prefixes(std::size_t k) const;

    std::string label(std::size_t w) const;
    std::string describe_prefix(const Prefix& p) const;

private:
    TimeAxis time_;
    ActionSpace actions_;
    ScenarioSpace space_;
    std::vector<PathOutcome> paths_;
};

// Outcomes sharing w's scenario and its history before t.
IndexSet node_at(const PathOutcomes& po, const Time& t, std::size_t w);
// Same, for scenario w and an arbitrary prefix (possibly empty).
IndexSet node_at_prefix(const PathOutcomes& po, std::size_t scenario, const Prefix& p);

// Scenarios where the prefix has at least two continuations. The checked
// form throws apw0-violation when the result is not an event.
IndexSet move_event(const PathOutcomes& po, const Time& t, const Path& f);
IndexSet move_event_raw(const PathOutcomes& po, const Prefix& p);

struct ApwOptions {
    std::size_t max_time_subsets = 8;  // exhaustive subset mode up to this many time points
    std::size_t work_cap = kDefaultWorkCap * 16;
};

struct ApwReport {
    Verdict w0, w1, w2, w3;
    std::optional<Verdict> w4;  // only when a factorization is supplied
    std::string w2_mode;        // "exhaustive" or "prefix"

    bool ok() const { return w0.ok && w1.ok && w2.ok && w3.ok; }
    std::string first_failure() const;
};

ApwReport check_apw(const PathOutcomes& po, const ApwOptions& options = {});

struct ActionPathSdf {
    PathOutcomes po;
    Sdf sdf;  // outcome w of the forest is path outcome w
    std::vector<std::size_t> move_time_index;
    std::vector<Prefix> move_prefix;
    std::map<std::pair<std::size_t, Prefix>, std::size_t> move_of;  // (time index, prefix) -> move
    std::vector<std::vector<std::size_t>> node_index;  // node_index[k][w] = node of x_k(w)
    std::vector<std::size_t> singleton_node;           // node of {w}
    std::optional<SdfVerdict> verified;

    std::vector<Time> move_times() const;
    std::optional<std::size_t> find_move(std::size_t k, const Prefix& p) const;
};

struct BuildOptions {
    bool check_assumptions = true;  // throw assumption-failure unless W0-W3 hold
    bool verify = true;             // run verify_sdf on the result
    ApwOptions apw;
    VerifyOptions sdf;
};

ActionPathSdf build_action_path_sdf(const PathOutcomes& po, const BuildOptions& options = {});

// The set of time points t with x = x_t(w) for some w in x (empty for
// terminal singletons never reached this way).
std::vector<Time> time_set(const ActionPathSdf& ap, std::size_t node);
// Throws not-a-move.
Time time_of(const ActionPathSdf& ap, std::size_t node);

using HistorySet = std::set<Prefix>;  // prefixes of one common length

struct WindowChoiceSpec {
    Time t;
    HistorySet history;
    std::vector<IndexSet> actions;  // per scenario, a subset of the action space
};

struct WindowChoice {
    IndexSet choice;  // outcome set
    Verdict c0, c1, c2;
    bool ok() const { return c0.ok && c1.ok && c2.ok; }
};

WindowChoice window_choice(const PathOutcomes& po, const WindowChoiceSpec& spec);

// Partial map from scenarios to agent actions; its domain is D.
using AgentMap = std::vector<std::optional<std::uint32_t>>;

IndexSet agent_map_domain(const AgentMap& g);

// Throws no-factorization, and not-an-event when D is not an event.
WindowChoice agent_choice(const PathOutcomes& po, const Time& t, const HistorySet& history, std::size_t agent,
                          const AgentMap& g);

struct AgentChoiceCase {
    std::size_t k = 0;  // time index
    HistorySet history;
    AgentMap g;
    WindowChoice choice;
};

enum class HistoryScope { all_subsets, singletons_and_full };

// Agent choices c(H, i, g) at time index k, H drawn from realized histories
// and g ranging over all maps on every nonempty event. With `only_valid`
// keeps those passing C0-C2. Throws size-cap past `cap` candidates.
std::vector<AgentChoiceCase> enumerate_agent_choices(const PathOutcomes& po, std::size_t agent, std::size_t k,
                                                     HistoryScope scope, bool only_valid,
                                                     std::size_t max_history_prefixes = 12,
                                                     std::size_t cap = std::size_t{1} << 16);

// Per-scenario action sets (p^i)^-1(G) on `domain`, empty elsewhere.
std::vector<IndexSet> fibre_actions(const PathOutcomes& po, std::size_t agent, const IndexSet& agent_actions,
                                    const IndexSet& domain);

// Closed forms for choices of time index k: the nodes below c, and the
// immediate predecessors {x_t(w) | w in c}.
IndexSet expected_down_set(const ActionPathSdf& ap, std::size_t k, const IndexSet& c);
IndexSet expected_predecessors(const ActionPathSdf& ap, std::size_t k, const IndexSet& c);

struct RcsOptions {
    std::size_t max_history_prefixes = 12;  // realized prefixes per time index enumerated as subsets
};

// Reference choices of one agent at every random move, enumerated over
// history sets drawn from realized prefixes and all agent action subsets.
Rcs agent_rcs(const ActionPathSdf& ap, std::size_t agent, const RcsOptions& options = {});

struct Apc3Result {
    Verdict verdict;
    HistorySet history;              // witness history set
    std::vector<IndexSet> generator;  // witness generator, subsets of the agent's actions
};

struct Apc3Options {
    RcsOptions rcs;
    std::size_t family_cap = std::size_t{1} << 16;  // subfamilies tried in the generator search
    std::size_t choice_cap = 4096;                 // candidate choices enumerated per move
};

// The generator and history witness for one given choice at move x. `rcs`
// must be agent_rcs(ap, agent).
Apc3Result check_apc3_for(const ActionPathSdf& ap, std::size_t agent, std::size_t move, const IndexSet& choice,
                          const Rcs& rcs, const Apc3Options& options = {});

// Every agent choice in C_t that is available at x admits a witness.
Apc3Result check_apc3(const ActionPathSdf& ap, std::size_t agent, std::size_t move, const Rcs& rcs,
                      const Apc3Options& options = {});
Apc3Result check_apc3(const ActionPathSdf& ap, std::size_t agent, std::size_t move,
                      const Apc3Options& options = {});

// All moves.
Verdict check_apc3_all(const ActionPathSdf& ap, std::size_t agent, const Rcs& rcs, const Apc3Options& options = {});

// g restricted to `on` is measurable: every level set is an event of `sigma`.
bool measurable_on(const AgentMap& g, const IndexSet& on, const SubSigma& sigma);

struct MeasurabilityAtMove {
    std::size_t move = 0;
    bool domain_inside = false;  // D_x is contained in D
    bool measurable = false;
    bool adapted = false;        // the adaptedness condition at this move
    Verdict apc3;                // AP.C3 witness for this choice at this move
};

struct MeasurabilityResult {
    WindowChoice choice;
    Verdict non_redundant_complete;
    bool adapted = false;     // globally
    bool measurable = false;  // at every available move
    Verdict apc3_global;      // AP.C3 over all moves of the agent
    Verdict forward;
    Verdict backward;
    std::vector<MeasurabilityAtMove> moves;

    bool ok() const { return non_redundant_complete.ok && forward.ok && backward.ok; }
};

struct MeasurabilityOptions {
    Apc3Options apc3;
    bool global_apc3 = true;  // also check AP.C3 at every move
    // Reuse across calls on the same instance and agent.
    std::optional<Rcs> rcs;
    std::optional<Verdict> apc3_global;
};

// Throws precondition-violation unless the agent choice lies in C_t and the
// information structure verifies.
MeasurabilityResult check_measurability_adaptedness(const ActionPathSdf& ap, std::size_t agent, const Eis& e,
                                                    const Time& t, const HistorySet& history, const AgentMap& g,
                                                    const MeasurabilityOptions& options = {});

}  // namespace sdf
