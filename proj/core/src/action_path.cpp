#include "sdf/action_path.hpp"

#include <algorithm>
#include <unordered_map>

namespace sdf {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

void require_unique(const std::vector<std::string>& labels, const char* what) {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw Error(ErrorKind::invalid_argument, std::string("duplicate ") + what + " " + *dup);
}

bool has_prefix(const Path& f, const Prefix& p) {
    return p.size() <= f.size() && std::equal(p.begin(), p.end(), f.begin());
}

std::string time_label(const PathOutcomes& po, std::size_t k) { return to_string(po.time().at(k)); }

}  // namespace

// ---- time axis and action space ----

TimeAxis::TimeAxis(std::vector<Time> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end());
    if (points_.empty() || points_.front() != Time(0))
        throw Error(ErrorKind::invalid_argument, "time axis must contain 0 and no negative points");
    if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
        throw Error(ErrorKind::invalid_argument, "duplicate time point");
}

std::size_t TimeAxis::index_of(const Time& t) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), t);
    if (it == points_.end() || *it != t)
        throw Error(ErrorKind::time_index_mismatch, "time " + to_string(t) + " is not on the axis");
    return static_cast<std::size_t>(it - points_.begin());
}

bool TimeAxis::contains(const Time& t) const { return std::binary_search(points_.begin(), points_.end(), t); }

ActionSpace::ActionSpace(std::vector<std::string> labels, std::optional<Factorization> factorization)
    : labels_(std::move(labels)), factorization_(std::move(factorization)) {
    if (labels_.empty()) throw Error(ErrorKind::invalid_argument, "action space must be nonempty");
    require_unique(labels_, "action");
    if (!factorization_) return;
    const Factorization& f = *factorization_;
    if (f.agents.empty()) throw Error(ErrorKind::invalid_argument, "factorization needs at least one agent");
    require_unique(f.agents, "agent");
    if (f.agent_actions.size() != f.agents.size())
        throw Error(ErrorKind::invalid_argument, "every agent needs an action set");
    for (std::size_t i = 0; i < f.agents.size(); ++i) {
        if (f.agent_actions[i].empty())
            throw Error(ErrorKind::invalid_argument, "agent " + f.agents[i] + " has no actions");
        require_unique(f.agent_actions[i], "agent action");
    }
    if (f.coords.size() != labels_.size())
        throw Error(ErrorKind::invalid_argument, "factorization must give coordinates for every action");
    for (std::size_t a = 0; a < labels_.size(); ++a) {
        if (f.coords[a].size() != f.agents.size())
            throw Error(ErrorKind::invalid_argument, "action " + labels_[a] + " has the wrong number of coordinates");
        for (std::size_t i = 0; i < f.agents.size(); ++i)
            if (f.coords[a][i] >= f.agent_actions[i].size())
                throw Error(ErrorKind::invalid_argument, "action " + labels_[a] + " has an out-of-range coordinate");
    }
}

ActionSpace ActionSpace::product(std::vector<std::string> agents, std::vector<std::vector<std::string>> agent_actions) {
    if (agents.empty() || agent_actions.size() != agents.size())
        throw Error(ErrorKind::invalid_argument, "product needs one action set per agent");
    Factorization f{std::move(agents), std::move(agent_actions), {}};
    std::vector<std::string> labels;
    std::vector<std::uint32_t> digits(f.agents.size(), 0);
    for (const auto& set : f.agent_actions)
        if (set.empty()) throw Error(ErrorKind::invalid_argument, "empty agent action set");
    while (true) {
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < digits.size(); ++i) parts.push_back(f.agent_actions[i][digits[i]]);
        labels.push_back(join(parts, "|"));
        f.coords.push_back(digits);
        std::size_t i = digits.size();
        while (i > 0) {
            --i;
            if (++digits[i] < f.agent_actions[i].size()) break;
            digits[i] = 0;
            if (i == 0) return ActionSpace(std::move(labels), std::move(f));
        }
    }
}

std::size_t ActionSpace::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error(ErrorKind::unknown_element, "unknown action " + label);
    return static_cast<std::size_t>(it - labels_.begin());
}

const Factorization& ActionSpace::factorization() const {
    if (!factorization_) throw Error(ErrorKind::no_factorization, "action space has no agent factorization");
    return *factorization_;
}

std::size_t ActionSpace::agent_index(const std::string& name) const {
    const auto& agents = factorization().agents;
    auto it = std::find(agents.begin(), agents.end(), name);
    if (it == agents.end()) throw Error(ErrorKind::unknown_element, "unknown agent " + name);
    return static_cast<std::size_t>(it - agents.begin());
}

std::size_t ActionSpace::agent_action_count(std::size_t i) const {
    const auto& f = factorization();
    if (i >= f.agents.size()) throw Error(ErrorKind::unknown_element, "agent index out of range");
    return f.agent_actions[i].size();
}

std::uint32_t ActionSpace::project(std::size_t i, std::size_t a) const {
    const auto& f = factorization();
    if (i >= f.agents.size() || a >= labels_.size())
        throw Error(ErrorKind::unknown_element, "agent or action index out of range");
    return f.coords[a][i];
}

Verdict check_factorization(const ActionSpace& a) {
    const Factorization& f = a.factorization();
    std::size_t product = 1;
    for (const auto& set : f.agent_actions) product *= set.size();
    std::map<std::vector<std::uint32_t>, std::size_t> seen;
    for (std::size_t x = 0; x < a.size(); ++x) {
        auto [it, fresh] = seen.emplace(f.coords[x], x);
        if (!fresh) return Verdict::fail("actions " + a.label(it->second) + " and " + a.label(x) + " share coordinates");
    }
    if (a.size() != product)
        return Verdict::fail("coordinates cover " + std::to_string(a.size()) + " of " + std::to_string(product) +
                             " agent action profiles");
    return Verdict::pass();
}

// ---- path outcomes ----

PathOutcomes::PathOutcomes(TimeAxis time, ActionSpace actions, ScenarioSpace space, std::vector<PathOutcome> paths)
    : time_(std::move(time)), actions_(std::move(actions)), space_(std::move(space)), paths_(std::move(paths)) {
    std::vector<bool> covered(space_.size(), false);
    std::set<std::pair<std::size_t, Path>> seen;
    for (const auto& o : paths_) {
        if (o.scenario >= space_.size()) throw Error(ErrorKind::invalid_argument, "path outcome has unknown scenario");
        if (o.path.size() != time_.size())
            throw Error(ErrorKind::invalid_argument, "path length must equal the number of time points");
        for (auto a : o.path)
            if (a >= actions_.size()) throw Error(ErrorKind::invalid_argument, "path uses an unknown action");
        if (!seen.emplace(o.scenario, o.path).second)
            throw Error(ErrorKind::invalid_argument, "duplicate path outcome in scenario " + space_.label(o.scenario));
        covered[o.scenario] = true;
    }
    for (std::size_t w = 0; w < space_.size(); ++w)
        if (!covered[w]) throw Error(ErrorKind::invalid_argument, "scenario " + space_.label(w) + " admits no path");
}

Prefix PathOutcomes::prefix(std::size_t w, std::size_t k) const {
    const Path& f = outcome(w).path;
    if (k > f.size()) throw Error(ErrorKind::invalid_argument, "prefix longer than the path");
    return Prefix(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k));
}

std::vector<Prefix> PathOutcomes::realized_prefixes(std::size_t k) const {
    std::set<Prefix> out;
    for (std::size_t w = 0; w < size(); ++w) out.insert(prefix(w, k));
    return {out.begin(), out.end()};
}

std::string PathOutcomes::label(std::size_t w) const {
    const PathOutcome& o = outcome(w);
    std::vector<std::string> parts{space_.label(o.scenario)};
    for (auto a : o.path) parts.push_back(actions_.label(a));
    return "(" + join(parts, ",") + ")";
}

std::string PathOutcomes::describe_prefix(const Prefix& p) const {
    std::vector<std::string> parts;
    for (auto a : p) parts.push_back(actions_.label(a));
    return "(" + join(parts, ",") + ")";
}

IndexSet node_at_prefix(const PathOutcomes& po, std::size_t scenario, const Prefix& p) {
    IndexSet out(po.size());
    for (std::size_t w = 0; w < po.size(); ++w)
        if (po.outcome(w).scenario == scenario && has_prefix(po.outcome(w).path, p)) out.set(w);
    return out;
}

IndexSet node_at(const PathOutcomes& po, const Time& t, std::size_t w) {
    std::size_t k = po.time().index_of(t);
    if (w >= po.size()) throw Error(ErrorKind::unknown_element, "outcome index out of range");
    return node_at_prefix(po, po.outcome(w).scenario, po.prefix(w, k));
}

IndexSet move_event_raw(const PathOutcomes& po, const Prefix& p) {
    if (p.size() >= po.time().size()) throw Error(ErrorKind::invalid_argument, "history longer than the time axis");
    std::vector<std::size_t> count(po.space().size(), 0);
    for (const auto& o : po.paths())
        if (has_prefix(o.path, p)) ++count[o.scenario];
    IndexSet out(po.space().size());
    for (std::size_t w = 0; w < count.size(); ++w)
        if (count[w] >= 2) out.set(w);
    return out;
}

IndexSet move_event(const PathOutcomes& po, const Time& t, const Path& f) {
    if (f.size() != po.time().size())
        throw Error(ErrorKind::invalid_argument, "path length must equal the number of time points");
    std::size_t k = po.time().index_of(t);
    Prefix p(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k));
    IndexSet d = move_event_raw(po, p);
    if (!po.space().is_event(d))
        throw Error(ErrorKind::apw0_violation, "move event " + po.space().describe(d) + " at time " + to_string(t) +
                                                   " after " + po.describe_prefix(p) + " is not an event");
    return d;
}

// ---- AP.W checks ----

std::string ApwReport::first_failure() const {
    if (!w0.ok) return "W0: " + w0.witness;
    if (!w1.ok) return "W1: " + w1.witness;
    if (!w2.ok) return "W2: " + w2.witness;
    if (!w3.ok) return "W3: " + w3.witness;
    return {};
}

namespace {

Verdict check_w0(const PathOutcomes& po) {
    // Unrealized histories give an empty event, so only realized ones matter.
    for (std::size_t k = 0; k < po.time().size(); ++k)
        for (const auto& p : po.realized_prefixes(k)) {
            IndexSet d = move_event_raw(po, p);
            if (!po.space().is_event(d))
                return Verdict::fail("move event " + po.space().describe(d) + " at time " + time_label(po, k) +
                                     " after " + po.describe_prefix(p) + " is not an event");
        }
    return Verdict::pass();
}

Verdict check_w1(const PathOutcomes& po) {
    std::size_t n = po.time().size();
    for (std::size_t w = 0; w < po.size(); ++w) {
        std::vector<IndexSet> nodes;
        for (std::size_t k = 0; k < n; ++k) nodes.push_back(node_at_prefix(po, po.outcome(w).scenario, po.prefix(w, k)));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = k + 1; l < n; ++l)
                if (nodes[k] == nodes[l] && nodes[k].count() != 1)
                    return Verdict::fail("outcome " + po.label(w) + " has the same node of size " +
                                         std::to_string(nodes[k].count()) + " at times " + time_label(po, k) +
                                         " and " + time_label(po, l));
    }
    return Verdict::pass();
}

// Subsets T' of the axis given as bitmasks. For a nonempty T' with largest
// index m, the hypothesis requires x_m(w, f~) to be a node, so f~ restricted
// to [0, t_m) is a realized history of scenario w; nothing else about f~ is
// looked at.
Verdict check_w2(const PathOutcomes& po, const std::vector<std::uint64_t>& subsets, std::size_t work_cap) {
    std::size_t work = 0;
    for (std::size_t w = 0; w < po.space().size(); ++w) {
        std::vector<const Path*> own;
        for (const auto& o : po.paths())
            if (o.scenario == w) own.push_back(&o.path);
        for (std::uint64_t mask : subsets) {
            if (mask == 0) {
                if (own.empty()) return Verdict::fail("scenario " + po.space().label(w) + " admits no path");
                continue;
            }
            std::size_t m = 63 - static_cast<std::size_t>(__builtin_clzll(mask));
            std::set<Prefix> candidates;
            for (const Path* f : own) candidates.emplace(f->begin(), f->begin() + static_cast<std::ptrdiff_t>(m));
            for (const auto& ft : candidates) {
                if (++work > work_cap) throw Error(ErrorKind::size_cap_exceeded, "AP.W2 check exceeded its work cap");
                bool hypothesis = true;
                for (std::size_t j = 0; j <= m && hypothesis; ++j)
                    if ((mask >> j) & 1u)
                        hypothesis = node_at_prefix(po, w, Prefix(ft.begin(), ft.begin() + static_cast<std::ptrdiff_t>(j))).any();
                if (!hypothesis) continue;
                bool found = std::any_of(own.begin(), own.end(), [&](const Path* f) {
                    for (std::size_t j = 0; j <= m; ++j)
                        if (((mask >> j) & 1u) &&
                            !std::equal(ft.begin(), ft.begin() + static_cast<std::ptrdiff_t>(j), f->begin()))
                            return false;
                    return true;
                });
                if (!found)
                    return Verdict::fail("scenario " + po.space().label(w) + ", history " + po.describe_prefix(ft) +
                                         " has nodes at the chosen times but no path through them");
            }
        }
    }
    return Verdict::pass();
}

Verdict check_w3(const PathOutcomes& po) {
    for (std::size_t k = 0; k < po.time().size(); ++k) {
        std::vector<Prefix> prefixes = po.realized_prefixes(k);
        std::vector<IndexSet> events;
        for (const auto& p : prefixes) events.push_back(move_event_raw(po, p));
        for (std::size_t a = 0; a < prefixes.size(); ++a)
            for (std::size_t b = a + 1; b < prefixes.size(); ++b) {
                if (events[a].empty() || events[b].empty() || events[a].intersects(events[b])) continue;
                bool separated = false;
                for (std::size_t j = 0; j <= k && !separated; ++j) {
                    Prefix pa(prefixes[a].begin(), prefixes[a].begin() + static_cast<std::ptrdiff_t>(j));
                    Prefix pb(prefixes[b].begin(), prefixes[b].begin() + static_cast<std::ptrdiff_t>(j));
                    separated = pa != pb && move_event_raw(po, pa).intersects(move_event_raw(po, pb));
                }
                if (!separated)
                    return Verdict::fail("histories " + po.describe_prefix(prefixes[a]) + " and " +
                                         po.describe_prefix(prefixes[b]) + " at time " + time_label(po, k) +
                                         " move on disjoint events " + po.space().describe(events[a]) + " and " +
                                         po.space().describe(events[b]) + " and are never told apart on a common one");
            }
    }
    return Verdict::pass();
}

}  // namespace

ApwReport check_apw(const PathOutcomes& po, const ApwOptions& options) {
    ApwReport r;
    r.w0 = check_w0(po);
    r.w1 = check_w1(po);
    std::size_t n = po.time().size();
    std::vector<std::uint64_t> subsets;
    if (n <= options.max_time_subsets && n < 63) {
        r.w2_mode = "exhaustive";
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) subsets.push_back(mask);
    } else {
        r.w2_mode = "prefix";
        subsets.push_back(0);
        for (std::size_t j = 0; j < n && j < 63; ++j) subsets.push_back((std::uint64_t{1} << (j + 1)) - 1);
    }
    r.w2 = check_w2(po, subsets, options.work_cap);
    if (r.w2_mode == "prefix") {
        r.w2.partial = true;
        r.w2.notes.push_back("only initial segments of the time axis were checked");
    }
    r.w3 = check_w3(po);
    if (po.actions().has_factorization()) r.w4 = check_factorization(po.actions());
    return r;
}

// ---- construction ----

std::vector<Time> ActionPathSdf::move_times() const {
    std::vector<Time> out;
    for (auto k : move_time_index) out.push_back(po.time().at(k));
    return out;
}

std::optional<std::size_t> ActionPathSdf::find_move(std::size_t k, const Prefix& p) const {
    auto it = move_of.find({k, p});
    if (it == move_of.end()) return std::nullopt;
    return it->second;
}

ActionPathSdf build_action_path_sdf(const PathOutcomes& po, const BuildOptions& options) {
    if (options.check_assumptions) {
        ApwReport r = check_apw(po, options.apw);
        if (!r.ok()) throw Error(ErrorKind::assumption_failure, "outcome set violates " + r.first_failure());
    }
    ActionPathSdf ap;
    ap.po = po;
    std::size_t n = po.time().size();
    std::vector<IndexSet> nodes;
    std::unordered_map<IndexSet, std::size_t, IndexSetHash> index;
    auto intern = [&](IndexSet s) {
        auto [it, fresh] = index.emplace(s, nodes.size());
        if (fresh) nodes.push_back(std::move(s));
        return it->second;
    };
    ap.node_index.assign(n, std::vector<std::size_t>(po.size()));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t w = 0; w < po.size(); ++w)
            ap.node_index[k][w] = intern(node_at_prefix(po, po.outcome(w).scenario, po.prefix(w, k)));
    for (std::size_t w = 0; w < po.size(); ++w) ap.singleton_node.push_back(intern(IndexSet(po.size(), {w})));

    std::vector<std::string> labels;
    for (std::size_t w = 0; w < po.size(); ++w) labels.push_back(po.label(w));
    std::vector<std::size_t> projection;
    for (const auto& x : nodes) projection.push_back(po.outcome(x.first()).scenario);

    std::vector<RandomMove> moves;
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& p : po.realized_prefixes(k)) {
            IndexSet d = move_event_raw(po, p);
            if (d.empty()) continue;
            RandomMove m;
            m.name = "x_" + time_label(po, k) + po.describe_prefix(p);
            m.domain = d;
            m.assignment.assign(po.space().size(), std::nullopt);
            for (std::size_t w = 0; w < po.size(); ++w)
                if (d.test(po.outcome(w).scenario) && has_prefix(po.outcome(w).path, p))
                    m.assignment[po.outcome(w).scenario] = ap.node_index[k][w];
            auto same = std::find_if(moves.begin(), moves.end(), [&](const RandomMove& o) { return o.same_map(m); });
            if (same != moves.end()) {
                ap.move_of[{k, p}] = static_cast<std::size_t>(same - moves.begin());
                continue;
            }
            ap.move_of[{k, p}] = moves.size();
            ap.move_time_index.push_back(k);
            ap.move_prefix.push_back(p);
            moves.push_back(std::move(m));
        }
    ap.sdf = Sdf(SetForest(std::move(labels), std::move(nodes)), po.space(), std::move(projection), std::move(moves));
    if (options.verify) ap.verified = verify_sdf(ap.sdf, options.sdf);
    return ap;
}

std::vector<Time> time_set(const ActionPathSdf& ap, std::size_t node) {
    const IndexSet& x = ap.sdf.forest().node(node);
    std::vector<Time> out;
    for (std::size_t k = 0; k < ap.node_index.size(); ++k) {
        bool hit = false;
        x.for_each([&](std::size_t w) { hit = hit || ap.node_index[k][w] == node; });
        if (hit) out.push_back(ap.po.time().at(k));
    }
    return out;
}

Time time_of(const ActionPathSdf& ap, std::size_t node) {
    if (node >= ap.sdf.forest().size() || !ap.sdf.is_move_node(node))
        throw Error(ErrorKind::not_a_move, "node is not a move");
    std::vector<Time> ts = time_set(ap, node);
    if (ts.empty()) throw Error(ErrorKind::not_a_move, "move has no time point");
    return ts.front();
}

// ---- window and agent choices ----

WindowChoice window_choice(const PathOutcomes& po, const WindowChoiceSpec& spec) {
    std::size_t k = po.time().index_of(spec.t);
    if (spec.actions.size() != po.space().size())
        throw Error(ErrorKind::invalid_argument, "window choice needs an action set per scenario");
    for (const auto& a : spec.actions)
        if (a.universe() != po.actions().size())
            throw Error(ErrorKind::invalid_argument, "action set over the wrong action space");
    for (const auto& p : spec.history)
        if (p.size() != k) throw Error(ErrorKind::invalid_argument, "history length must equal the time index");

    WindowChoice out;
    out.choice = IndexSet(po.size());
    for (std::size_t w = 0; w < po.size(); ++w) {
        const PathOutcome& o = po.outcome(w);
        if (spec.history.count(po.prefix(w, k)) && spec.actions[o.scenario].test(o.path[k])) out.choice.set(w);
    }
    const IndexSet& c = out.choice;
    out.c0 = c.any() ? Verdict::pass() : Verdict::fail("the choice is empty");
    out.c1 = Verdict::pass();
    for (std::size_t w : c.elements())
        if ((node_at_prefix(po, po.outcome(w).scenario, po.prefix(w, k)) - c).empty()) {
            out.c1 = Verdict::fail("no alternative to " + po.label(w) + " at time " + time_label(po, k));
            break;
        }
    out.c2 = Verdict::pass();
    for (const auto& p : spec.history) {
        IndexSet d = move_event_raw(po, p);
        IndexSet meeting(po.space().size());
        d.for_each([&](std::size_t w) {
            if (node_at_prefix(po, w, p).intersects(c)) meeting.set(w);
        });
        if (meeting.any() && meeting != d) {
            out.c2 = Verdict::fail("after " + po.describe_prefix(p) + " the choice meets the move on " +
                                   po.space().describe(meeting) + " but not on all of " + po.space().describe(d));
            break;
        }
    }
    return out;
}

IndexSet agent_map_domain(const AgentMap& g) {
    IndexSet d(g.size());
    for (std::size_t w = 0; w < g.size(); ++w)
        if (g[w]) d.set(w);
    return d;
}

std::vector<IndexSet> fibre_actions(const PathOutcomes& po, std::size_t agent, const IndexSet& agent_actions,
                                    const IndexSet& domain) {
    const ActionSpace& a = po.actions();
    if (agent_actions.universe() != a.agent_action_count(agent))
        throw Error(ErrorKind::invalid_argument, "agent action set over the wrong agent");
    IndexSet fibre(a.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        if (agent_actions.test(a.project(agent, x))) fibre.set(x);
    std::vector<IndexSet> out(po.space().size(), IndexSet(a.size()));
    domain.for_each([&](std::size_t w) { out[w] = fibre; });
    return out;
}

WindowChoice agent_choice(const PathOutcomes& po, const Time& t, const HistorySet& history, std::size_t agent,
                          const AgentMap& g) {
    const ActionSpace& a = po.actions();
    std::size_t na = a.agent_action_count(agent);
    if (g.size() != po.space().size()) throw Error(ErrorKind::invalid_argument, "agent map needs a slot per scenario");
    IndexSet d = agent_map_domain(g);
    if (!po.space().is_event(d))
        throw Error(ErrorKind::not_an_event, "domain " + po.space().describe(d) + " of the agent map is not an event");
    WindowChoiceSpec spec{t, history, std::vector<IndexSet>(po.space().size(), IndexSet(a.size()))};
    d.for_each([&](std::size_t w) {
        if (*g[w] >= na) throw Error(ErrorKind::invalid_argument, "agent map value out of range");
        for (std::size_t x = 0; x < a.size(); ++x)
            if (a.project(agent, x) == *g[w]) spec.actions[w].set(x);
    });
    return window_choice(po, spec);
}

IndexSet expected_down_set(const ActionPathSdf& ap, std::size_t k, const IndexSet& c) {
    IndexSet out(ap.sdf.forest().size());
    c.for_each([&](std::size_t w) {
        for (std::size_t u = k + 1; u < ap.node_index.size(); ++u) out.set(ap.node_index[u][w]);
        out.set(ap.singleton_node[w]);
    });
    return out;
}

IndexSet expected_predecessors(const ActionPathSdf& ap, std::size_t k, const IndexSet& c) {
    IndexSet out(ap.sdf.forest().size());
    c.for_each([&](std::size_t w) { out.set(ap.node_index.at(k)[w]); });
    return out;
}

// ---- reference choices and AP.C3 ----

namespace {

IndexSet mask_set(std::size_t n, std::uint64_t mask) {
    IndexSet s(n);
    for (std::size_t j = 0; j < n; ++j)
        if ((mask >> j) & 1u) s.set(j);
    return s;
}

bool meets_every_node(const ActionPathSdf& ap, std::size_t move, const IndexSet& c) {
    const RandomMove& m = ap.sdf.move(move);
    bool all = true;
    m.domain.for_each([&](std::size_t w) { all = all && ap.sdf.forest().node(m.at(w)).intersects(c); });
    return all;
}

std::vector<Prefix> other_prefixes(const ActionPathSdf& ap, std::size_t k, const Prefix& keep, std::size_t cap) {
    std::vector<Prefix> out;
    for (auto& p : ap.po.realized_prefixes(k))
        if (p != keep) out.push_back(std::move(p));
    if (out.size() > cap)
        throw Error(ErrorKind::size_cap_exceeded, std::to_string(out.size()) + " histories at time " +
                                                      time_label(ap.po, k) + " exceed the enumeration cap");
    return out;
}

// c(H, A^{i,G}) without the C-checks.
IndexSet fibred_choice(const ActionPathSdf& ap, std::size_t k, const HistorySet& h, const std::vector<IndexSet>& acts) {
    IndexSet c(ap.po.size());
    for (std::size_t w = 0; w < ap.po.size(); ++w) {
        const PathOutcome& o = ap.po.outcome(w);
        if (acts[o.scenario].test(o.path[k]) && h.count(ap.po.prefix(w, k))) c.set(w);
    }
    return c;
}

bool separates_points(const std::vector<std::uint64_t>& family, std::size_t n) {
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            bool split = std::any_of(family.begin(), family.end(),
                                     [&](std::uint64_t g) { return ((g >> a) & 1u) != ((g >> b) & 1u); });
            if (!split) return false;
        }
    return true;
}

bool intersection_stable(const std::vector<std::uint64_t>& family) {
    for (auto a : family)
        for (auto b : family)
            if (std::find(family.begin(), family.end(), a & b) == family.end()) return false;
    return true;
}

std::string describe_masks(const std::vector<std::uint64_t>& family, const std::vector<std::string>& labels) {
    std::vector<std::string> parts;
    for (auto g : family) {
        std::vector<std::string> members;
        for (std::size_t j = 0; j < labels.size(); ++j)
            if ((g >> j) & 1u) members.push_back(labels[j]);
        parts.push_back("{" + join(members, ",") + "}");
    }
    return "{" + join(parts, ",") + "}";
}

}  // namespace

std::vector<AgentChoiceCase> enumerate_agent_choices(const PathOutcomes& po, std::size_t agent, std::size_t k,
                                                     HistoryScope scope, bool only_valid,
                                                     std::size_t max_history_prefixes, std::size_t cap) {
    std::size_t na = po.actions().agent_action_count(agent);
    if (k >= po.time().size()) throw Error(ErrorKind::time_index_mismatch, "time index out of range");
    const Time t = po.time().at(k);
    std::vector<Prefix> prefixes = po.realized_prefixes(k);
    if (prefixes.size() > max_history_prefixes)
        throw Error(ErrorKind::size_cap_exceeded, "too many histories at time " + to_string(t));

    std::vector<HistorySet> histories;
    if (scope == HistoryScope::all_subsets) {
        for (std::uint64_t s = 1; s < (std::uint64_t{1} << prefixes.size()); ++s) {
            HistorySet h;
            for (std::size_t j = 0; j < prefixes.size(); ++j)
                if ((s >> j) & 1u) h.insert(prefixes[j]);
            histories.push_back(std::move(h));
        }
    } else {
        for (const auto& p : prefixes) histories.push_back({p});
        if (prefixes.size() > 1) histories.emplace_back(prefixes.begin(), prefixes.end());
    }

    std::vector<AgentChoiceCase> out;
    std::size_t enumerated = 0;
    std::vector<IndexSet> events = po.space().events();
    for (const auto& h : histories)
        for (const auto& d : events) {
            if (d.empty()) continue;
            std::vector<std::size_t> dom = d.elements();
            std::vector<std::uint32_t> digits(dom.size(), 0);
            while (true) {
                if (++enumerated > cap)
                    throw Error(ErrorKind::size_cap_exceeded, "agent choice enumeration exceeded its cap");
                AgentMap g(po.space().size());
                for (std::size_t j = 0; j < dom.size(); ++j) g[dom[j]] = digits[j];
                WindowChoice wc = agent_choice(po, t, h, agent, g);
                if (!only_valid || wc.ok()) out.push_back({k, h, std::move(g), std::move(wc)});
                std::size_t j = 0;
                while (j < digits.size() && ++digits[j] == na) digits[j++] = 0;
                if (j == digits.size()) break;
            }
        }
    return out;
}

Rcs agent_rcs(const ActionPathSdf& ap, std::size_t agent, const RcsOptions& options) {
    const PathOutcomes& po = ap.po;
    std::size_t na = po.actions().agent_action_count(agent);
    if (na >= 63) throw Error(ErrorKind::size_cap_exceeded, "agent action set too large to enumerate");
    Rcs r;
    r.per_move.resize(ap.sdf.move_count());
    for (std::size_t x = 0; x < ap.sdf.move_count(); ++x) {
        std::size_t k = ap.move_time_index[x];
        const Prefix& p0 = ap.move_prefix[x];
        const IndexSet& dx = ap.sdf.move(x).domain;
        // A history set missing p0 cannot meet x(w); unrealized histories
        // do not change the choice.
        std::vector<Prefix> others = other_prefixes(ap, k, p0, options.max_history_prefixes);
        std::set<IndexSet> found;
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << others.size()); ++s) {
            HistorySet h{p0};
            for (std::size_t j = 0; j < others.size(); ++j)
                if ((s >> j) & 1u) h.insert(others[j]);
            for (std::uint64_t gmask = 0; gmask < (std::uint64_t{1} << na); ++gmask) {
                WindowChoiceSpec spec{po.time().at(k), h, fibre_actions(po, agent, mask_set(na, gmask), dx)};
                WindowChoice wc = window_choice(po, spec);
                if (wc.ok() && meets_every_node(ap, x, wc.choice)) found.insert(wc.choice);
            }
        }
        r.per_move[x].assign(found.begin(), found.end());
    }
    return r;
}

Apc3Result check_apc3_for(const ActionPathSdf& ap, std::size_t agent, std::size_t move, const IndexSet& choice,
                          const Rcs& rcs, const Apc3Options& options) {
    const PathOutcomes& po = ap.po;
    std::size_t na = po.actions().agent_action_count(agent);
    if (na >= 20) throw Error(ErrorKind::size_cap_exceeded, "agent action set too large for the generator search");
    if (move >= ap.sdf.move_count()) throw Error(ErrorKind::not_a_move, "move index out of range");
    std::size_t k = ap.move_time_index[move];
    const IndexSet& dx = ap.sdf.move(move).domain;
    const auto& reference = rcs.per_move.at(move);
    const auto& agent_labels = po.actions().factorization().agent_actions[agent];
    const std::uint64_t full = (std::uint64_t{1} << na) - 1;

    HistorySet own;
    choice.for_each([&](std::size_t w) { own.insert(po.prefix(w, k)); });
    std::vector<HistorySet> candidates{own};
    std::vector<Prefix> all = po.realized_prefixes(k);
    HistorySet everything(all.begin(), all.end());
    if (everything != own) candidates.push_back(everything);

    Apc3Result out;
    std::string last_failure;
    bool capped = false;
    for (const auto& h : candidates) {
        std::vector<std::uint64_t> good;
        std::vector<std::uint64_t> bad;
        for (std::uint64_t g = 0; g <= full; ++g) {
            IndexSet c = fibred_choice(ap, k, h, fibre_actions(po, agent, mask_set(na, g), dx));
            bool in = c.empty() || std::find(reference.begin(), reference.end(), c) != reference.end();
            (in ? good : bad).push_back(g);
        }
        auto found = [&](const std::vector<std::uint64_t>& family) {
            out.verdict = Verdict::pass();
            out.history = h;
            for (auto g : family) out.generator.push_back(mask_set(na, g));
            return out;
        };
        // All proper subsets first.
        bool canonical = std::all_of(bad.begin(), bad.end(), [&](std::uint64_t g) { return g == full; });
        if (canonical) {
            std::vector<std::uint64_t> family;
            for (std::uint64_t g = 0; g < full; ++g) family.push_back(g);
            if (na == 1) family = {0};
            return found(family);
        }
        if (good.size() < 63) {
            std::uint64_t limit = std::uint64_t{1} << good.size();
            std::size_t tried = 0;
            for (std::uint64_t s = 1; s < limit; ++s) {
                if (++tried > options.family_cap) {
                    capped = true;
                    break;
                }
                std::vector<std::uint64_t> family;
                for (std::size_t j = 0; j < good.size(); ++j)
                    if ((s >> j) & 1u) family.push_back(good[j]);
                if (separates_points(family, na) && intersection_stable(family)) return found(family);
            }
        } else {
            capped = true;
        }
        last_failure = "with history set of " + std::to_string(h.size()) + " prefixes the sets " +
                       describe_masks(bad, agent_labels) + " give choices outside the reference choices at " +
                       ap.sdf.move(move).name + " and no stable generator avoids them";
    }
    out.verdict = Verdict::fail(last_failure);
    out.verdict.partial = capped;
    return out;
}

Apc3Result check_apc3(const ActionPathSdf& ap, std::size_t agent, std::size_t move, const Rcs& rcs,
                      const Apc3Options& options) {
    if (move >= ap.sdf.move_count()) throw Error(ErrorKind::not_a_move, "move index out of range");
    std::size_t k = ap.move_time_index[move];
    std::set<IndexSet> choices;
    bool capped = false;
    std::vector<AgentChoiceCase> cases;
    try {
        cases = enumerate_agent_choices(ap.po, agent, k, HistoryScope::all_subsets, true,
                                        options.rcs.max_history_prefixes, options.choice_cap);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::size_cap_exceeded) throw;
        capped = true;
        cases = enumerate_agent_choices(ap.po, agent, k, HistoryScope::singletons_and_full, true,
                                        options.rcs.max_history_prefixes, options.choice_cap);
    }
    for (const auto& cs : cases)
        if (classify(ap.sdf, cs.choice.choice).available_at.test(move)) choices.insert(cs.choice.choice);
    Apc3Result out;
    out.verdict = Verdict::pass();
    if (choices.empty()) out.verdict.notes.push_back("no agent choice is available at " + ap.sdf.move(move).name);
    for (const auto& c : choices) {
        Apc3Result r = check_apc3_for(ap, agent, move, c, rcs, options);
        if (!r.verdict.ok) {
            r.verdict.witness = "choice " + ap.sdf.forest().describe(c) + ": " + r.verdict.witness;
            r.verdict.partial = r.verdict.partial || capped;
            return r;
        }
        if (out.generator.empty()) {
            out.history = r.history;
            out.generator = r.generator;
        }
    }
    out.verdict.partial = capped;
    if (capped) out.verdict.notes.push_back("candidate choices truncated at the enumeration cap");
    return out;
}

Apc3Result check_apc3(const ActionPathSdf& ap, std::size_t agent, std::size_t move, const Apc3Options& options) {
    return check_apc3(ap, agent, move, agent_rcs(ap, agent, options.rcs), options);
}

Verdict check_apc3_all(const ActionPathSdf& ap, std::size_t agent, const Rcs& rcs, const Apc3Options& options) {
    Verdict v = Verdict::pass();
    for (std::size_t x = 0; x < ap.sdf.move_count(); ++x) {
        Apc3Result r = check_apc3(ap, agent, x, rcs, options);
        if (!r.verdict.ok) return r.verdict;
        v.partial = v.partial || r.verdict.partial;
    }
    return v;
}

// ---- measurability versus adaptedness ----

bool measurable_on(const AgentMap& g, const IndexSet& on, const SubSigma& sigma) {
    std::map<std::uint32_t, IndexSet> levels;
    bool defined = true;
    on.for_each([&](std::size_t w) {
        if (w >= g.size() || !g[w]) {
            defined = false;
            return;
        }
        auto it = levels.try_emplace(*g[w], IndexSet(on.universe())).first;
        it->second.set(w);
    });
    if (!defined) return false;
    return std::all_of(levels.begin(), levels.end(), [&](const auto& kv) { return sigma.contains(kv.second); });
}

MeasurabilityResult check_measurability_adaptedness(const ActionPathSdf& ap, std::size_t agent, const Eis& e,
                                                    const Time& t, const HistorySet& history, const AgentMap& g,
                                                    const MeasurabilityOptions& options) {
    const Sdf& s = ap.sdf;
    MeasurabilityResult out;
    out.choice = agent_choice(ap.po, t, history, agent, g);
    if (!out.choice.ok()) {
        const WindowChoice& wc = out.choice;
        std::string why = !wc.c0.ok ? wc.c0.witness : !wc.c1.ok ? wc.c1.witness : wc.c2.witness;
        throw Error(ErrorKind::precondition_violation, "agent choice violates the window conditions: " + why);
    }
    Verdict ev = verify_eis(s, e);
    if (!ev.ok) throw Error(ErrorKind::precondition_violation, "information structure fails: " + ev.witness);

    Rcs rcs = options.rcs ? *options.rcs : agent_rcs(ap, agent, options.apc3.rcs);
    const IndexSet& c = out.choice.choice;
    Classification k = classify(s, c);
    out.non_redundant_complete = k.non_redundant && k.complete ? Verdict::pass() : Verdict::fail(k.witness);
    if (!out.non_redundant_complete.ok) {
        out.forward = Verdict::fail("choice is not non-redundant and complete");
        out.backward = out.forward;
        return out;
    }
    AdaptedResult ad = is_adapted(s, e, rcs, c);
    out.adapted = ad.verdict.ok;
    IndexSet d = agent_map_domain(g);

    out.measurable = true;
    for (const auto& mv : ad.per_move) {
        MeasurabilityAtMove m;
        m.move = mv.move;
        const IndexSet& dx = s.move(mv.move).domain;
        m.domain_inside = dx.subset_of(d);
        m.measurable = m.domain_inside && measurable_on(g, dx, e.per_move[mv.move]);
        m.adapted = mv.verdict.ok;
        m.apc3 = check_apc3_for(ap, agent, mv.move, c, rcs, options.apc3).verdict;
        out.measurable = out.measurable && m.measurable;
        out.moves.push_back(std::move(m));
    }
    if (options.apc3_global) {
        out.apc3_global = *options.apc3_global;
    } else if (options.global_apc3) {
        out.apc3_global = check_apc3_all(ap, agent, rcs, options.apc3);
    } else {
        out.apc3_global = Verdict::fail("not checked");
        out.apc3_global.partial = true;
    }

    out.forward = Verdict::pass();
    out.backward = Verdict::pass();
    for (const auto& m : out.moves) {
        const std::string& name = s.move(m.move).name;
        if (!m.domain_inside && out.forward.ok)
            out.forward = Verdict::fail("domain of " + name + " is not inside the domain of g");
        if (m.measurable && !m.adapted && out.forward.ok)
            out.forward = Verdict::fail("g is measurable at " + name + " but the choice is not adapted there");
        if (m.apc3.ok && m.adapted && !m.measurable && out.backward.ok)
            out.backward = Verdict::fail("adapted at " + name + " with an AP.C3 witness, yet g is not measurable");
    }
    if (out.forward.ok && out.measurable && !out.adapted)
        out.forward = Verdict::fail("g is measurable at every available move but the choice is not adapted");
    if (out.backward.ok && out.apc3_global.ok && out.adapted && !out.measurable)
        out.backward = Verdict::fail("AP.C3 holds and the choice is adapted, yet g is not measurable everywhere");
    if (!out.measurable) out.forward.notes.push_back("g is not measurable at some available move");
    if (!out.apc3_global.ok) out.backward.notes.push_back("AP.C3 does not hold at every move");
    if (!out.adapted) out.backward.notes.push_back("the choice is not adapted");
    return out;
}

}  // namespace sdf
