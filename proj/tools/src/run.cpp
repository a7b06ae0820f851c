#include "sdf_cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace sdf::cli {

using json = nlohmann::ordered_json;

namespace {

// A check that cannot run on this instance (missing section, failed build).
struct Unavailable {
    std::string why;
};

const Sdf& need_sdf(const Instance& in) {
    if (!in.sdf) throw Unavailable{"no decision forest: " + in.build_error};
    return *in.sdf;
}

const PathOutcomes& need_paths(const Instance& in) {
    if (!in.po) throw Unavailable{"instance has no action paths"};
    return *in.po;
}

const ActionPathSdf& need_ap(const Instance& in) {
    need_paths(in);
    if (!in.ap) throw Unavailable{"no decision forest: " + in.build_error};
    return *in.ap;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::vector<std::string> node_names(const Sdf& s, const IndexSet& nodes) {
    std::vector<std::string> out;
    nodes.for_each([&](std::size_t x) { out.push_back(s.describe_node(x)); });
    return out;
}

std::vector<std::string> move_names(const Sdf& s, const IndexSet& moves) {
    std::vector<std::string> out;
    moves.for_each([&](std::size_t i) { out.push_back(s.move(i).name); });
    return out;
}

std::vector<std::string> outcome_names(const Sdf& s, const IndexSet& c) {
    std::vector<std::string> out;
    c.for_each([&](std::size_t v) { out.push_back(s.forest().outcome_label(v)); });
    return out;
}

json atoms_json(const ScenarioSpace& space, const SubSigma& sigma) {
    json a = json::array();
    for (const auto& atom : sigma.atoms()) {
        json block = json::array();
        atom.for_each([&](std::size_t w) { block.push_back(space.label(w)); });
        a.push_back(block);
    }
    return a;
}

std::string atoms_text(const ScenarioSpace& space, const SubSigma& sigma) {
    std::vector<std::string> parts;
    for (const auto& atom : sigma.atoms()) parts.push_back(space.describe(atom));
    return "{" + join(parts) + "}";
}

json eis_json(const Sdf& s, const Eis& e) {
    json j = json::object();
    for (std::size_t i = 0; i < s.move_count(); ++i) j[s.move(i).name] = atoms_json(s.space(), e.per_move[i]);
    return j;
}

std::string eis_text(const Sdf& s, const Eis& e) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < s.move_count(); ++i)
        parts.push_back(s.move(i).name + ": " + atoms_text(s.space(), e.per_move[i]));
    return join(parts, "; ");
}

json verdict_json(const Verdict& v) {
    json j = {{"ok", v.ok}};
    if (v.partial) j["partial"] = true;
    if (!v.witness.empty()) j["witness"] = v.witness;
    if (!v.notes.empty()) j["notes"] = v.notes;
    return j;
}

std::string verdict_text(const Verdict& v) {
    std::string out = v.ok ? "ok" : "FAIL";
    if (v.partial) out += " (partial)";
    if (!v.witness.empty()) out += ": " + v.witness;
    return out;
}

void fail(CheckRecord& r, const std::string& witness) {
    if (r.ok) r.witness = witness;
    r.ok = false;
}

const NamedChoice& find_choice(const Instance& in, const std::string& name) {
    for (const auto& c : in.choices)
        if (c.name == name) return c;
    throw Error(ErrorKind::unresolved_reference, "unknown choice \"" + name + "\"");
}

std::vector<const NamedChoice*> selected_choices(const Instance& in, const std::string& arg) {
    std::vector<const NamedChoice*> out;
    if (!arg.empty()) out.push_back(&find_choice(in, arg));
    else
        for (const auto& c : in.choices) out.push_back(&c);
    return out;
}

std::vector<std::size_t> selected_agents(const PathOutcomes& po, const std::string& arg) {
    if (!po.actions().has_factorization()) throw Unavailable{"action space has no agents"};
    std::vector<std::size_t> out;
    if (!arg.empty()) {
        const auto& names = po.actions().factorization().agents;
        auto it = std::find(names.begin(), names.end(), arg);
        if (it == names.end()) throw Error(ErrorKind::unresolved_reference, "unknown agent \"" + arg + "\"");
        out.push_back(static_cast<std::size_t>(it - names.begin()));
    } else {
        for (std::size_t i = 0; i < po.actions().agent_count(); ++i) out.push_back(i);
    }
    return out;
}

// ---- checks ----

void check_verify(const Instance& in, const std::string&, const RunOptions& o, CheckRecord& r) {
    const Sdf& s = need_sdf(in);
    VerifyOptions v;
    v.max_x = o.max_x;
    SdfVerdict sv = verify_sdf(s, v);
    json axioms = json::array();
    for (const auto& a : sv.axioms) {
        json j = verdict_json(a.verdict);
        j["axiom"] = a.id;
        axioms.push_back(j);
        r.lines.push_back("axiom " + a.id + ": " + verdict_text(a.verdict));
        if (!a.verdict.ok) fail(r, "axiom " + a.id + ": " + a.verdict.witness);
    }
    r.partial = sv.partial();
    r.data["axioms"] = axioms;
}

void check_ttree(const Instance& in, const std::string&, const RunOptions&, CheckRecord& r) {
    const Sdf& s = need_sdf(in);
    Verdict ev = check_evaluation_bijection(s);
    r.lines.push_back("evaluation bijection: " + verdict_text(ev));
    r.data["evaluation"] = verdict_json(ev);
    if (!ev.ok) fail(r, "evaluation: " + ev.witness);
    try {
        Verdict t = check_derived_tree(s);
        r.lines.push_back("rooted decision tree with moves as non-terminal nodes: " + verdict_text(t));
        r.data["tree"] = verdict_json(t);
        if (!t.ok) fail(r, "tree: " + t.witness);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::roots_not_moves) throw;
        r.lines.push_back(std::string("tree: ") + e.what());
        r.data["tree"] = {{"ok", false}, {"error", to_string(e.kind())}, {"witness", e.what()}};
        fail(r, e.what());
    }
    TTree t = tmap_order(s);
    json edges = json::array();
    for (std::size_t a = 0; a < t.entries.size(); ++a) {
        // Parent: the least strict upper bound.
        std::optional<std::size_t> parent;
        t.order.up(a).for_each([&](std::size_t b) {
            if (b != a && (!parent || t.order.geq(*parent, b))) parent = b;
        });
        std::string label = t.order.label(a);
        r.lines.push_back("  " + label + (parent ? " <- " + t.order.label(*parent) : " (root)"));
        edges.push_back({{"node", label}, {"parent", parent ? json(t.order.label(*parent)) : json(nullptr)}});
    }
    r.data["nodes"] = edges;
}

void check_enumerate_eis(const Instance& in, const std::string&, const RunOptions&, CheckRecord& r) {
    const Sdf& s = need_sdf(in);
    std::vector<Eis> all = enumerate_eis(s);
    r.data["eis_count"] = all.size();
    r.lines.push_back("eis-count " + std::to_string(all.size()));
    json list = json::array();
    constexpr std::size_t kShown = 64;
    for (std::size_t i = 0; i < all.size() && i < kShown; ++i) {
        std::string name;
        for (const auto& n : in.eis)
            if (n.eis == all[i]) name = n.name;
        json j = {{"atoms", eis_json(s, all[i])}};
        if (!name.empty()) j["listed_as"] = name;
        list.push_back(j);
        r.lines.push_back("  " + (name.empty() ? std::string("-") : name) + "  " + eis_text(s, all[i]));
    }
    if (all.size() > kShown) r.lines.push_back("  ... " + std::to_string(all.size() - kShown) + " more");
    r.data["structures"] = list;
    if (in.catalog) {
        // The listed structures must be exactly the enumerated ones.
        for (const auto& n : in.eis)
            if (std::find(all.begin(), all.end(), n.eis) == all.end()) fail(r, "listed structure " + n.name + " not found");
        if (all.size() != in.eis.size()) fail(r, "enumeration has structures that are not listed");
    }
}

void check_predecessors(const Instance& in, const std::string& arg, const RunOptions&, CheckRecord& r) {
    const Sdf& s = need_sdf(in);
    json list = json::array();
    for (const NamedChoice* c : selected_choices(in, arg)) {
        IndexSet p = predecessors(s, c->outcomes);
        json j = {{"choice", c->name}, {"nodes", node_names(s, p)}};
        std::string line = c->name + ": " + join(node_names(s, p));
        if (c->expected_predecessors.universe() == p.universe()) {
            bool match = c->expected_predecessors == p;
            j["matches_closed_form"] = match;
            line += match ? "  (closed form ok)" : "  (closed form: " + join(node_names(s, c->expected_predecessors)) + ")";
            if (!match) fail(r, c->name + " differs from the closed form");
        }
        list.push_back(j);
        r.lines.push_back(line);
    }
    if (list.empty()) r.lines.push_back("no named choices");
    r.data["choices"] = list;
}

void check_classify(const Instance& in, const std::string& arg, const RunOptions&, CheckRecord& r) {
    const Sdf& s = need_sdf(in);
    json list = json::array();
    for (const NamedChoice* c : selected_choices(in, arg)) {
        json j = {{"choice", c->name}};
        if (!is_choice(s, c->outcomes)) {
            j["is_choice"] = false;
            r.lines.push_back(c->name + ": not a choice");
        } else {
            Classification k = classify(s, c->outcomes);
            j["is_choice"] = true;
            j["non_redundant"] = k.non_redundant;
            j["complete"] = k.complete;
            j["available_at"] = move_names(s, k.available_at);
            if (!k.witness.empty()) j["witness"] = k.witness;
            std::string line = c->name + ": " + (k.non_redundant ? "non-redundant" : "redundant") + ", " +
                               (k.complete ? "complete" : "incomplete") + ", available at {" +
                               join(move_names(s, k.available_at)) + "}";
            if (!k.witness.empty()) line += " (" + k.witness + ")";
            r.lines.push_back(line);
        }
        list.push_back(j);
    }
    if (list.empty()) r.lines.push_back("no named choices");
    r.data["choices"] = list;
}

const NamedEis& find_eis(const Instance& in, const std::string& name) {
    for (const auto& e : in.eis)
        if (e.name == name) return e;
    throw Error(ErrorKind::unresolved_reference, "unknown information structure \"" + name + "\"");
}

// Adaptedness verdict, or the precondition message.
std::pair<std::optional<bool>, std::string> adapted_of(const Sdf& s, const Eis& e, const Rcs& rcs, const IndexSet& c) {
    try {
        AdaptedResult a = is_adapted(s, e, rcs, c);
        return {a.verdict.ok, a.verdict.witness};
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::precondition_violation) throw;
        return {std::nullopt, err.what()};
    }
}

void check_adapted(const Instance& in, const std::string& arg, const RunOptions&, CheckRecord& r) {
    const Sdf& s = need_sdf(in);
    if (!in.rcs) throw Unavailable{"instance has no reference choices"};
    json list = json::array();
    if (!arg.empty()) {
        const NamedChoice& c = find_choice(in, arg);
        for (const auto& e : in.eis) {
            auto [v, why] = adapted_of(s, e.eis, *in.rcs, c.outcomes);
            json j = {{"eis", e.name}, {"adapted", v ? json(*v) : json(nullptr)}};
            if (!why.empty()) j["witness"] = why;
            list.push_back(j);
            r.lines.push_back("eis " + e.name + ": " + (v ? (*v ? "adapted" : "not adapted") : "n/a") +
                              (why.empty() ? "" : " (" + why + ")"));
        }
        r.data["results"] = list;
        return;
    }
    std::vector<AdaptedExpectation> rows = in.adapted;
    if (in.catalog) {
        for (const auto& row : in.catalog->table) rows.push_back({row.eis, row.choices, true});
        for (const auto& row : in.catalog->negatives) rows.push_back({row.eis, row.choices, false});
    }
    for (const auto& row : rows) {
        const NamedEis& e = find_eis(in, row.eis);
        std::vector<std::string> wrong;
        for (const auto& name : row.choices) {
            auto [v, why] = adapted_of(s, e.eis, *in.rcs, find_choice(in, name).outcomes);
            bool match = v && *v == row.expect;
            json j = {{"eis", row.eis}, {"choice", name}, {"expect", row.expect},
                      {"adapted", v ? json(*v) : json(nullptr)}};
            if (!why.empty()) j["witness"] = why;
            list.push_back(j);
            if (!match) {
                wrong.push_back(name);
                fail(r, name + " under eis " + row.eis + (why.empty() ? "" : ": " + why));
            }
        }
        r.lines.push_back("eis " + row.eis + ": " + std::to_string(row.choices.size() - wrong.size()) + "/" +
                          std::to_string(row.choices.size()) + (row.expect ? " adapted" : " not adapted") +
                          " as expected" + (wrong.empty() ? "" : "; mismatched " + join(wrong)));
    }
    if (rows.empty()) r.lines.push_back("no expectations listed");
    r.data["results"] = list;
}

void check_apw_cmd(const Instance& in, const std::string&, const RunOptions& o, CheckRecord& r) {
    const PathOutcomes& po = need_paths(in);
    ApwOptions a;
    a.max_time_subsets = o.max_time_subsets;
    ApwReport rep = check_apw(po, a);
    std::vector<std::pair<std::string, const Verdict*>> parts{{"W0", &rep.w0}, {"W1", &rep.w1}, {"W2", &rep.w2}, {"W3", &rep.w3}};
    if (rep.w4) parts.emplace_back("W4", &*rep.w4);
    for (const auto& [id, v] : parts) {
        r.lines.push_back(id + ": " + verdict_text(*v) + (id == "W2" ? " [" + rep.w2_mode + "]" : ""));
        json j = verdict_json(*v);
        if (id == "W2") j["mode"] = rep.w2_mode;
        r.data[id] = j;
        if (!v->ok) fail(r, id + ": " + v->witness);
        r.partial = r.partial || v->partial;
    }
}

void check_apc_cmd(const Instance& in, const std::string& arg, const RunOptions&, CheckRecord& r) {
    const ActionPathSdf& ap = need_ap(in);
    const Factorization& f = ap.po.actions().factorization();
    json agents = json::array();
    for (std::size_t i : selected_agents(ap.po, arg)) {
        Rcs rcs = agent_rcs(ap, i);
        json moves = json::array();
        std::vector<std::string> failures;
        for (std::size_t x = 0; x < ap.sdf.move_count(); ++x) {
            Apc3Result res = check_apc3(ap, i, x, rcs);
            json j = verdict_json(res.verdict);
            j["move"] = ap.sdf.move(x).name;
            moves.push_back(j);
            if (!res.verdict.ok) {
                failures.push_back("  " + ap.sdf.move(x).name + ": " + verdict_text(res.verdict));
                fail(r, "agent " + f.agents[i] + " at " + ap.sdf.move(x).name + ": " + res.verdict.witness);
            }
            r.partial = r.partial || res.verdict.partial;
        }
        r.lines.push_back("agent " + f.agents[i] + ": " + std::to_string(ap.sdf.move_count() - failures.size()) + "/" +
                          std::to_string(ap.sdf.move_count()) + " moves pass");
        r.lines.insert(r.lines.end(), failures.begin(), failures.end());
        agents.push_back({{"agent", f.agents[i]}, {"moves", moves}});
    }
    r.data["agents"] = agents;
}

// Information structures to test against: the document's own (for
// action-path documents) or every structure when there are few of them.
std::vector<NamedEis> measurability_structures(const Instance& in, const ActionPathSdf& ap) {
    if (in.kind == "action-path" && !in.eis.empty()) return in.eis;
    constexpr std::size_t kMaxStructures = 64;
    std::vector<NamedEis> out;
    try {
        std::vector<Eis> all = enumerate_eis(ap.sdf, kMaxStructures + 1);
        if (all.size() <= kMaxStructures) {
            for (std::size_t i = 0; i < all.size(); ++i) out.push_back({"#" + std::to_string(i + 1), all[i]});
            return out;
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::size_cap_exceeded) throw;
    }
    Eis trivial, discrete;
    for (const auto& m : ap.sdf.moves()) {
        trivial.per_move.push_back(SubSigma::trivial(m.domain));
        discrete.per_move.push_back(SubSigma::discrete(m.domain));
    }
    return {{"trivial", trivial}, {"discrete", discrete}};
}

void check_measurability(const Instance& in, const std::string& arg, const RunOptions&, CheckRecord& r) {
    const ActionPathSdf& ap = need_ap(in);
    const Factorization& f = ap.po.actions().factorization();
    std::vector<NamedEis> structures = measurability_structures(in, ap);
    r.data["structures"] = structures.size();
    json agents = json::array();
    for (std::size_t i : selected_agents(ap.po, arg)) {
        MeasurabilityOptions opts;
        opts.rcs = agent_rcs(ap, i);
        opts.apc3_global = check_apc3_all(ap, i, *opts.rcs, opts.apc3);
        std::size_t cases = 0, checked = 0, skipped = 0, measurable = 0, adapted = 0, forward_bad = 0, backward_bad = 0;
        for (std::size_t k = 0; k < ap.po.time().size(); ++k) {
            for (const auto& c : enumerate_agent_choices(ap.po, i, k, HistoryScope::singletons_and_full, true)) {
                ++cases;
                for (const auto& e : structures) {
                    try {
                        MeasurabilityResult m = check_measurability_adaptedness(ap, i, e.eis, ap.po.time().at(k),
                                                                                c.history, c.g, opts);
                        ++checked;
                        if (m.measurable) ++measurable;
                        if (m.adapted) ++adapted;
                        if (!m.forward.ok) {
                            ++forward_bad;
                            fail(r, "agent " + f.agents[i] + ", eis " + e.name + ": " + m.forward.witness);
                        }
                        if (!m.backward.ok) {
                            ++backward_bad;
                            fail(r, "agent " + f.agents[i] + ", eis " + e.name + ": " + m.backward.witness);
                        }
                    } catch (const Error& err) {
                        if (err.kind() != ErrorKind::precondition_violation) throw;
                        ++skipped;
                    }
                }
            }
        }
        r.lines.push_back("agent " + f.agents[i] + ": AP.C3 " + verdict_text(*opts.apc3_global));
        r.lines.push_back("  " + std::to_string(cases) + " choices x " + std::to_string(structures.size()) +
                          " structures: " + std::to_string(checked) + " checked, " + std::to_string(skipped) +
                          " outside C_t; " + std::to_string(measurable) + " measurable, " + std::to_string(adapted) +
                          " adapted; forward failures " + std::to_string(forward_bad) + ", backward failures " +
                          std::to_string(backward_bad));
        agents.push_back({{"agent", f.agents[i]},
                          {"apc3", verdict_json(*opts.apc3_global)},
                          {"choices", cases},
                          {"checked", checked},
                          {"skipped", skipped},
                          {"measurable", measurable},
                          {"adapted", adapted},
                          {"forward_failures", forward_bad},
                          {"backward_failures", backward_bad}});
    }
    r.data["agents"] = agents;
}

void check_eis_cmd(const Instance& in, const std::string&, const RunOptions&, CheckRecord& r) {
    const Sdf& s = need_sdf(in);
    json list = json::array();
    for (const auto& e : in.eis) {
        Verdict v;
        try {
            v = verify_eis(s, e.eis);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::carrier_mismatch) throw;
            v = Verdict::fail(err.what());
        }
        json j = verdict_json(v);
        j["eis"] = e.name;
        list.push_back(j);
        r.lines.push_back(e.name + ": " + verdict_text(v));
        if (!v.ok) fail(r, e.name + ": " + v.witness);
    }
    if (list.empty()) r.lines.push_back("no information structures listed");
    r.data["structures"] = list;
}

json rcs_json(const Sdf& s, const Rcs& rcs) {
    json j = json::object();
    for (std::size_t i = 0; i < s.move_count() && i < rcs.per_move.size(); ++i) {
        json list = json::array();
        for (const auto& c : rcs.per_move[i]) list.push_back(outcome_names(s, c));
        j[s.move(i).name] = list;
    }
    return j;
}

void check_rcs_cmd(const Instance& in, const std::string&, const RunOptions&, CheckRecord& r) {
    const Sdf& s = need_sdf(in);
    auto report = [&](const std::string& label, const Sdf& on, const Rcs& rcs) {
        Verdict v = verify_rcs(on, rcs);
        std::vector<std::string> counts;
        for (std::size_t i = 0; i < on.move_count(); ++i)
            counts.push_back(on.move(i).name + ":" + std::to_string(rcs.per_move[i].size()));
        r.lines.push_back(label + ": " + verdict_text(v) + "  [" + join(counts) + "]");
        json j = verdict_json(v);
        j["source"] = label;
        j["choices"] = rcs_json(on, rcs);
        r.data["structures"].push_back(j);
        if (!v.ok) fail(r, label + ": " + v.witness);
    };
    r.data["structures"] = json::array();
    if (in.rcs) report("listed", s, *in.rcs);
    if (in.ap && in.po->actions().has_factorization())
        for (std::size_t i = 0; i < in.po->actions().agent_count(); ++i)
            report("agent " + in.po->actions().factorization().agents[i], in.ap->sdf, agent_rcs(*in.ap, i));
    if (r.data["structures"].empty()) throw Unavailable{"no reference choices listed and no agents"};
}

void window_record(const Instance& in, const std::string& name, std::size_t k, const WindowChoice& wc,
                   std::optional<bool> expect, CheckRecord& r, json& list) {
    json j = {{"name", name}, {"c0", verdict_json(wc.c0)}, {"c1", verdict_json(wc.c1)}, {"c2", verdict_json(wc.c2)},
              {"valid", wc.ok()}};
    std::string line = name + ": " + (wc.ok() ? "valid" : "invalid");
    for (const auto& [id, v] : {std::pair{"C0", &wc.c0}, {"C1", &wc.c1}, {"C2", &wc.c2}})
        if (!v->ok) line += std::string(", ") + id + " " + v->witness;
    if (expect && *expect != wc.ok()) fail(r, name + ": expected " + (*expect ? "valid" : "invalid"));
    if (in.ap && wc.ok()) {
        // Down-set and predecessors against their closed forms.
        const Sdf& s = in.ap->sdf;
        bool down = down_set(s, wc.choice) == expected_down_set(*in.ap, k, wc.choice);
        bool pred = predecessors(s, wc.choice) == expected_predecessors(*in.ap, k, wc.choice);
        j["down_set_closed_form"] = down;
        j["predecessors_closed_form"] = pred;
        j["predecessors"] = node_names(s, predecessors(s, wc.choice));
        line += std::string("; closed forms ") + (down && pred ? "ok" : "FAIL");
        if (!down) fail(r, name + ": down-set differs from the closed form");
        if (!pred) fail(r, name + ": predecessors differ from the closed form");
    }
    r.lines.push_back(line);
    list.push_back(j);
}

void check_window(const Instance& in, const std::string&, const RunOptions&, CheckRecord& r) {
    const PathOutcomes& po = need_paths(in);
    json list = json::array();
    for (const auto& w : in.windows)
        window_record(in, w.name, po.time().index_of(w.spec.t), window_choice(po, w.spec), w.expect_valid, r, list);
    for (const auto& a : in.agent_choices) {
        WindowChoice wc;
        try {
            wc = agent_choice(po, a.t, a.history, a.agent, a.g);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::not_an_event) throw;
            r.lines.push_back(a.name + ": " + e.what());
            list.push_back({{"name", a.name}, {"error", to_string(e.kind())}, {"witness", e.what()}});
            continue;
        }
        window_record(in, a.name, po.time().index_of(a.t), wc, std::nullopt, r, list);
    }
    if (list.empty()) r.lines.push_back("no window or agent choices listed");
    r.data["choices"] = list;
}

void check_filtration(const Instance& in, const std::string&, const RunOptions&, CheckRecord& r) {
    const Sdf& s = need_sdf(in);
    if (!in.filtration) throw Unavailable{"instance has no filtration"};
    const FiltrationEntry& f = *in.filtration;
    ConstructedEis c = f.observations ? eis_from_observations(s, f.move_times, f.g, *f.observations)
                                      : eis_from_filtration(s, f.move_times, f.g);
    r.lines.push_back(std::string(f.observations ? "with observations" : "filtration only") + ": " +
                      verdict_text(c.check));
    r.lines.push_back("  " + eis_text(s, c.eis));
    r.data["check"] = verdict_json(c.check);
    r.data["eis"] = eis_json(s, c.eis);
    if (!c.check.ok) fail(r, c.check.witness);
}

void check_roundtrip(const Instance& in, const std::string&, const RunOptions&, CheckRecord& r) {
    if (!in.reference) throw Unavailable{"no direct construction to compare with"};
    const ActionPathSdf& ap = need_ap(in);
    auto iso = find_sdf_isomorphism(ap.sdf, *in.reference);
    r.data["isomorphic"] = iso.has_value();
    if (!iso) {
        fail(r, "encoding is not isomorphic to the direct construction");
        r.lines.push_back("no isomorphism found");
        return;
    }
    json moves = json::object();
    for (std::size_t i = 0; i < ap.sdf.move_count(); ++i)
        moves[ap.sdf.move(i).name] = in.reference->move(iso->move_map[i]).name;
    json outcomes = json::object();
    for (std::size_t v = 0; v < ap.sdf.forest().outcome_count(); ++v)
        outcomes[ap.sdf.forest().outcome_label(v)] = in.reference->forest().outcome_label(iso->outcome_map[v]);
    r.data["moves"] = moves;
    r.data["outcomes"] = outcomes;
    std::vector<std::string> parts;
    for (const auto& [k, v] : moves.items()) parts.push_back(k + " -> " + v.get<std::string>());
    r.lines.push_back("isomorphic; moves " + join(parts));
}

using CheckFn = void (*)(const Instance&, const std::string&, const RunOptions&, CheckRecord&);

const std::vector<std::pair<std::string, CheckFn>>& table() {
    static const std::vector<std::pair<std::string, CheckFn>> t{
        {"verify", check_verify},
        {"ttree", check_ttree},
        {"enumerate-eis", check_enumerate_eis},
        {"predecessors", check_predecessors},
        {"classify", check_classify},
        {"adapted", check_adapted},
        {"apw", check_apw_cmd},
        {"apc", check_apc_cmd},
        {"measurability", check_measurability},
        {"eis", check_eis_cmd},
        {"rcs", check_rcs_cmd},
        {"window", check_window},
        {"filtration", check_filtration},
        {"roundtrip", check_roundtrip},
    };
    return t;
}

CheckFn lookup(const std::string& name) {
    for (const auto& [n, fn] : table())
        if (n == name) return fn;
    throw Error(ErrorKind::unknown_command, "unknown command \"" + name + "\" (" + join(command_names()) + ")");
}

}  // namespace

bool Report::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.ok; });
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [n, fn] : table()) out.push_back(n);
        return out;
    }();
    return names;
}

std::vector<std::string> default_commands(const Instance& in) {
    if (in.kind == "builtin") {
        if (in.name == "simple" || in.name == "variant")
            return {"verify", "ttree", "enumerate-eis", "predecessors", "adapted", "apw", "roundtrip"};
        return {"apw", "verify", "ttree", "rcs", "apc", "measurability"};
    }
    std::vector<std::string> out;
    if (in.kind == "action-path") out.push_back("apw");
    out.push_back("verify");
    out.push_back("ttree");
    if (!in.eis.empty()) out.push_back("eis");
    if (in.rcs) out.push_back("rcs");
    if (!in.adapted.empty()) out.push_back("adapted");
    if (!in.windows.empty() || !in.agent_choices.empty()) out.push_back("window");
    if (in.filtration) out.push_back("filtration");
    return out;
}

Report run(const Instance& in, const std::vector<std::string>& commands, const RunOptions& options) {
    Report rep;
    rep.kind = in.kind;
    rep.name = in.name;
    // Resolve every command first so a typo fails before any work is done.
    std::vector<std::pair<CheckFn, std::string>> plan;
    for (const auto& c : commands) {
        auto eq = c.find('=');
        plan.emplace_back(lookup(c.substr(0, eq)), eq == std::string::npos ? "" : c.substr(eq + 1));
    }
    for (std::size_t i = 0; i < plan.size(); ++i) {
        CheckRecord rec;
        rec.id = commands[i];
        auto start = std::chrono::steady_clock::now();
        try {
            plan[i].first(in, plan[i].second, options, rec);
        } catch (const Unavailable& u) {
            rec.lines.push_back(u.why);
            fail(rec, u.why);
        }
        rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        rep.checks.push_back(std::move(rec));
    }
    return rep;
}

std::string render_text(const Report& r) {
    std::ostringstream out;
    out << "instance " << (r.name.empty() ? "-" : r.name) << " (" << r.kind << ")\n";
    for (const auto& c : r.checks) {
        out << c.id << ": " << (c.ok ? "ok" : "FAIL") << (c.partial ? " (partial)" : "") << "  [" << std::fixed
            << std::setprecision(1) << c.millis << " ms]\n";
        for (const auto& line : c.lines) out << "  " << line << "\n";
    }
    out << "overall: " << (r.ok() ? "ok" : "FAIL") << "\n";
    return out.str();
}

std::string render_json(const Report& r, bool timing) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json j = {{"check", c.id}, {"ok", c.ok}};
        if (c.partial) j["partial"] = true;
        if (!c.witness.empty()) j["witness"] = c.witness;
        j["details"] = c.data;
        if (timing) j["millis"] = c.millis;
        checks.push_back(j);
    }
    json doc = {{"instance", {{"kind", r.kind}, {"name", r.name}}}, {"checks", checks}, {"ok", r.ok()}};
    return doc.dump(2) + "\n";
}

}  // namespace sdf::cli
