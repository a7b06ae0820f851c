#include "sdf_cli/instance.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "sdf/generators.hpp"

namespace sdf::cli {

using json = nlohmann::ordered_json;

namespace {

std::string type_name(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return "null";
        case json::value_t::object: return "object";
        case json::value_t::array: return "array";
        case json::value_t::string: return "string " + j.dump();
        case json::value_t::boolean: return "boolean";
        case json::value_t::number_integer:
        case json::value_t::number_unsigned:
        case json::value_t::number_float: return "number " + j.dump();
        default: return "value";
    }
}

std::string escape_token(const std::string& key) {
    std::string out;
    for (char ch : key) {
        if (ch == '~') out += "~0";
        else if (ch == '/') out += "~1";
        else out += ch;
    }
    return out;
}

// A value together with its JSON pointer.
class Cur {
public:
    Cur(const json& j, std::string ptr) : j_(&j), ptr_(std::move(ptr)) {}

    const json& raw() const { return *j_; }
    const std::string& ptr() const { return ptr_; }
    std::string where() const { return ptr_.empty() ? "/" : ptr_; }

    [[noreturn]] void schema(const std::string& expected) const {
        throw Error(ErrorKind::schema_error, "at " + where() + ": expected " + expected + ", found " +
                                                 type_name(*j_));
    }
    [[noreturn]] void unresolved(const std::string& what) const {
        throw Error(ErrorKind::unresolved_reference, "at " + where() + ": " + what);
    }
    [[noreturn]] void invalid(const std::string& what) const {
        throw Error(ErrorKind::schema_error, "at " + where() + ": " + what);
    }

    bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }
    Cur at(const std::string& key) const {
        if (!j_->is_object()) schema("object");
        auto it = j_->find(key);
        if (it == j_->end())
            throw Error(ErrorKind::schema_error, "at " + where() + ": missing required key \"" + key + "\"");
        return Cur(*it, ptr_ + "/" + escape_token(key));
    }
    std::optional<Cur> get(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return at(key);
    }

    std::vector<Cur> items() const {
        if (!j_->is_array()) schema("array");
        std::vector<Cur> out;
        for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back((*j_)[i], ptr_ + "/" + std::to_string(i));
        return out;
    }
    std::vector<std::pair<std::string, Cur>> fields() const {
        if (!j_->is_object()) schema("object");
        std::vector<std::pair<std::string, Cur>> out;
        for (auto it = j_->begin(); it != j_->end(); ++it)
            out.emplace_back(it.key(), Cur(it.value(), ptr_ + "/" + escape_token(it.key())));
        return out;
    }

    std::string str() const {
        if (!j_->is_string()) schema("string");
        return j_->get<std::string>();
    }
    bool boolean() const {
        if (!j_->is_boolean()) schema("boolean");
        return j_->get<bool>();
    }
    long integer() const {
        if (!j_->is_number_integer()) schema("integer");
        return j_->get<long>();
    }
    std::vector<std::string> strings() const {
        std::vector<std::string> out;
        for (const auto& c : items()) out.push_back(c.str());
        return out;
    }
    Time time() const {
        if (j_->is_number_integer()) {
            long v = j_->get<long>();
            if (v < 0) invalid("time points must be nonnegative");
            return Time(v);
        }
        if (!j_->is_string()) schema("time as \"p\" or \"p/q\"");
        try {
            Time t = parse_time(j_->get<std::string>());
            if (t < Time(0)) invalid("time points must be nonnegative");
            return t;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::schema_error) throw;
            invalid(e.what());
        }
    }

private:
    const json* j_;
    std::string ptr_;
};

std::size_t lookup(const std::vector<std::string>& labels, const Cur& c, const char* what) {
    std::string s = c.str();
    auto it = std::find(labels.begin(), labels.end(), s);
    if (it == labels.end()) c.unresolved(std::string("unknown ") + what + " \"" + s + "\"");
    return static_cast<std::size_t>(it - labels.begin());
}

std::vector<std::string> unique_strings(const Cur& c, const char* what) {
    std::vector<std::string> out = c.strings();
    std::vector<std::string> sorted = out;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) c.invalid(std::string("duplicate ") + what + " \"" + *dup + "\"");
    if (out.empty()) c.invalid(std::string("at least one ") + what + " required");
    return out;
}

IndexSet label_set(const std::vector<std::string>& labels, const Cur& c, const char* what) {
    IndexSet out(labels.size());
    for (const auto& item : c.items()) out.set(lookup(labels, item, what));
    return out;
}

ScenarioSpace parse_space(const Cur& doc) {
    Cur sc = doc.at("scenarios");
    std::vector<std::string> labels = unique_strings(sc, "scenario");
    if (auto atoms = doc.get("atoms")) {
        std::vector<IndexSet> parts;
        for (const auto& a : atoms->items()) parts.push_back(label_set(labels, a, "scenario"));
        try {
            return ScenarioSpace(labels, parts);
        } catch (const Error& e) {
            atoms->invalid(e.what());
        }
    }
    return ScenarioSpace::discrete(labels);
}

// Outcome set for `spec`, either a list of outcome labels or a node name.
IndexSet outcome_list(const std::vector<std::string>& outcomes, const Cur& c) {
    if (!c.raw().is_array()) c.schema("array of outcome labels");
    return label_set(outcomes, c, "outcome");
}

// ---- explicit decision forests ----

struct ExplicitNodes {
    std::vector<IndexSet> nodes;
    std::map<std::string, std::size_t> by_name;
};

std::size_t node_ref(const ExplicitNodes& en, const std::vector<std::string>& outcomes, const Cur& c) {
    if (c.raw().is_string()) {
        auto it = en.by_name.find(c.str());
        if (it == en.by_name.end()) c.unresolved("unknown node \"" + c.str() + "\"");
        return it->second;
    }
    IndexSet s = outcome_list(outcomes, c);
    auto it = std::find(en.nodes.begin(), en.nodes.end(), s);
    if (it == en.nodes.end()) c.unresolved("no node with these outcomes");
    return static_cast<std::size_t>(it - en.nodes.begin());
}

Sdf parse_explicit(const Cur& doc, const ScenarioSpace& space) {
    std::vector<std::string> outcomes = unique_strings(doc.at("outcomes"), "outcome");
    ExplicitNodes en;
    for (const auto& n : doc.at("nodes").items()) {
        if (n.raw().is_object()) {
            std::string name = n.at("name").str();
            if (!en.by_name.emplace(name, en.nodes.size()).second) n.at("name").invalid("duplicate node name");
            en.nodes.push_back(outcome_list(outcomes, n.at("outcomes")));
        } else {
            en.nodes.push_back(outcome_list(outcomes, n));
        }
        if (en.nodes.back().empty()) n.invalid("nodes must be nonempty");
    }
    SetForest forest = [&] {
        try {
            return SetForest(outcomes, en.nodes);
        } catch (const Error& e) {
            doc.at("nodes").invalid(e.what());
        }
    }();

    std::vector<std::size_t> projection(en.nodes.size(), 0);
    if (auto os = doc.get("outcome_scenario")) {
        std::vector<std::optional<std::size_t>> of(outcomes.size());
        for (const auto& [key, val] : os->fields()) {
            auto it = std::find(outcomes.begin(), outcomes.end(), key);
            if (it == outcomes.end()) os->unresolved("unknown outcome \"" + key + "\"");
            of[static_cast<std::size_t>(it - outcomes.begin())] = lookup(space.labels(), val, "scenario");
        }
        for (std::size_t x = 0; x < en.nodes.size(); ++x) {
            std::optional<std::size_t> scen;
            for (std::size_t v : en.nodes[x].elements()) {
                if (!of[v]) os->invalid("outcome \"" + outcomes[v] + "\" has no scenario");
                if (scen && *scen != *of[v])
                    os->invalid("node " + forest.describe(en.nodes[x]) + " mixes scenarios");
                scen = of[v];
            }
            projection[x] = *scen;
        }
    } else if (auto pr = doc.get("projection")) {
        std::vector<Cur> items = pr->items();
        if (items.size() != en.nodes.size()) pr->invalid("projection must list a scenario for every node");
        for (std::size_t x = 0; x < items.size(); ++x) projection[x] = lookup(space.labels(), items[x], "scenario");
    } else {
        doc.invalid("missing required key \"outcome_scenario\" or \"projection\"");
    }

    std::vector<RandomMove> moves;
    for (const auto& m : doc.at("moves").items()) {
        RandomMove rm;
        rm.name = m.at("name").str();
        rm.domain = IndexSet(space.size());
        rm.assignment.assign(space.size(), std::nullopt);
        for (const auto& [scen, ref] : m.at("nodes").fields()) {
            auto it = std::find(space.labels().begin(), space.labels().end(), scen);
            if (it == space.labels().end()) m.at("nodes").unresolved("unknown scenario \"" + scen + "\"");
            std::size_t w = static_cast<std::size_t>(it - space.labels().begin());
            rm.domain.set(w);
            rm.assignment[w] = node_ref(en, outcomes, ref);
        }
        if (auto d = m.get("domain"))
            if (label_set(space.labels(), *d, "scenario") != rm.domain)
                d->invalid("domain must list exactly the scenarios with an assigned node");
        moves.push_back(std::move(rm));
    }
    try {
        return Sdf(std::move(forest), space, std::move(projection), std::move(moves));
    } catch (const Error& e) {
        doc.at("moves").invalid(e.what());
    }
}

// ---- action paths ----

ActionSpace parse_actions(const Cur& doc) {
    auto agents = doc.get("agents");
    auto acts = doc.get("actions");
    if (!agents) {
        if (!acts) doc.invalid("missing required key \"actions\"");
        return ActionSpace(unique_strings(*acts, "action"));
    }
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> sets;
    for (const auto& a : agents->items()) {
        names.push_back(a.at("name").str());
        sets.push_back(unique_strings(a.at("actions"), "agent action"));
    }
    if (names.empty()) agents->invalid("at least one agent required");
    try {
        if (!acts) return ActionSpace::product(names, sets);
        std::vector<std::string> labels = unique_strings(*acts, "action");
        Cur coords = doc.at("coords");
        Factorization f{names, sets, std::vector<std::vector<std::uint32_t>>(labels.size())};
        for (std::size_t a = 0; a < labels.size(); ++a) {
            Cur c = coords.at(labels[a]);
            std::vector<Cur> items = c.items();
            if (items.size() != names.size()) c.invalid("one coordinate per agent required");
            for (std::size_t i = 0; i < items.size(); ++i)
                f.coords[a].push_back(static_cast<std::uint32_t>(lookup(sets[i], items[i], "agent action")));
        }
        return ActionSpace(labels, std::move(f));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::schema_error || e.kind() == ErrorKind::unresolved_reference) throw;
        agents->invalid(e.what());
    }
}

TimeAxis parse_axis(const Cur& doc) {
    Cur t = doc.at("times");
    std::vector<Time> points;
    for (const auto& c : t.items()) points.push_back(c.time());
    try {
        return TimeAxis(points);
    } catch (const Error& e) {
        t.invalid(e.what());
    }
}

PathOutcomes parse_path_outcomes(const Cur& doc, const ScenarioSpace& space) {
    TimeAxis axis = parse_axis(doc);
    if (auto gen = doc.get("generator")) {
        std::string name = gen->at("name").str();
        try {
            if (name == "product") return product_outcomes(space, axis, parse_actions(doc));
            if (name == "timing") {
                std::vector<std::string> agents;
                for (const auto& a : doc.at("agents").items())
                    agents.push_back(a.raw().is_string() ? a.str() : a.at("name").str());
                return timing_outcomes(space, axis, agents);
            }
            if (name == "up-and-out") {
                Cur price = gen->at("price");
                std::vector<std::vector<Time>> table(space.size());
                for (std::size_t w = 0; w < space.size(); ++w)
                    for (const auto& c : price.at(space.label(w)).items()) table[w].push_back(c.time());
                return up_and_out_outcomes(space, axis, table);
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::schema_error || e.kind() == ErrorKind::unresolved_reference) throw;
            gen->invalid(e.what());
        }
        gen->at("name").invalid("unknown generator \"" + name + "\" (product, timing, up-and-out)");
    }
    ActionSpace actions = parse_actions(doc);
    std::vector<PathOutcome> paths;
    for (const auto& p : doc.at("paths").items()) {
        PathOutcome o;
        o.scenario = lookup(space.labels(), p.at("scenario"), "scenario");
        Cur path = p.at("path");
        for (const auto& a : path.items()) o.path.push_back(static_cast<std::uint32_t>(lookup(actions.labels(), a, "action")));
        if (o.path.size() != axis.size()) path.invalid("path length must equal the number of time points");
        paths.push_back(std::move(o));
    }
    try {
        return PathOutcomes(axis, actions, space, std::move(paths));
    } catch (const Error& e) {
        doc.at("paths").invalid(e.what());
    }
}

// ---- optional sections ----

std::vector<std::string> outcome_labels(const Sdf& s) { return s.forest().outcomes(); }

std::vector<std::string> move_names(const Sdf& s) {
    std::vector<std::string> out;
    for (const auto& m : s.moves()) out.push_back(m.name);
    return out;
}

SubSigma parse_sigma(const Cur& c, const Sdf& s, std::size_t move) {
    std::vector<IndexSet> atoms;
    for (const auto& a : c.items()) atoms.push_back(label_set(s.space().labels(), a, "scenario"));
    try {
        return SubSigma(s.move(move).domain, atoms);
    } catch (const Error& e) {
        c.invalid(std::string("not a partition of the domain of ") + s.move(move).name + ": " + e.what());
    }
}

void parse_sections(const Cur& doc, Instance& in) {
    const Sdf& s = *in.sdf;
    std::vector<std::string> outcomes = outcome_labels(s);
    std::vector<std::string> moves = move_names(s);

    if (auto es = doc.get("eis")) {
        for (const auto& [name, body] : es->fields()) {
            Eis e;
            e.per_move.resize(s.move_count());
            std::vector<bool> seen(s.move_count(), false);
            for (const auto& [mv, atoms] : body.fields()) {
                auto it = std::find(moves.begin(), moves.end(), mv);
                if (it == moves.end()) body.unresolved("unknown random move \"" + mv + "\"");
                std::size_t i = static_cast<std::size_t>(it - moves.begin());
                e.per_move[i] = parse_sigma(atoms, s, i);
                seen[i] = true;
            }
            for (std::size_t i = 0; i < seen.size(); ++i)
                if (!seen[i]) body.invalid("no algebra for random move \"" + moves[i] + "\"");
            in.eis.push_back({name, std::move(e)});
        }
    }
    if (auto rc = doc.get("rcs")) {
        Rcs r;
        r.per_move.resize(s.move_count());
        for (const auto& [mv, list] : rc->fields()) {
            auto it = std::find(moves.begin(), moves.end(), mv);
            if (it == moves.end()) rc->unresolved("unknown random move \"" + mv + "\"");
            for (const auto& c : list.items())
                r.per_move[static_cast<std::size_t>(it - moves.begin())].push_back(outcome_list(outcomes, c));
        }
        in.rcs = std::move(r);
    }
    if (auto cs = doc.get("choices"))
        for (const auto& [name, list] : cs->fields())
            in.choices.push_back({name, outcome_list(outcomes, list), IndexSet()});
    if (auto ad = doc.get("adapted")) {
        for (const auto& row : ad->items()) {
            AdaptedExpectation x;
            Cur e = row.at("eis");
            x.eis = e.str();
            if (std::none_of(in.eis.begin(), in.eis.end(), [&](const NamedEis& n) { return n.name == x.eis; }))
                e.unresolved("unknown information structure \"" + x.eis + "\"");
            for (const auto& c : row.at("choices").items()) {
                std::string n = c.str();
                if (std::none_of(in.choices.begin(), in.choices.end(), [&](const NamedChoice& k) { return k.name == n; }))
                    c.unresolved("unknown choice \"" + n + "\"");
                x.choices.push_back(n);
            }
            if (auto ex = row.get("expect")) x.expect = ex->boolean();
            in.adapted.push_back(std::move(x));
        }
    }
    if (auto fl = doc.get("filtration")) {
        FiltrationEntry f;
        f.move_times.resize(s.move_count());
        std::vector<bool> seen(s.move_count(), false);
        Cur mt = fl->at("move_times");
        for (const auto& [mv, t] : mt.fields()) {
            auto it = std::find(moves.begin(), moves.end(), mv);
            if (it == moves.end()) mt.unresolved("unknown random move \"" + mv + "\"");
            std::size_t i = static_cast<std::size_t>(it - moves.begin());
            f.move_times[i] = t.time();
            seen[i] = true;
        }
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (!seen[i]) mt.invalid("no time for random move \"" + moves[i] + "\"");
        std::vector<Time> times;
        std::vector<SubSigma> algebras;
        Cur al = fl->at("algebras");
        for (const auto& a : al.items()) {
            times.push_back(a.at("time").time());
            std::vector<IndexSet> atoms;
            for (const auto& x : a.at("atoms").items()) atoms.push_back(label_set(s.space().labels(), x, "scenario"));
            try {
                algebras.emplace_back(s.space().all(), atoms);
            } catch (const Error& e) {
                a.at("atoms").invalid(e.what());
            }
        }
        try {
            f.g = Filtration(times, algebras);
        } catch (const Error& e) {
            al.invalid(e.what());
        }
        if (auto ob = fl->get("observations")) {
            ObservationFamily y;
            y.per_move.assign(s.move_count(), std::vector<long>(s.space().size(), 0));
            for (const auto& [mv, vals] : ob->fields()) {
                auto it = std::find(moves.begin(), moves.end(), mv);
                if (it == moves.end()) ob->unresolved("unknown random move \"" + mv + "\"");
                std::size_t i = static_cast<std::size_t>(it - moves.begin());
                for (const auto& [scen, v] : vals.fields()) {
                    auto sit = std::find(s.space().labels().begin(), s.space().labels().end(), scen);
                    if (sit == s.space().labels().end()) vals.unresolved("unknown scenario \"" + scen + "\"");
                    y.per_move[i][static_cast<std::size_t>(sit - s.space().labels().begin())] = v.integer();
                }
            }
            f.observations = std::move(y);
        }
        in.filtration = std::move(f);
    }
}

void parse_path_sections(const Cur& doc, Instance& in) {
    const PathOutcomes& po = *in.po;
    const auto& scen = po.space().labels();
    auto history = [&](const Cur& c, std::size_t k) {
        HistorySet h;
        for (const auto& p : c.items()) {
            Prefix pre;
            for (const auto& a : p.items()) pre.push_back(static_cast<std::uint32_t>(lookup(po.actions().labels(), a, "action")));
            if (pre.size() != k) p.invalid("history length must equal the index of its time point");
            h.insert(std::move(pre));
        }
        return h;
    };
    auto time_point = [&](const Cur& c) {
        Time t = c.time();
        if (!po.time().contains(t)) c.unresolved("time " + to_string(t) + " is not on the axis");
        return t;
    };
    if (auto wc = doc.get("window_choices")) {
        for (const auto& item : wc->items()) {
            WindowEntry e;
            e.name = item.at("name").str();
            e.spec.t = time_point(item.at("time"));
            std::size_t k = po.time().index_of(e.spec.t);
            e.spec.history = history(item.at("history"), k);
            e.spec.actions.assign(scen.size(), IndexSet(po.actions().size()));
            for (const auto& [s, acts] : item.at("actions").fields()) {
                auto it = std::find(scen.begin(), scen.end(), s);
                if (it == scen.end()) item.at("actions").unresolved("unknown scenario \"" + s + "\"");
                e.spec.actions[static_cast<std::size_t>(it - scen.begin())] = label_set(po.actions().labels(), acts, "action");
            }
            if (auto ex = item.get("expect_valid")) e.expect_valid = ex->boolean();
            in.windows.push_back(std::move(e));
        }
    }
    if (auto ac = doc.get("agent_choices")) {
        if (!po.actions().has_factorization()) ac->invalid("agent choices need agents");
        const Factorization& f = po.actions().factorization();
        for (const auto& item : ac->items()) {
            AgentChoiceEntry e;
            e.name = item.at("name").str();
            e.agent = lookup(f.agents, item.at("agent"), "agent");
            e.t = time_point(item.at("time"));
            e.history = history(item.at("history"), po.time().index_of(e.t));
            e.g.assign(scen.size(), std::nullopt);
            for (const auto& [s, v] : item.at("g").fields()) {
                auto it = std::find(scen.begin(), scen.end(), s);
                if (it == scen.end()) item.at("g").unresolved("unknown scenario \"" + s + "\"");
                e.g[static_cast<std::size_t>(it - scen.begin())] =
                    static_cast<std::uint32_t>(lookup(f.agent_actions[e.agent], v, "agent action"));
            }
            in.agent_choices.push_back(std::move(e));
        }
    }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

Instance parse_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte);
        std::string what = e.what();
        auto dash = what.find(": ");
        std::string detail = dash == std::string::npos ? what : what.substr(dash + 2);
        throw Error(ErrorKind::syntax_error, "line " + std::to_string(line) + ", column " +
                                                 std::to_string(col) + ": " + detail);
    }
    Cur root(doc, "");
    if (!doc.is_object()) root.schema("object");
    std::string kind = root.at("kind").str();
    Instance in;
    if (kind == "builtin") {
        Cur n = root.at("name");
        std::string name = n.str();
        const auto& names = builtin_names();
        if (std::find(names.begin(), names.end(), name) == names.end())
            n.unresolved("unknown builtin \"" + name + "\"");
        return load_builtin(name);
    }
    in.kind = kind;
    if (auto n = root.get("name")) in.name = n->str();
    if (kind == "explicit-sdf") {
        ScenarioSpace space = parse_space(root);
        in.sdf = parse_explicit(root, space);
    } else if (kind == "action-path") {
        ScenarioSpace space = parse_space(root);
        in.po = parse_path_outcomes(root, space);
        try {
            BuildOptions b;
            b.check_assumptions = false;
            b.verify = false;
            in.ap = build_action_path_sdf(*in.po, b);
            in.sdf = in.ap->sdf;
        } catch (const Error& e) {
            in.build_error = e.what();
        }
        parse_path_sections(root, in);
    } else {
        root.at("kind").invalid("unknown kind \"" + kind + "\" (explicit-sdf, action-path, builtin)");
    }
    if (in.sdf) parse_sections(root, in);
    return in;
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"simple", "variant", "timing", "upandout"};
    return names;
}

Instance load_builtin(const std::string& name) {
    Instance in;
    in.kind = "builtin";
    in.name = name;
    BuildOptions b;
    b.verify = false;
    if (name == "simple" || name == "variant") {
        bool variant = name == "variant";
        in.sdf = variant ? build_variant() : build_simple();
        in.catalog = variant ? variant_catalog(*in.sdf) : simple_catalog(*in.sdf);
        in.eis = in.catalog->eis;
        in.rcs = in.catalog->reference;
        in.choices = in.catalog->choices;
        in.po = variant ? variant_action_path() : simple_action_path();
        in.ap = build_action_path_sdf(*in.po, b);
        in.reference = in.sdf;
        return in;
    }
    if (name == "timing" || name == "upandout") {
        in.po = name == "timing" ? timing_example() : up_and_out_example();
        in.ap = build_action_path_sdf(*in.po, b);
        in.sdf = in.ap->sdf;
        return in;
    }
    throw Error(ErrorKind::unknown_element, "unknown builtin \"" + name + "\" (simple, variant, timing, upandout)");
}

}  // namespace sdf::cli
