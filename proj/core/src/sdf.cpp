#include "sdf/sdf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace sdf {

// ---------------------------------------------------------------- scenarios

ScenarioSpace::ScenarioSpace(std::vector<std::string> labels, std::vector<IndexSet> atoms)
    : labels_(std::move(labels)), atoms_(std::move(atoms)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw Error(ErrorKind::invalid_argument, "scenario set is empty");
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != n)
        throw Error(ErrorKind::invalid_argument, "duplicate scenario label");
    IndexSet covered(n);
    for (const auto& a : atoms_) {
        if (a.universe() != n) throw Error(ErrorKind::invalid_argument, "atom over wrong universe");
        if (a.empty()) throw Error(ErrorKind::invalid_argument, "empty atom");
        if (a.intersects(covered)) throw Error(ErrorKind::invalid_argument, "atoms overlap");
        covered |= a;
    }
    if (covered != IndexSet::full(n)) throw Error(ErrorKind::invalid_argument, "atoms do not cover the scenarios");
    std::sort(atoms_.begin(), atoms_.end(), [](const IndexSet& a, const IndexSet& b) { return a.first() < b.first(); });
    atom_of_.assign(n, 0);
    for (std::size_t k = 0; k < atoms_.size(); ++k) atoms_[k].for_each([&](std::size_t w) { atom_of_[w] = k; });
}

ScenarioSpace ScenarioSpace::discrete(std::vector<std::string> labels) {
    std::vector<IndexSet> atoms;
    for (std::size_t w = 0; w < labels.size(); ++w) atoms.push_back(IndexSet(labels.size(), {w}));
    return ScenarioSpace(std::move(labels), std::move(atoms));
}

ScenarioSpace ScenarioSpace::trivial(std::vector<std::string> labels) {
    std::size_t n = labels.size();
    return ScenarioSpace(std::move(labels), {IndexSet::full(n)});
}

std::size_t ScenarioSpace::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error(ErrorKind::unknown_element, "scenario '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

bool ScenarioSpace::is_event(const IndexSet& e) const {
    if (e.universe() != size()) return false;
    for (const auto& a : atoms_)
        if (a.intersects(e) && !a.subset_of(e)) return false;
    return true;
}

std::vector<IndexSet> ScenarioSpace::events() const {
    const std::size_t k = atoms_.size();
    if (k > 20) throw Error(ErrorKind::size_cap_exceeded, "too many atoms to list all events");
    std::vector<IndexSet> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        IndexSet e(size());
        for (std::size_t j = 0; j < k; ++j)
            if (mask & (std::size_t{1} << j)) e |= atoms_[j];
        out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string ScenarioSpace::describe(const IndexSet& e) const {
    std::string s = "{";
    bool first = true;
    e.for_each([&](std::size_t w) {
        if (!first) s += ",";
        first = false;
        s += labels_[w];
    });
    return s + "}";
}

std::size_t RandomMove::at(std::size_t w) const {
    if (w >= assignment.size() || !assignment[w])
        throw Error(ErrorKind::invalid_argument, "random move " + name + " undefined at scenario " + std::to_string(w));
    return *assignment[w];
}

// ---------------------------------------------------------------- Sdf

Sdf::Sdf(SetForest forest, ScenarioSpace space, std::vector<std::size_t> projection, std::vector<RandomMove> moves)
    : forest_(std::move(forest)), space_(std::move(space)), projection_(std::move(projection)), moves_(std::move(moves)) {
    if (projection_.size() != forest_.size())
        throw Error(ErrorKind::invalid_argument, "projection must assign a scenario to every node");
    for (std::size_t x = 0; x < projection_.size(); ++x)
        if (projection_[x] >= space_.size())
            throw Error(ErrorKind::invalid_argument, "projection of node " + describe_node(x) + " out of range");
    std::set<std::string> names;
    for (const auto& m : moves_) {
        if (m.name.empty() || !names.insert(m.name).second)
            throw Error(ErrorKind::invalid_argument, "random move names must be unique and nonempty");
        if (m.domain.universe() != space_.size() || m.assignment.size() != space_.size())
            throw Error(ErrorKind::invalid_argument, "random move " + m.name + " has wrong scenario universe");
        for (std::size_t w = 0; w < space_.size(); ++w) {
            if (m.domain.test(w) != m.assignment[w].has_value())
                throw Error(ErrorKind::invalid_argument,
                            "random move " + m.name + ": domain and assignment disagree at scenario " + space_.label(w));
            if (m.assignment[w] && *m.assignment[w] >= forest_.size())
                throw Error(ErrorKind::invalid_argument, "random move " + m.name + " assigns an unknown node");
        }
    }
    outcome_scenario_.assign(forest_.outcome_count(), std::nullopt);
    for (std::size_t v = 0; v < forest_.outcome_count(); ++v) {
        std::size_t x = forest_.nodes_containing(v).first();
        if (x < forest_.size()) outcome_scenario_[v] = projection_[x];
    }
}

std::size_t Sdf::move_index(const std::string& name) const {
    for (std::size_t i = 0; i < moves_.size(); ++i)
        if (moves_[i].name == name) return i;
    throw Error(ErrorKind::unknown_element, "random move '" + name + "'");
}

IndexSet Sdf::outcomes_in(const IndexSet& event) const {
    IndexSet out(forest_.outcome_count());
    for (std::size_t v = 0; v < forest_.outcome_count(); ++v)
        if (outcome_scenario_[v] && event.test(*outcome_scenario_[v])) out.set(v);
    return out;
}

IndexSet Sdf::nodes_in(const IndexSet& event) const {
    IndexSet out(forest_.size());
    for (std::size_t x = 0; x < forest_.size(); ++x)
        if (event.test(projection_[x])) out.set(x);
    return out;
}

IndexSet Sdf::image(std::size_t move) const {
    IndexSet out(forest_.size());
    moves_.at(move).domain.for_each([&](std::size_t w) { out.set(moves_[move].at(w)); });
    return out;
}

bool Sdf::move_geq(std::size_t i, std::size_t j) const {
    const RandomMove& a = moves_.at(i);
    const RandomMove& b = moves_.at(j);
    if (!b.domain.subset_of(a.domain)) return false;
    bool ok = true;
    b.domain.for_each([&](std::size_t w) {
        if (ok && !poset().geq(a.at(w), b.at(w))) ok = false;
    });
    return ok;
}

// ---------------------------------------------------------------- verdicts

bool SdfVerdict::ok() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.verdict.ok; });
}

bool SdfVerdict::partial() const {
    return std::any_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.verdict.partial; });
}

const Verdict& SdfVerdict::axiom(const std::string& id) const {
    for (const auto& a : axioms)
        if (a.id == id) return a.verdict;
    throw Error(ErrorKind::unknown_element, "axiom '" + id + "'");
}

namespace {

// Empty optional on success, witness text otherwise.
std::optional<std::string> fibre_problem(const Sdf& s, std::vector<IndexSet>* out) {
    const ScenarioSpace& om = s.space();
    std::vector<IndexSet> fib(om.size(), IndexSet(s.forest().size()));
    for (std::size_t x = 0; x < s.forest().size(); ++x) fib[s.scenario_of_node(x)].set(x);
    for (std::size_t w = 0; w < om.size(); ++w)
        if (fib[w].empty()) return "no node projects to scenario " + om.label(w) + " (projection not surjective)";
    if (!is_forest(s.poset())) return "forest order is not a forest, components undefined";
    for (const auto& block : connected_components(s.poset())) {
        std::size_t w = s.scenario_of_node(block.first());
        if (block != fib[w]) {
            IndexSet diff = (block - fib[w]) | (fib[w] - block);
            return "component containing " + s.describe_node(block.first()) + " differs from the fibre of scenario " +
                   om.label(w) + " at node " + s.describe_node(diff.first());
        }
    }
    if (out) *out = std::move(fib);
    return std::nullopt;
}

Verdict check_3a(const Sdf& s, const std::vector<RandomMove>& fam) {
    for (const auto& m : fam) {
        if (!s.space().is_event(m.domain))
            return Verdict::fail(m.name + ": domain " + s.space().describe(m.domain) + " is not an event");
        std::optional<std::string> bad;
        m.domain.for_each([&](std::size_t w) {
            if (bad) return;
            std::size_t x = m.at(w);
            if (s.scenario_of_node(x) != w)
                bad = m.name + "(" + s.space().label(w) + ") = " + s.describe_node(x) + " projects to scenario " +
                      s.space().label(s.scenario_of_node(x));
            else if (!s.is_move_node(x))
                bad = m.name + "(" + s.space().label(w) + ") = " + s.describe_node(x) + " is a terminal node";
        });
        if (bad) return Verdict::fail(*bad);
    }
    return Verdict::pass();
}

Verdict check_3b(const Sdf& s, const std::vector<RandomMove>& fam) {
    IndexSet covered(s.forest().size());
    for (const auto& m : fam) m.domain.for_each([&](std::size_t w) { covered.set(m.at(w)); });
    for (std::size_t x = 0; x < s.forest().size(); ++x)
        if (s.is_move_node(x) && !covered.test(x))
            return Verdict::fail("move " + s.describe_node(x) + " lies in the image of no random move");
    return Verdict::pass();
}

bool family_geq(const Sdf& s, const RandomMove& a, const RandomMove& b) {
    if (!b.domain.subset_of(a.domain)) return false;
    bool ok = true;
    b.domain.for_each([&](std::size_t w) {
        if (ok && !s.poset().geq(a.at(w), b.at(w))) ok = false;
    });
    return ok;
}

Verdict check_3c(const Sdf& s, const std::vector<RandomMove>& fam) {
    for (const auto& a : fam)
        for (const auto& b : fam) {
            IndexSet common = a.domain & b.domain;
            std::optional<std::size_t> hit;
            common.for_each([&](std::size_t w) {
                if (!hit && s.poset().geq(a.at(w), b.at(w))) hit = w;
            });
            if (hit && !family_geq(s, a, b))
                return Verdict::fail(a.name + "(" + s.space().label(*hit) + ") contains " + b.name + "(" +
                                     s.space().label(*hit) + ") but " + a.name + " >= " + b.name + " fails");
        }
    return Verdict::pass();
}

Verdict check_3d(const Sdf& s, const std::vector<RandomMove>& fam) {
    for (const auto& m : fam) {
        std::size_t roots = 0;
        m.domain.for_each([&](std::size_t w) { roots += s.is_root(m.at(w)) ? 1 : 0; });
        if (roots != 0 && roots != m.domain.count())
            return Verdict::fail(m.name + " is a root at " + std::to_string(roots) + " of " +
                                 std::to_string(m.domain.count()) + " scenarios");
    }
    return Verdict::pass();
}

RandomMove merge_sections(const Sdf& s, const std::vector<RandomMove>& members) {
    RandomMove out;
    out.domain = IndexSet(s.space().size());
    out.assignment.assign(s.space().size(), std::nullopt);
    for (const auto& m : members) {
        out.name += (out.name.empty() ? "" : "+") + m.name;
        out.domain |= m.domain;
        m.domain.for_each([&](std::size_t w) { out.assignment[w] = m.at(w); });
    }
    return out;
}

bool same_family(const std::vector<RandomMove>& a, const std::vector<RandomMove>& b) {
    auto key = [](const std::vector<RandomMove>& f) {
        std::set<std::pair<IndexSet, std::vector<std::optional<std::size_t>>>> k;
        for (const auto& m : f) k.insert({m.domain, m.assignment});
        return k;
    };
    return key(a) == key(b);
}

// 0: no root values seen, 1: only roots, 2: only non-roots, 3: both.
unsigned root_status(const Sdf& s, const RandomMove& m) {
    unsigned st = 0;
    m.domain.for_each([&](std::size_t w) { st |= s.is_root(m.at(w)) ? 1u : 2u; });
    return st;
}

Verdict check_maximality(const Sdf& s, const VerifyOptions& opt) {
    const auto& X = s.moves();
    const std::size_t k = X.size();
    auto refuted_by = [&](const std::vector<std::vector<std::size_t>>& blocks) -> std::optional<std::string> {
        std::vector<RandomMove> fam;
        std::string merged;
        for (const auto& b : blocks) {
            std::vector<RandomMove> members;
            for (auto i : b) members.push_back(X[i]);
            fam.push_back(merge_sections(s, members));
            if (b.size() > 1) merged += (merged.empty() ? "" : ", ") + fam.back().name;
        }
        if (same_family(fam, X)) return std::nullopt;
        AxiomResult r = check_section_axioms(s, fam);
        if (!r.verdict.ok) return std::nullopt;
        return "merging " + merged + " gives a coarser family satisfying 3a-3d";
    };

    if (k > opt.max_x) {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                if (X[i].domain.intersects(X[j].domain)) continue;
                std::vector<std::vector<std::size_t>> blocks{{i, j}};
                for (std::size_t m = 0; m < k; ++m)
                    if (m != i && m != j) blocks.push_back({m});
                if (auto w = refuted_by(blocks)) return Verdict::fail(*w);
            }
        Verdict v = Verdict::pass();
        v.partial = true;
        v.notes.push_back("only pairwise merges tried: " + std::to_string(k) + " random moves exceed the exhaustive cap of " +
                          std::to_string(opt.max_x));
        return v;
    }

    // A coarser family satisfying 3b and 3c covers each move exactly once
    // (two sections agreeing at some scenario are forced equal by 3c), so it
    // corresponds to a partition of X into blocks with disjoint domains.
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<IndexSet> block_domain;
    std::vector<unsigned> block_status;
    std::size_t work = 0;
    std::optional<std::string> witness;
    std::function<void(std::size_t)> place = [&](std::size_t i) {
        if (witness) return;
        if (++work > opt.work_cap)
            throw Error(ErrorKind::size_cap_exceeded,
                        "axiom 3e search exceeded " + std::to_string(opt.work_cap) + " work units");
        if (i == k) {
            bool coarser = std::any_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.size() > 1; });
            if (coarser) witness = refuted_by(blocks);
            return;
        }
        unsigned st = root_status(s, X[i]);
        for (std::size_t b = 0; b < blocks.size() && !witness; ++b) {
            if (block_domain[b].intersects(X[i].domain)) continue;
            // A block mixing roots and non-roots cannot satisfy 3d.
            if ((block_status[b] | st) == 3u) continue;
            IndexSet saved = block_domain[b];
            unsigned saved_st = block_status[b];
            blocks[b].push_back(i);
            block_domain[b] |= X[i].domain;
            block_status[b] |= st;
            place(i + 1);
            blocks[b].pop_back();
            block_domain[b] = saved;
            block_status[b] = saved_st;
        }
        if (witness) return;
        blocks.push_back({i});
        block_domain.push_back(X[i].domain);
        block_status.push_back(st);
        place(i + 1);
        blocks.pop_back();
        block_domain.pop_back();
        block_status.pop_back();
    };
    place(0);
    if (witness) return Verdict::fail(*witness);
    return Verdict::pass();
}

}  // namespace

AxiomResult check_section_axioms(const Sdf& s, const std::vector<RandomMove>& family) {
    if (Verdict v = check_3a(s, family); !v) return {"3a", v};
    if (Verdict v = check_3b(s, family); !v) return {"3b", v};
    if (Verdict v = check_3c(s, family); !v) return {"3c", v};
    if (Verdict v = check_3d(s, family); !v) return {"3d", v};
    return {"3a-3d", Verdict::pass()};
}

SdfVerdict verify_sdf(const Sdf& s, const VerifyOptions& options) {
    SdfVerdict out;
    out.axioms.push_back({"1", verify_own_representation(s.forest())});
    if (auto problem = fibre_problem(s, nullptr))
        out.axioms.push_back({"2", Verdict::fail(*problem)});
    else
        out.axioms.push_back({"2", Verdict::pass()});
    out.axioms.push_back({"3a", check_3a(s, s.moves())});
    out.axioms.push_back({"3b", check_3b(s, s.moves())});
    out.axioms.push_back({"3c", check_3c(s, s.moves())});
    out.axioms.push_back({"3d", check_3d(s, s.moves())});
    out.axioms.push_back({"3e", check_maximality(s, options)});
    Verdict f = Verdict::pass();
    f.notes.push_back("finitely many random moves: X itself is the required countable subfamily");
    out.axioms.push_back({"3f", f});
    return out;
}

std::vector<IndexSet> fibres(const Sdf& s) {
    std::vector<IndexSet> fib;
    if (auto problem = fibre_problem(s, &fib)) throw Error(ErrorKind::fibre_mismatch, *problem);
    return fib;
}

// ---------------------------------------------------------------- T-tree

TTree tmap_order(const Sdf& s) {
    TTree t;
    for (std::size_t i = 0; i < s.move_count(); ++i) t.entries.push_back({i, 0, 0});
    for (std::size_t v = 0; v < s.forest().outcome_count(); ++v) {
        if (auto x = s.forest().find_node(IndexSet(s.forest().outcome_count(), {v})))
            t.entries.push_back({std::nullopt, s.scenario_of_node(*x), v});
    }
    const std::size_t n = t.entries.size();
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> geq(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) {
        const auto& ea = t.entries[a];
        labels.push_back(ea.move ? s.move(*ea.move).name
                                 : "(" + s.space().label(ea.scenario) + "," + s.forest().outcome_label(ea.outcome) + ")");
        for (std::size_t b = 0; b < n; ++b) {
            const auto& eb = t.entries[b];
            if (ea.move && eb.move)
                geq[a][b] = s.move_geq(*ea.move, *eb.move);
            else if (ea.move)
                geq[a][b] = s.move(*ea.move).domain.test(eb.scenario) &&
                            s.forest().node(s.move(*ea.move).at(eb.scenario)).test(eb.outcome);
            else if (!eb.move)
                geq[a][b] = a == b;
        }
    }
    t.order = Poset(std::move(labels), std::move(geq));
    return t;
}

Verdict check_evaluation_bijection(const Sdf& s) {
    TTree t = tmap_order(s);
    struct Pair {
        std::size_t entry, scenario, node;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < t.entries.size(); ++a) {
        const auto& e = t.entries[a];
        if (e.move) {
            s.move(*e.move).domain.for_each([&](std::size_t w) { pairs.push_back({a, w, s.move(*e.move).at(w)}); });
        } else {
            auto x = s.forest().find_node(IndexSet(s.forest().outcome_count(), {e.outcome}));
            pairs.push_back({a, e.scenario, *x});
        }
    }
    std::vector<int> hits(s.forest().size(), -1);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (hits[pairs[k].node] >= 0)
            return Verdict::fail("evaluation not injective: " + t.order.label(pairs[k].entry) + " and " +
                                 t.order.label(pairs[static_cast<std::size_t>(hits[pairs[k].node])].entry) +
                                 " both evaluate to " + s.describe_node(pairs[k].node));
        hits[pairs[k].node] = static_cast<int>(k);
    }
    for (std::size_t x = 0; x < hits.size(); ++x)
        if (hits[x] < 0) return Verdict::fail("node " + s.describe_node(x) + " is not an evaluation");
    for (const auto& p : pairs)
        for (const auto& q : pairs) {
            bool lhs = t.order.geq(p.entry, q.entry) && p.scenario == q.scenario;
            bool rhs = s.poset().geq(p.node, q.node);
            if (lhs != rhs)
                return Verdict::fail("order mismatch between " + t.order.label(p.entry) + "@" + s.space().label(p.scenario) +
                                     " and " + t.order.label(q.entry) + "@" + s.space().label(q.scenario));
        }
    Verdict v = Verdict::pass();
    v.notes.push_back("|T.Omega| = " + std::to_string(pairs.size()) + " = |F|");
    return v;
}

Verdict check_derived_tree(const Sdf& s) {
    for (std::size_t x = 0; x < s.forest().size(); ++x)
        if (s.is_root(x) && s.is_terminal(x))
            throw Error(ErrorKind::roots_not_moves,
                        "root " + s.describe_node(x) + " of scenario " + s.space().label(s.scenario_of_node(x)) +
                            " is terminal");
    TTree t = tmap_order(s);
    const Poset& p = t.order;
    if (!is_forest(p)) return Verdict::fail("(T, >=T) is not a forest");
    if (!is_rooted_forest(p)) return Verdict::fail("(T, >=T) is not rooted");
    if (auto n = connected_components(p).size(); n != 1)
        return Verdict::fail("(T, >=T) has " + std::to_string(n) + " components");
    if (auto pair = unseparated_pair(p))
        return Verdict::fail(p.label(pair->first) + " and " + p.label(pair->second) + " are not separated");
    IndexSet moves = minimal_elements(p).complement();
    for (std::size_t a = 0; a < t.entries.size(); ++a)
        if (moves.test(a) != t.entries[a].move.has_value())
            return Verdict::fail(p.label(a) + (moves.test(a) ? " is a move of T but not a random move"
                                                             : " is a random move but terminal in T"));
    return Verdict::pass();
}

Sdf drop_moveless_scenarios(const Sdf& s) {
    const ScenarioSpace& om = s.space();
    IndexSet keep(om.size());
    for (std::size_t x = 0; x < s.forest().size(); ++x)
        if (s.is_move_node(x)) keep.set(s.scenario_of_node(x));
    auto kept = keep.elements();
    if (kept.empty()) throw Error(ErrorKind::precondition_violation, "no scenario has a move");
    std::vector<std::size_t> new_w(om.size(), om.size());
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < kept.size(); ++k) {
        new_w[kept[k]] = k;
        labels.push_back(om.label(kept[k]));
    }
    std::vector<IndexSet> atoms;
    for (const auto& a : om.atoms()) {
        IndexSet t(kept.size());
        (a & keep).for_each([&](std::size_t w) { t.set(new_w[w]); });
        if (t.any()) atoms.push_back(t);
    }
    std::vector<std::size_t> new_v(s.forest().outcome_count(), 0);
    std::vector<std::string> outcome_labels;
    for (std::size_t v = 0; v < s.forest().outcome_count(); ++v) {
        auto w = s.scenario_of_outcome(v);
        if (w && keep.test(*w)) {
            new_v[v] = outcome_labels.size();
            outcome_labels.push_back(s.forest().outcome_label(v));
        }
    }
    std::vector<std::size_t> new_x(s.forest().size(), s.forest().size());
    std::vector<IndexSet> nodes;
    std::vector<std::size_t> proj;
    for (std::size_t x = 0; x < s.forest().size(); ++x) {
        if (!keep.test(s.scenario_of_node(x))) continue;
        IndexSet node(outcome_labels.size());
        s.forest().node(x).for_each([&](std::size_t v) { node.set(new_v[v]); });
        new_x[x] = nodes.size();
        nodes.push_back(node);
        proj.push_back(new_w[s.scenario_of_node(x)]);
    }
    std::vector<RandomMove> moves;
    for (const auto& m : s.moves()) {
        RandomMove r{m.name, IndexSet(kept.size()), std::vector<std::optional<std::size_t>>(kept.size())};
        m.domain.for_each([&](std::size_t w) {
            if (!keep.test(w)) return;
            r.domain.set(new_w[w]);
            r.assignment[new_w[w]] = new_x[m.at(w)];
        });
        moves.push_back(std::move(r));
    }
    return Sdf(SetForest(std::move(outcome_labels), std::move(nodes)), ScenarioSpace(std::move(labels), std::move(atoms)),
               std::move(proj), std::move(moves));
}

std::optional<SdfIsomorphism> find_sdf_isomorphism(const Sdf& a, const Sdf& b) {
    const std::size_t n_w = a.space().size();
    if (b.space().size() != n_w || a.forest().outcome_count() != b.forest().outcome_count() ||
        a.forest().size() != b.forest().size() || a.move_count() != b.move_count() ||
        a.space().atoms().size() != b.space().atoms().size())
        return std::nullopt;
    if (n_w > 8) throw Error(ErrorKind::size_cap_exceeded, "scenario permutation search limited to 8 scenarios");

    std::set<IndexSet> atoms_b(b.space().atoms().begin(), b.space().atoms().end());
    std::vector<std::size_t> sigma(n_w);
    for (std::size_t k = 0; k < n_w; ++k) sigma[k] = k;
    do {
        bool atoms_ok = true;
        for (const auto& atom : a.space().atoms()) {
            IndexSet img(n_w);
            atom.for_each([&](std::size_t w) { img.set(sigma[w]); });
            if (!atoms_b.count(img)) atoms_ok = false;
        }
        if (!atoms_ok) continue;

        SdfIsomorphism iso;
        auto allowed = [&](std::size_t v, std::size_t u) {
            auto wa = a.scenario_of_outcome(v);
            auto wb = b.scenario_of_outcome(u);
            return wa && wb && sigma[*wa] == *wb;
        };
        auto accept = [&](const std::vector<std::size_t>& phi) {
            std::vector<std::size_t> node_map(a.forest().size());
            for (std::size_t x = 0; x < a.forest().size(); ++x) {
                IndexSet img(b.forest().outcome_count());
                a.forest().node(x).for_each([&](std::size_t v) { img.set(phi[v]); });
                node_map[x] = *b.forest().find_node(img);
                if (b.scenario_of_node(node_map[x]) != sigma[a.scenario_of_node(x)]) return false;
            }
            std::vector<std::size_t> move_map(a.move_count(), b.move_count());
            std::vector<bool> used(b.move_count(), false);
            for (std::size_t i = 0; i < a.move_count(); ++i) {
                RandomMove img{"", IndexSet(n_w), std::vector<std::optional<std::size_t>>(n_w)};
                a.move(i).domain.for_each([&](std::size_t w) {
                    img.domain.set(sigma[w]);
                    img.assignment[sigma[w]] = node_map[a.move(i).at(w)];
                });
                for (std::size_t j = 0; j < b.move_count(); ++j)
                    if (!used[j] && img.same_map(b.move(j))) {
                        move_map[i] = j;
                        used[j] = true;
                        break;
                    }
                if (move_map[i] == b.move_count()) return false;
            }
            iso.scenario_map = sigma;
            iso.outcome_map = phi;
            iso.node_map = std::move(node_map);
            iso.move_map = std::move(move_map);
            return true;
        };
        if (find_outcome_bijection(a.forest(), b.forest(), allowed, accept)) return iso;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return std::nullopt;
}

// ---------------------------------------------------------------- examples

namespace {

struct ExampleBuilder {
    std::vector<std::string> outcomes;
    std::vector<IndexSet> nodes;
    std::vector<std::size_t> proj;

    std::size_t outcome(const std::string& label) {
        auto it = std::find(outcomes.begin(), outcomes.end(), label);
        return static_cast<std::size_t>(it - outcomes.begin());
    }
    std::size_t node(const std::vector<std::string>& members, std::size_t scenario) {
        IndexSet x(outcomes.size());
        for (const auto& m : members) x.set(outcome(m));
        nodes.push_back(x);
        proj.push_back(scenario);
        return nodes.size() - 1;
    }
};

std::string triple(int w, int k, int m) {
    return "(" + std::to_string(w) + "," + std::to_string(k) + "," + std::to_string(m) + ")";
}

RandomMove section(const std::string& name, std::size_t n_w, const std::vector<std::pair<std::size_t, std::size_t>>& at) {
    RandomMove r{name, IndexSet(n_w), std::vector<std::optional<std::size_t>>(n_w)};
    for (auto [w, x] : at) {
        r.domain.set(w);
        r.assignment[w] = x;
    }
    return r;
}

}  // namespace

Sdf build_simple() {
    ExampleBuilder b;
    for (int w = 1; w <= 2; ++w)
        for (int k = 1; k <= 2; ++k)
            for (int m = 1; m <= 2; ++m) b.outcomes.push_back(triple(w, k, m));
    std::size_t root[2], mid[2][2];
    for (int w = 1; w <= 2; ++w) {
        root[w - 1] = b.node({triple(w, 1, 1), triple(w, 1, 2), triple(w, 2, 1), triple(w, 2, 2)}, w - 1);
        for (int k = 1; k <= 2; ++k) mid[w - 1][k - 1] = b.node({triple(w, k, 1), triple(w, k, 2)}, w - 1);
    }
    for (int w = 1; w <= 2; ++w)
        for (int k = 1; k <= 2; ++k)
            for (int m = 1; m <= 2; ++m) b.node({triple(w, k, m)}, w - 1);
    std::vector<RandomMove> moves{section("x0", 2, {{0, root[0]}, {1, root[1]}}),
                                  section("x1", 2, {{0, mid[0][0]}, {1, mid[1][0]}}),
                                  section("x2", 2, {{0, mid[0][1]}, {1, mid[1][1]}})};
    return Sdf(SetForest(b.outcomes, b.nodes), ScenarioSpace::discrete({"1", "2"}), b.proj, std::move(moves));
}

Sdf build_variant() {
    ExampleBuilder b;
    b.outcomes = {triple(1, 1, 1), triple(1, 1, 2), "(1,2)"};
    for (int k = 1; k <= 2; ++k)
        for (int m = 1; m <= 2; ++m) b.outcomes.push_back(triple(2, k, m));
    std::size_t root1 = b.node({triple(1, 1, 1), triple(1, 1, 2), "(1,2)"}, 0);
    std::size_t mid11 = b.node({triple(1, 1, 1), triple(1, 1, 2)}, 0);
    std::size_t root2 = b.node({triple(2, 1, 1), triple(2, 1, 2), triple(2, 2, 1), triple(2, 2, 2)}, 1);
    std::size_t mid21 = b.node({triple(2, 1, 1), triple(2, 1, 2)}, 1);
    std::size_t mid22 = b.node({triple(2, 2, 1), triple(2, 2, 2)}, 1);
    for (const auto& o : std::vector<std::string>(b.outcomes)) b.node({o}, o[1] == '1' ? 0 : 1);
    std::vector<RandomMove> moves{section("x0", 2, {{0, root1}, {1, root2}}),
                                  section("x1", 2, {{0, mid11}, {1, mid21}}),
                                  section("x2", 2, {{1, mid22}})};
    return Sdf(SetForest(b.outcomes, b.nodes), ScenarioSpace::discrete({"1", "2"}), b.proj, std::move(moves));
}

}  // namespace sdf
