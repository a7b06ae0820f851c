#include "sdf/choice.hpp"

namespace sdf {

IndexSet down_set(const Sdf& s, const IndexSet& c) {
    const SetForest& f = s.forest();
    IndexSet out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x)
        if (f.node(x).subset_of(c)) out.set(x);
    return out;
}

IndexSet predecessors(const Sdf& s, const IndexSet& c) {
    const Poset& p = s.poset();
    IndexSet below = down_set(s, c);
    std::vector<IndexSet> targets;
    below.for_each([&](std::size_t y) { targets.push_back(p.up(y) - below); });
    IndexSet out(p.size());
    for (std::size_t x = 0; x < p.size(); ++x)
        for (const auto& t : targets)
            if (p.up(x) == t) {
                out.set(x);
                break;
            }
    return out;
}

bool is_choice(const Sdf& s, const IndexSet& c) {
    if (c.universe() != s.forest().outcome_count() || c.empty()) return false;
    IndexSet covered(c.universe());
    down_set(s, c).for_each([&](std::size_t x) { covered |= s.forest().node(x); });
    return covered == c;
}

IndexSet preimage(const Sdf& s, std::size_t move, const IndexSet& nodes) {
    IndexSet out(s.space().size());
    const RandomMove& m = s.move(move);
    m.domain.for_each([&](std::size_t w) {
        if (nodes.test(m.at(w))) out.set(w);
    });
    return out;
}

namespace {

void require_choice(const Sdf& s, const IndexSet& c) {
    if (!is_choice(s, c))
        throw Error(ErrorKind::not_a_choice, s.forest().describe(c) + " is not a nonempty union of nodes");
}

}  // namespace

Classification classify(const Sdf& s, const IndexSet& c) {
    require_choice(s, c);
    Classification out;
    IndexSet pred = predecessors(s, c);
    out.non_redundant = true;
    for (std::size_t w = 0; w < s.space().size(); ++w) {
        IndexSet one(s.space().size(), {w});
        if (!pred.intersects(s.nodes_in(one)) && c.intersects(s.outcomes_in(one))) {
            out.non_redundant = false;
            out.witness = "c meets scenario " + s.space().label(w) + " but has no immediate predecessor there";
            break;
        }
    }
    out.complete = true;
    out.available_at = IndexSet(s.move_count());
    for (std::size_t i = 0; i < s.move_count(); ++i) {
        IndexSet pre = preimage(s, i, pred);
        if (pre == s.move(i).domain)
            out.available_at.set(i);
        else if (pre.any() && out.complete) {
            out.complete = false;
            if (out.witness.empty())
                out.witness = s.move(i).name + " maps only " + s.space().describe(pre) + " of its domain " +
                              s.space().describe(s.move(i).domain) + " into P(c)";
        }
    }
    return out;
}

Verdict restrict_check(const Sdf& s, const IndexSet& c, const IndexSet& event) {
    require_choice(s, c);
    if (!s.space().is_event(event))
        throw Error(ErrorKind::not_an_event, s.space().describe(event) + " is not an event");
    IndexSet restricted = c & s.outcomes_in(event);
    IndexSet lhs = predecessors(s, restricted);
    IndexSet rhs = predecessors(s, c) & s.nodes_in(event);
    Verdict v = lhs == rhs ? Verdict::pass()
                           : Verdict::fail("P(c & W_A) and P(c) & F_A differ for A = " + s.space().describe(event));
    if (restricted.empty()) v.notes.push_back("c & W_A is empty, so it is not a choice");
    return v;
}

Verdict verify_rcs(const Sdf& s, const Rcs& r) {
    if (r.per_move.size() != s.move_count())
        throw Error(ErrorKind::invalid_argument, "reference choice structure must list choices for every move");
    for (std::size_t i = 0; i < s.move_count(); ++i)
        for (const auto& c : r.per_move[i]) {
            std::string name = s.forest().describe(c) + " at " + s.move(i).name;
            if (!is_choice(s, c)) return Verdict::fail(name + ": not a choice");
            Classification k = classify(s, c);
            if (!k.non_redundant) return Verdict::fail(name + ": redundant (" + k.witness + ")");
            if (!k.complete) return Verdict::fail(name + ": incomplete (" + k.witness + ")");
            if (!k.available_at.test(i)) return Verdict::fail(name + ": not available");
        }
    return Verdict::pass();
}

AdaptedResult is_adapted(const Sdf& s, const Eis& e, const Rcs& r, const IndexSet& c) {
    if (e.per_move.size() != s.move_count() || r.per_move.size() != s.move_count())
        throw Error(ErrorKind::invalid_argument, "information and reference structures must cover every move");
    Classification k = classify(s, c);
    if (!k.non_redundant || !k.complete)
        throw Error(ErrorKind::precondition_violation,
                    "adaptedness needs a non-redundant and complete choice: " + k.witness);
    AdaptedResult out;
    out.verdict = Verdict::pass();
    k.available_at.for_each([&](std::size_t i) {
        MoveVerdict mv{i, Verdict::pass()};
        for (const auto& ref : r.per_move[i]) {
            IndexSet both = c & ref;
            IndexSet pre = both.empty() ? IndexSet(s.space().size()) : preimage(s, i, predecessors(s, both));
            if (!e.per_move[i].contains(pre)) {
                mv.verdict = Verdict::fail("at " + s.move(i).name + " with reference " + s.forest().describe(ref) +
                                           ": preimage " + s.space().describe(pre) + " is not an event");
                break;
            }
        }
        if (!mv.verdict.ok && out.verdict.ok) out.verdict = mv.verdict;
        out.per_move.push_back(std::move(mv));
    });
    return out;
}

}  // namespace sdf
