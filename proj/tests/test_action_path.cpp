#include "doctest.h"
#include "oracles.hpp"
#include "random_structures.hpp"
#include "sdf/action_path.hpp"
#include "sdf/catalog.hpp"
#include "sdf/generators.hpp"

using namespace sdf;

namespace {

Path path_of(const PathOutcomes& po, std::vector<std::string> labels) {
    Path p;
    for (const auto& l : labels) p.push_back(static_cast<std::uint32_t>(po.actions().index_of(l)));
    return p;
}

std::size_t outcome_of(const PathOutcomes& po, std::size_t scenario, const Path& p) {
    for (std::size_t w = 0; w < po.size(); ++w)
        if (po.outcome(w).scenario == scenario && po.outcome(w).path == p) return w;
    FAIL("no such outcome");
    return 0;
}

SubSigma whole(std::size_t n, std::vector<std::vector<std::size_t>> atoms) {
    std::vector<IndexSet> a;
    for (const auto& x : atoms) a.push_back(IndexSet::from(n, x));
    return SubSigma(IndexSet::full(n), a);
}

HistorySet realized(const PathOutcomes& po, std::size_t k) {
    auto v = po.realized_prefixes(k);
    return HistorySet(v.begin(), v.end());
}

// The closed-form checks every valid window choice must satisfy.
void check_window_closed_forms(const ActionPathSdf& ap, std::size_t k, const WindowChoice& wc) {
    REQUIRE(wc.ok());
    Classification cl = classify(ap.sdf, wc.choice);
    CHECK(cl.non_redundant);
    CHECK(cl.complete);
    CHECK(predecessors(ap.sdf, wc.choice) == expected_predecessors(ap, k, wc.choice));
    CHECK(down_set(ap.sdf, wc.choice) == expected_down_set(ap, k, wc.choice));
}

}  // namespace

TEST_CASE("time axis and action spaces") {
    TimeAxis t({Time(3, 2), Time(0), Time(1, 2)});
    CHECK(t.at(0) == Time(0));
    CHECK(t.at(2) == Time(3, 2));
    CHECK(t.index_of(Time(1, 2)) == 1);
    CHECK_THROWS_AS(t.index_of(Time(1)), Error);
    CHECK_THROWS_AS(TimeAxis({Time(1)}), Error);
    CHECK_THROWS_AS(TimeAxis({Time(0), Time(0)}), Error);

    ActionSpace p = ActionSpace::product({"a", "b"}, {{"0", "1"}, {"x", "y", "z"}});
    CHECK(p.size() == 6);
    CHECK(p.agent_count() == 2);
    CHECK(check_factorization(p).ok);
    CHECK(p.project(1, p.index_of("1|z")) == 2);
    CHECK_THROWS_AS(ActionSpace({"a"}).factorization(), Error);

    // Two labels mapped to the same coordinates.
    Factorization bad{{"i"}, {{"0", "1"}}, {{0}, {0}}};
    CHECK_FALSE(check_factorization(ActionSpace({"p", "q"}, bad)).ok);
}

TEST_CASE("path outcome validation") {
    TimeAxis t({Time(0), Time(1)});
    ActionSpace a({"a", "b"});
    ScenarioSpace two = ScenarioSpace::discrete({"1", "2"});
    CHECK_THROWS_AS(PathOutcomes(t, a, two, {{0, {0, 0}}}), Error);  // scenario 2 has no path
    CHECK_THROWS_AS(PathOutcomes(t, a, two, {{0, {0, 0}}, {1, {0}}}), Error);
    CHECK_THROWS_AS(PathOutcomes(t, a, two, {{0, {0, 0}}, {0, {0, 0}}, {1, {0, 1}}}), Error);
    CHECK_THROWS_AS(PathOutcomes(t, a, two, {{0, {0, 2}}, {1, {0, 1}}}), Error);
}

TEST_CASE("nodes of action paths") {
    PathOutcomes simple = simple_action_path();
    for (std::size_t w = 0; w < simple.size(); ++w) {
        IndexSet root = node_at(simple, Time(0), w);
        CHECK(root.count() == 4);
        root.for_each([&](std::size_t v) { CHECK(simple.outcome(v).scenario == simple.outcome(w).scenario); });
        CHECK(node_at(simple, Time(1), w).count() == 2);
    }
    CHECK(node_at_prefix(simple, 1, {}) == node_at(simple, Time(0), outcome_of(simple, 1, {0, 0})));

    // Timing: both agents stopped at time 0 leaves a unique continuation.
    PathOutcomes timing = timing_example();
    std::size_t stopped = outcome_of(timing, 0, path_of(timing, {"0|0", "0|0", "0|0"}));
    CHECK(node_at(timing, Time(1), stopped) == IndexSet(timing.size(), {stopped}));
    CHECK(node_at(timing, Time(2), stopped) == IndexSet(timing.size(), {stopped}));
    CHECK_THROWS_AS(node_at(timing, Time(1, 2), stopped), Error);
}

TEST_CASE("move events") {
    PathOutcomes product = simple_action_path();
    for (int t = 0; t < 2; ++t)
        for (const Path& f : {Path{0, 0}, Path{1, 0}, Path{0, 1}}) CHECK(move_event(product, Time(t), f) == IndexSet::full(2));

    PathOutcomes timing = timing_example();
    // Agent a resumes after stopping.
    Path up = path_of(timing, {"0|1", "1|1", "1|1"});
    CHECK(move_event(timing, Time(2), up).empty());
    CHECK(move_event(timing, Time(1), up) == IndexSet::full(2));
    CHECK(move_event(timing, Time(0), up) == IndexSet::full(2));

    // Still holding: the barrier 2 was crossed at time 1 in scenario 1 only.
    PathOutcomes uo = up_and_out_example();
    Path hold = path_of(uo, {"1", "1", "1"});
    CHECK(move_event(uo, Time(0), hold) == IndexSet::full(2));
    CHECK(move_event(uo, Time(1), hold) == IndexSet(2, {1}));
    CHECK(move_event(uo, Time(2), hold) == IndexSet(2, {1}));
    CHECK(move_event(uo, Time(2), path_of(uo, {"1", "0", "0"})).empty());

    // Branching in one scenario of an indistinguishable pair.
    PathOutcomes w0(TimeAxis({Time(0)}), ActionSpace({"a", "b"}), ScenarioSpace::trivial({"1", "2"}),
                    {{0, {0}}, {0, {1}}, {1, {0}}});
    CHECK(move_event_raw(w0, {}) == IndexSet(2, {0}));
    try {
        move_event(w0, Time(0), {0});
        FAIL("expected apw0-violation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::apw0_violation);
    }
    CHECK_FALSE(check_apw(w0).w0.ok);
}

TEST_CASE("assumption checks") {
    for (const PathOutcomes& po : {simple_action_path(), variant_action_path(), timing_example(), up_and_out_example(),
                                   product_example()}) {
        ApwReport r = check_apw(po);
        CHECK(r.ok());
        CHECK(r.w2_mode == "exhaustive");
        REQUIRE(r.w4);
        CHECK(r.w4->ok);
    }
    CHECK_FALSE(check_apw(PathOutcomes(TimeAxis({Time(0)}), ActionSpace({"a", "b"}), ScenarioSpace::discrete({"w"}),
                                       {{0, {0}}, {0, {1}}}))
                    .w4);

    // f and g split only in the past; their continuation events are disjoint.
    ActionSpace ab({"a", "b"});
    PathOutcomes w3(TimeAxis({Time(0), Time(1), Time(2)}), ab, ScenarioSpace::discrete({"1", "2"}),
                    {{0, {0, 0, 0}}, {0, {0, 1, 0}}, {0, {1, 0, 0}}, {1, {0, 0, 0}}, {1, {1, 0, 0}}, {1, {1, 1, 0}}});
    ApwReport r = check_apw(w3);
    CHECK(r.w0.ok);
    CHECK(r.w1.ok);
    CHECK_FALSE(r.w3.ok);
    CHECK_FALSE(r.w3.witness.empty());
    CHECK(r.first_failure().find("W3") != std::string::npos);
    try {
        build_action_path_sdf(w3);
        FAIL("expected assumption-failure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::assumption_failure);
    }

    // With the time-subset cap below |T| the prefix mode runs.
    ApwOptions small;
    small.max_time_subsets = 2;
    ApwReport prefix = check_apw(timing_example(), small);
    CHECK(prefix.ok());
    CHECK(prefix.w2_mode == "prefix");
}

TEST_CASE("action path forests reproduce the two examples") {
    ActionPathSdf simple = build_action_path_sdf(simple_action_path());
    REQUIRE(simple.verified);
    CHECK(simple.verified->ok());
    auto iso = find_sdf_isomorphism(simple.sdf, build_simple());
    REQUIRE(iso);
    CHECK(iso->node_map.size() == 14);

    ActionPathSdf variant = build_action_path_sdf(variant_action_path());
    CHECK(variant.verified->ok());
    CHECK(find_sdf_isomorphism(variant.sdf, build_variant()));
    CHECK_FALSE(find_sdf_isomorphism(variant.sdf, build_simple()));

    ActionPathSdf timing = build_action_path_sdf(timing_example());
    CHECK(timing.verified->ok());
    CHECK(build_action_path_sdf(up_and_out_example()).verified->ok());
}

TEST_CASE("time of a move") {
    ActionPathSdf ap = build_action_path_sdf(simple_action_path());
    const Sdf& s = ap.sdf;
    for (std::size_t w = 0; w < 2; ++w) {
        std::size_t root_node = ap.node_index[0][ap.po.outcome(w).scenario == 0 ? 0 : 4];
        CHECK(time_of(ap, root_node) == Time(0));
    }
    std::size_t x1 = *ap.find_move(1, {0});
    for (std::size_t w = 0; w < 2; ++w) CHECK(time_of(ap, s.move(x1).at(w)) == Time(1));
    CHECK_THROWS_AS(time_of(ap, ap.singleton_node[0]), Error);
    // The last action still branches, so no time point yields the singleton.
    CHECK(time_set(ap, ap.singleton_node[0]).empty());
}

TEST_CASE("time sets, the time map and up-sets on generated forests") {
    std::vector<ActionPathSdf> pool;
    for (const PathOutcomes& po : {simple_action_path(), variant_action_path(), timing_example(), up_and_out_example()})
        pool.push_back(build_action_path_sdf(po));
    auto& g = fixture::rng();
    for (int i = 0; i < 60 && pool.size() < 40; ++i) {
        PathOutcomes po = random_path_outcomes(g);
        if (check_apw(po).ok()) pool.push_back(build_action_path_sdf(po));
    }
    for (const ActionPathSdf& ap : pool) {
        const Sdf& s = ap.sdf;
        const SetForest& f = s.forest();
        for (std::size_t x = 0; x < f.size(); ++x) {
            std::vector<Time> ts = time_set(ap, x);
            if (!ts.empty()) {
                std::size_t lo = ap.po.time().index_of(ts.front());
                for (std::size_t j = 0; j < ts.size(); ++j) CHECK(ts[j] == ap.po.time().at(lo + j));
            }
            if (f.node(x).count() > 1) CHECK(ts.size() == 1);
        }
        for (std::size_t i = 0; i < s.move_count(); ++i) {
            Time t = time_of(ap, s.move(i).at(s.move(i).domain.elements().front()));
            CHECK(t == ap.po.time().at(ap.move_time_index[i]));
            s.move(i).domain.for_each([&](std::size_t w) { CHECK(time_of(ap, s.move(i).at(w)) == t); });
        }
        // Strictly decreasing along strict inclusion of moves.
        for (std::size_t x = 0; x < f.size(); ++x)
            for (std::size_t y = 0; y < f.size(); ++y) {
                if (x == y || !f.poset().geq(x, y) || f.node(y).count() < 2) continue;
                CHECK(time_of(ap, x) < time_of(ap, y));
            }
        // Up-set of x_k(w) is {x_u(w) | u <= k}.
        for (std::size_t k = 0; k < ap.node_index.size(); ++k)
            for (std::size_t w = 0; w < ap.po.size(); ++w) {
                IndexSet expected(f.size());
                for (std::size_t u = 0; u <= k; ++u) expected.set(ap.node_index[u][w]);
                CHECK(up_set(f.poset(), ap.node_index[k][w]) == expected);
            }
    }
}

TEST_CASE("window choices") {
    PathOutcomes po = simple_action_path();
    ActionPathSdf ap = build_action_path_sdf(po);
    HistorySet all1 = realized(po, 1);
    for (const HistorySet& h : {all1, HistorySet{{0}}, HistorySet{{1}}})
        for (std::uint32_t a0 = 0; a0 < 2; ++a0)
            for (std::uint32_t a1 = 0; a1 < 2; ++a1) {
                WindowChoice wc = window_choice(po, {Time(1), h, {IndexSet(2, {a0}), IndexSet(2, {a1})}});
                check_window_closed_forms(ap, 1, wc);
            }

    WindowChoice everything = window_choice(po, {Time(1), all1, {IndexSet::full(2), IndexSet::full(2)}});
    CHECK(everything.c0.ok);
    CHECK_FALSE(everything.c1.ok);
    WindowChoice nothing = window_choice(po, {Time(1), all1, {IndexSet(2), IndexSet(2)}});
    CHECK_FALSE(nothing.c0.ok);
    CHECK(nothing.choice.empty());

    // Acting in one scenario only splits the move x_0 across its domain.
    WindowChoice lopsided = window_choice(po, {Time(0), {Prefix{}}, {IndexSet(2, {0}), IndexSet(2)}});
    CHECK(lopsided.c0.ok);
    CHECK(lopsided.c1.ok);
    CHECK_FALSE(lopsided.c2.ok);

    WindowChoice root = window_choice(po, {Time(0), {Prefix{}}, {IndexSet(2, {1}), IndexSet(2, {1})}});
    check_window_closed_forms(ap, 0, root);
    CHECK(predecessors(ap.sdf, root.choice) == ap.sdf.image(*ap.find_move(0, {})));
}

TEST_CASE("agent choices") {
    PathOutcomes timing = timing_example();
    ActionPathSdf ap = build_action_path_sdf(timing);
    for (std::size_t agent = 0; agent < 2; ++agent)
        for (std::size_t k = 0; k < 3; ++k) {
            // Histories along which the agent still holds.
            HistorySet h;
            for (const Prefix& p : timing.realized_prefixes(k)) {
                bool holding = true;
                for (auto a : p) holding = holding && timing.actions().project(agent, a) == 1;
                if (holding) h.insert(p);
            }
            for (std::uint32_t g0 = 0; g0 < 2; ++g0)
                for (std::uint32_t g1 = 0; g1 < 2; ++g1) {
                    CAPTURE(agent);
                    CAPTURE(k);
                    WindowChoice wc = agent_choice(timing, timing.time().at(k), h, agent, {g0, g1});
                    check_window_closed_forms(ap, k, wc);
                }
        }

    PathOutcomes uo = up_and_out_example();
    ActionPathSdf uap = build_action_path_sdf(uo);
    for (std::size_t k = 0; k < 3; ++k) {
        auto one = static_cast<std::uint32_t>(uo.actions().index_of("1"));
        Prefix ones(k, one);
        IndexSet d = move_event(uo, uo.time().at(k), Path(3, one));
        REQUIRE_FALSE(d.empty());
        for (std::uint32_t v = 0; v < 2; ++v) {
            AgentMap g(2);
            d.for_each([&](std::size_t w) { g[w] = v; });
            WindowChoice wc = agent_choice(uo, uo.time().at(k), {ones}, 0, g);
            check_window_closed_forms(uap, k, wc);
        }
    }

    // A single agent action leaves no alternative.
    PathOutcomes mono = product_outcomes(ScenarioSpace::discrete({"1", "2"}), TimeAxis({Time(0), Time(1)}),
                                         ActionSpace::product({"i"}, {{"only"}}));
    WindowChoice none = agent_choice(mono, Time(0), {Prefix{}}, 0, {0u, 0u});
    CHECK(none.c0.ok);
    CHECK_FALSE(none.c1.ok);
    ActionPathSdf mono_ap = build_action_path_sdf(mono);
    Rcs empty = agent_rcs(mono_ap, 0);
    for (const auto& family : empty.per_move) CHECK(family.empty());

    CHECK_THROWS_AS(agent_choice(PathOutcomes(TimeAxis({Time(0)}), ActionSpace({"a", "b"}),
                                              ScenarioSpace::discrete({"w"}), {{0, {0}}, {0, {1}}}),
                                 Time(0), {Prefix{}}, 0, {0u}),
                    Error);
    // Domain {1} is not an event when the scenarios are indistinguishable.
    PathOutcomes coarse = product_outcomes(ScenarioSpace::trivial({"1", "2"}), TimeAxis({Time(0)}),
                                           ActionSpace::product({"i"}, {{"0", "1"}}));
    try {
        agent_choice(coarse, Time(0), {Prefix{}}, 0, {0u, std::nullopt});
        FAIL("expected not-an-event");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::not_an_event);
    }
}

TEST_CASE("enumerated agent choices all satisfy the closed forms") {
    for (const PathOutcomes& po : {timing_example(), up_and_out_example(), product_example()}) {
        ActionPathSdf ap = build_action_path_sdf(po);
        std::size_t seen = 0;
        for (std::size_t agent = 0; agent < po.actions().agent_count(); ++agent)
            for (std::size_t k = 0; k < po.time().size(); ++k)
                for (const auto& c : enumerate_agent_choices(po, agent, k, HistoryScope::singletons_and_full, true)) {
                    check_window_closed_forms(ap, k, c.choice);
                    ++seen;
                }
        CHECK(seen > 0);
    }
}

TEST_CASE("reference choices of an agent") {
    for (const PathOutcomes& po : {timing_example(), up_and_out_example(), product_example(), simple_action_path()}) {
        ActionPathSdf ap = build_action_path_sdf(po);
        for (std::size_t agent = 0; agent < po.actions().agent_count(); ++agent) {
            Rcs r = agent_rcs(ap, agent);
            CHECK(verify_rcs(ap.sdf, r).ok);
        }
    }

    // Every timing move reached with the agent still holding offers a choice.
    PathOutcomes timing = timing_example();
    ActionPathSdf ap = build_action_path_sdf(timing);
    for (std::size_t agent = 0; agent < 2; ++agent) {
        Rcs r = agent_rcs(ap, agent);
        for (std::size_t i = 0; i < ap.sdf.move_count(); ++i) {
            bool holding = true;
            for (auto a : ap.move_prefix[i]) holding = holding && timing.actions().project(agent, a) == 1;
            CAPTURE(ap.sdf.move(i).name);
            CHECK(r.per_move[i].empty() != holding);
        }
    }

    // On the product encoding the agent's reference choices contain those of
    // the direct construction; the extra ones restrict a reference choice to
    // a history slice.
    ActionPathSdf simple = build_action_path_sdf(simple_action_path());
    Sdf direct = build_simple();
    auto iso = find_sdf_isomorphism(simple.sdf, direct);
    REQUIRE(iso);
    Rcs mine = agent_rcs(simple, 0);
    const Rcs& ref = simple_catalog(direct).reference;
    for (std::size_t i = 0; i < 3; ++i) {
        std::set<IndexSet> a;
        for (const auto& c : mine.per_move[i]) {
            IndexSet mapped(8);
            c.for_each([&](std::size_t w) { mapped.set(iso->outcome_map[w]); });
            a.insert(mapped);
        }
        const auto& b = ref.per_move[iso->move_map[i]];
        for (const auto& r : b) CHECK(a.count(r) == 1);
        for (const auto& c : a) {
            bool inside = false;
            for (const auto& r : b) inside = inside || c.subset_of(r);
            CHECK(inside);
        }
        CHECK(a.size() == (i == *simple.find_move(0, {}) ? 2u : 4u));
    }
}

TEST_CASE("intersection-stable generators") {
    for (const PathOutcomes& po : {product_example(), timing_example(), up_and_out_example(), simple_action_path()}) {
        ActionPathSdf ap = build_action_path_sdf(po);
        for (std::size_t agent = 0; agent < po.actions().agent_count(); ++agent) {
            Rcs r = agent_rcs(ap, agent);
            CHECK(check_apc3_all(ap, agent, r).ok);
        }
    }
    // The placeholder action breaks it at the move after the short branch.
    ActionPathSdf variant = build_action_path_sdf(variant_action_path());
    Apc3Result bad = check_apc3(variant, 0, *variant.find_move(1, {2}));
    CHECK_FALSE(bad.verdict.ok);
    CHECK_FALSE(bad.verdict.witness.empty());
    CHECK(check_apc3(variant, 0, *variant.find_move(0, {})).verdict.ok);
}

TEST_CASE("measurability and adaptedness") {
    ActionPathSdf ap = build_action_path_sdf(simple_action_path());
    const Sdf& s = ap.sdf;
    std::vector<Time> times = ap.move_times();
    Eis flat = eis_from_filtration(s, times, Filtration({Time(0), Time(1)}, {whole(2, {{0, 1}}), whole(2, {{0, 1}})})).eis;
    Eis reveal =
        eis_from_filtration(s, times, Filtration({Time(0), Time(1)}, {whole(2, {{0, 1}}), whole(2, {{0}, {1}})})).eis;
    CHECK(verify_eis(s, flat).ok);
    CHECK(verify_eis(s, reveal).ok);
    HistorySet h = realized(ap.po, 1);
    for (std::uint32_t g0 = 0; g0 < 2; ++g0)
        for (std::uint32_t g1 = 0; g1 < 2; ++g1) {
            CAPTURE(g0);
            CAPTURE(g1);
            bool constant = g0 == g1;
            MeasurabilityResult r = check_measurability_adaptedness(ap, 0, reveal, Time(1), h, {g0, g1});
            CHECK(r.ok());
            CHECK(r.measurable);
            CHECK(r.adapted);
            MeasurabilityResult f = check_measurability_adaptedness(ap, 0, flat, Time(1), h, {g0, g1});
            CHECK(f.ok());
            CHECK(f.apc3_global.ok);
            CHECK(f.measurable == constant);
            CHECK(f.adapted == constant);
            for (const auto& m : f.moves) CHECK(m.domain_inside);
        }
    // Outside the choice sets.
    CHECK_THROWS_AS(check_measurability_adaptedness(ap, 0, flat, Time(1), h, {std::nullopt, std::nullopt}), Error);
}
