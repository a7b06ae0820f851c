#include "doctest.h"
#include "random_structures.hpp"
#include "sdf/sdf.hpp"

using namespace sdf;

namespace {

Sdf with_moves(const Sdf& s, std::vector<RandomMove> moves) {
    return Sdf(s.forest(), s.space(), s.projection(), std::move(moves));
}

RandomMove section(const std::string& name, std::size_t scenarios, std::vector<std::pair<std::size_t, std::size_t>> at) {
    RandomMove m;
    m.name = name;
    m.domain = IndexSet(scenarios);
    m.assignment.assign(scenarios, std::nullopt);
    for (auto [w, x] : at) {
        m.domain.set(w);
        m.assignment[w] = x;
    }
    return m;
}

// One scenario, root {a,b} with two terminal children.
Sdf one_scenario() {
    SetForest f = fixture::set_forest(2, {{0, 1}, {0}, {1}});
    return Sdf(f, ScenarioSpace::discrete({"w"}), {0, 0, 0}, {section("r", 1, {{0, 0}})});
}

}  // namespace

TEST_CASE("the two examples verify with every axiom") {
    for (const Sdf& s : {build_simple(), build_variant()}) {
        SdfVerdict v = verify_sdf(s);
        CHECK(v.ok());
        CHECK_FALSE(v.partial());
        REQUIRE(v.axioms.size() == 8);
        std::vector<std::string> ids;
        for (const auto& a : v.axioms) ids.push_back(a.id);
        CHECK(ids == std::vector<std::string>{"1", "2", "3a", "3b", "3c", "3d", "3e", "3f"});
    }
    Sdf v = build_variant();
    CHECK(v.move(v.move_index("x2")).domain == IndexSet(2, {1}));
    CHECK(verify_sdf(one_scenario()).ok());
}

TEST_CASE("fibres") {
    Sdf one = one_scenario();
    auto f1 = fibres(one);
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].count() == 3);

    Sdf s = build_simple();
    auto f = fibres(s);
    REQUIRE(f.size() == 2);
    CHECK(f[0].count() == 7);
    f[0].for_each([&](std::size_t x) { CHECK(s.scenario_of_node(x) == 0); });

    // Tag one terminal with the wrong scenario.
    std::vector<std::size_t> proj = s.projection();
    std::size_t leaf = *s.forest().find_node(IndexSet(8, {s.forest().outcome_index("(1,1,1)")}));
    proj[leaf] = 1;
    Sdf bad(s.forest(), s.space(), proj, s.moves());
    CHECK_THROWS_AS(fibres(bad), Error);
    CHECK_FALSE(verify_sdf(bad).ok());
}

TEST_CASE("irreducibility catches a split root move") {
    Sdf s = build_simple();
    std::vector<RandomMove> moves;
    const RandomMove& x0 = s.move(s.move_index("x0"));
    moves.push_back(section("x0a", 2, {{0, x0.at(0)}}));
    moves.push_back(section("x0b", 2, {{1, x0.at(1)}}));
    moves.push_back(s.move(s.move_index("x1")));
    moves.push_back(s.move(s.move_index("x2")));
    SdfVerdict v = verify_sdf(with_moves(s, moves));
    CHECK_FALSE(v.ok());
    CHECK_FALSE(v.axiom("3e").ok);
    CHECK(v.axiom("3a").ok);
    CHECK(v.axiom("3b").ok);
    CHECK(v.axiom("3d").ok);
    // x0a(1) contains x1(1) while x1 spans both scenarios.
    CHECK_FALSE(v.axiom("3c").ok);
    CHECK(check_section_axioms(s, s.moves()).verdict.ok);
}

TEST_CASE("section axioms on broken move families") {
    Sdf s = build_simple();
    // Dropping x2 leaves moves outside every image.
    std::vector<RandomMove> no_x2{s.move(0), s.move(1)};
    CHECK_FALSE(check_section_axioms(s, no_x2).verdict.ok);
    // Domain outside the algebra: trivial scenario space.
    Sdf coarse(s.forest(), ScenarioSpace::trivial({"1", "2"}), s.projection(),
               {s.move(0), s.move(1), section("x2a", 2, {{0, s.move(2).at(0)}}), section("x2b", 2, {{1, s.move(2).at(1)}})});
    CHECK_FALSE(verify_sdf(coarse).axiom("3a").ok);
}

TEST_CASE("derived tree") {
    TTree simple = tmap_order(build_simple());
    CHECK(simple.entries.size() == 11);
    std::size_t moves = 0;
    for (const auto& e : simple.entries) moves += e.move.has_value();
    CHECK(moves == 3);
    CHECK(tmap_order(build_variant()).entries.size() == 10);
    CHECK(check_derived_tree(build_simple()).ok);
    CHECK(check_derived_tree(build_variant()).ok);
    CHECK(check_derived_tree(one_scenario()).ok);
    CHECK(tmap_order(one_scenario()).entries.size() == 3);
}

TEST_CASE("evaluation bijection") {
    CHECK(check_evaluation_bijection(build_simple()).ok);
    CHECK(check_evaluation_bijection(build_variant()).ok);
    Sdf lone(fixture::set_forest(1, {{0}}), ScenarioSpace::discrete({"w"}), {0}, {});
    CHECK(check_evaluation_bijection(lone).ok);
    CHECK(verify_sdf(lone).ok());
}

TEST_CASE("roots must be moves for the derived tree") {
    // Scenario 2 is a lone terminal node.
    SetForest f = fixture::set_forest(3, {{0, 1}, {0}, {1}, {2}});
    Sdf s(f, ScenarioSpace::discrete({"1", "2"}), {0, 0, 0, 1}, {section("r", 2, {{0, 0}})});
    CHECK(verify_sdf(s).ok());
    CHECK_THROWS_AS(check_derived_tree(s), Error);
    Sdf reduced = drop_moveless_scenarios(s);
    CHECK(reduced.space().size() == 1);
    CHECK(reduced.forest().outcome_count() == 2);
    CHECK(check_derived_tree(reduced).ok);
}

TEST_CASE("isomorphism of decision forests") {
    Sdf s = build_simple();
    auto self = find_sdf_isomorphism(s, s);
    REQUIRE(self);
    CHECK(self->node_map.size() == 14);
    CHECK_FALSE(find_sdf_isomorphism(s, build_variant()));
}

TEST_CASE("moves and their order") {
    Sdf s = build_simple();
    std::size_t x0 = s.move_index("x0"), x1 = s.move_index("x1"), x2 = s.move_index("x2");
    CHECK(s.move_geq(x0, x1));
    CHECK(s.move_geq(x0, x2));
    CHECK_FALSE(s.move_geq(x1, x2));
    CHECK_FALSE(s.move_geq(x1, x0));
    CHECK(s.image(x0).count() == 2);
    CHECK(s.outcomes_in(IndexSet(2, {0})).count() == 4);
    CHECK(s.nodes_in(IndexSet(2, {1})).count() == 7);
    CHECK_THROWS_AS(s.move_index("x9"), Error);
}
