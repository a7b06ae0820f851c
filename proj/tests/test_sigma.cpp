#include "doctest.h"
#include "oracles.hpp"
#include "random_structures.hpp"
#include "sdf/catalog.hpp"
#include "sdf/generators.hpp"
#include "sdf/sigma.hpp"

using namespace sdf;

namespace {

Eis uniform(const Sdf& s, const std::vector<bool>& discrete) {
    Eis e;
    for (std::size_t i = 0; i < s.move_count(); ++i)
        e.per_move.push_back(discrete[i] ? SubSigma::discrete(s.move(i).domain) : SubSigma::trivial(s.move(i).domain));
    return e;
}

SubSigma whole(std::size_t n, std::vector<std::vector<std::size_t>> atoms) {
    std::vector<IndexSet> a;
    for (const auto& x : atoms) a.push_back(IndexSet::from(n, x));
    return SubSigma(IndexSet::full(n), a);
}

}  // namespace

TEST_CASE("sub-sigma-algebras") {
    SubSigma d = SubSigma::discrete(IndexSet(3, {0, 2}));
    CHECK(d.atoms().size() == 2);
    CHECK(d.contains(IndexSet(3, {0})));
    CHECK_FALSE(d.contains(IndexSet(3, {1})));
    SubSigma t = SubSigma::trivial(IndexSet(3, {0, 2}));
    CHECK(d.refines(t));
    CHECK_FALSE(t.refines(d));
    CHECK(join(t, d) == d);
    CHECK(d.trace(IndexSet(3, {0})).atoms().size() == 1);
    CHECK_THROWS_AS(SubSigma(IndexSet(3, {0, 1}), {IndexSet(3, {0})}), Error);
    CHECK_THROWS_AS(SubSigma(IndexSet(3, {0, 1}), {IndexSet(3, {0, 1}), IndexSet(3, {1})}), Error);

    SubSigma g = generated_by(IndexSet::full(4), {7, 7, 3, 7});
    CHECK(g.atoms().size() == 2);
    CHECK(g.contains(IndexSet(4, {2})));
}

TEST_CASE("information structures on the two-scenario example") {
    Sdf s = build_simple();
    CHECK(verify_eis(s, uniform(s, {false, false, false})).ok);
    CHECK_FALSE(verify_eis(s, uniform(s, {true, false, false})).ok);
    CHECK(verify_eis(s, uniform(s, {false, true, false})).ok);
    CHECK(verify_eis(s, uniform(s, {true, true, true})).ok);

    Eis wrong = uniform(s, {false, false, false});
    wrong.per_move[1] = SubSigma::trivial(IndexSet(2, {0}));
    CHECK_THROWS_AS(verify_eis(s, wrong), Error);
}

TEST_CASE("enumeration counts") {
    Sdf s = build_simple();
    auto all = enumerate_eis(s);
    CHECK(all.size() == 5);
    for (const auto& e : all) CHECK(verify_eis(s, e).ok);
    ExampleCatalog c = simple_catalog(s);
    for (const auto& n : c.eis) CHECK(std::find(all.begin(), all.end(), n.eis) != all.end());

    Sdf v = build_variant();
    auto vall = enumerate_eis(v);
    CHECK(vall.size() == 3);
    ExampleCatalog vc = variant_catalog(v);
    for (const auto& n : vc.eis) CHECK(std::find(vall.begin(), vall.end(), n.eis) != vall.end());

    // One scenario: only the trivial algebra anywhere.
    Sdf one = build_action_path_sdf(product_outcomes(ScenarioSpace::discrete({"w"}), TimeAxis({Time(0), Time(1)}),
                                                     ActionSpace({"a", "b"})))
                  .sdf;
    CHECK(enumerate_eis(one).size() == 1);
}

TEST_CASE("enumeration agrees with partition brute force") {
    std::vector<Sdf> instances{build_simple(), build_variant(), build_action_path_sdf(timing_example()).sdf,
                               build_action_path_sdf(up_and_out_example()).sdf};
    auto& g = fixture::rng();
    for (int i = 0; i < 40; ++i) {
        PathOutcomes po = random_path_outcomes(g);
        if (!check_apw(po).ok()) continue;
        instances.push_back(build_action_path_sdf(po).sdf);
    }
    for (const auto& s : instances) {
        std::size_t expected = oracle::eis_count(s);
        if (expected > 2000) continue;
        CHECK(enumerate_eis(s, 1 << 20).size() == expected);
    }
}

TEST_CASE("set partitions") {
    for (std::size_t n = 0; n <= 7; ++n) CHECK(set_partitions(n).size() == bell_number(n));
    CHECK(bell_number(5) == 52);
    auto p3 = set_partitions(3);
    CHECK(p3.front() == std::vector<std::size_t>{0, 0, 0});
    CHECK(p3.back() == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("chain filtrations") {
    Sdf s = build_simple();
    Eis e2a = uniform(s, {false, true, true});
    ChainTrace t = chain_filtration(s, e2a, {s.move_index("x0"), s.move_index("x1")});
    REQUIRE(t.filtration);
    CHECK(t.trace_monotone.ok);
    CHECK(t.algebras[0] == SubSigma::trivial(IndexSet::full(2)));
    CHECK(t.algebras[1] == SubSigma::discrete(IndexSet::full(2)));
    CHECK(chain_filtration(s, e2a, {s.move_index("x1")}).algebras.size() == 1);
    CHECK_THROWS_AS(chain_filtration(s, e2a, {s.move_index("x1"), s.move_index("x2")}), Error);

    Sdf v = build_variant();
    ChainTrace tv = chain_filtration(v, uniform(v, {false, false, false}), {v.move_index("x0"), v.move_index("x2")});
    CHECK_FALSE(tv.filtration);
    CHECK(tv.algebras[1].carrier() == IndexSet(2, {1}));
}

TEST_CASE("structures from filtrations and observations") {
    ActionPathSdf ap = build_action_path_sdf(simple_action_path());
    const Sdf& s = ap.sdf;
    std::vector<Time> times = ap.move_times();
    Filtration trivial({Time(0), Time(1)}, {whole(2, {{0, 1}}), whole(2, {{0, 1}})});
    ConstructedEis flat = eis_from_filtration(s, times, trivial);
    CHECK(flat.check.ok);
    for (std::size_t i = 0; i < s.move_count(); ++i) CHECK(flat.eis.per_move[i].atoms().size() == 1);

    Filtration reveal({Time(0), Time(1)}, {whole(2, {{0, 1}}), whole(2, {{0}, {1}})});
    ConstructedEis r = eis_from_filtration(s, times, reveal);
    CHECK(r.check.ok);
    for (std::size_t i = 0; i < s.move_count(); ++i)
        CHECK(r.eis.per_move[i].atoms().size() == (ap.move_time_index[i] == 0 ? 1u : 2u));
    // That structure is row 2a of the table on the direct construction.
    Sdf direct = build_simple();
    auto iso = find_sdf_isomorphism(s, direct);
    REQUIRE(iso);
    Eis mapped;
    mapped.per_move.resize(3);
    for (std::size_t i = 0; i < 3; ++i) mapped.per_move[iso->move_map[i]] = r.eis.per_move[i];
    CHECK(mapped == simple_catalog(direct).structure("2a").eis);

    Filtration discrete({Time(0), Time(1)}, {whole(2, {{0}, {1}}), whole(2, {{0}, {1}})});
    ConstructedEis all = eis_from_filtration(s, times, discrete);
    for (std::size_t i = 0; i < 3; ++i) mapped.per_move[iso->move_map[i]] = all.eis.per_move[i];
    CHECK(mapped == simple_catalog(direct).structure("3").eis);

    CHECK_THROWS_AS(Filtration({Time(0), Time(1)}, {whole(2, {{0}, {1}}), whole(2, {{0, 1}})}), Error);
}

TEST_CASE("observations") {
    Sdf s = build_simple();
    std::vector<Time> times{Time(0), Time(1), Time(1)};
    Filtration trivial({Time(0), Time(1)}, {whole(2, {{0, 1}}), whole(2, {{0, 1}})});
    ObservationFamily constant{{{5, 5}, {5, 5}, {5, 5}}};
    CHECK(eis_from_observations(s, times, trivial, constant).eis == eis_from_filtration(s, times, trivial).eis);

    ObservationFamily identity{{{1, 2}, {0, 0}, {0, 0}}};
    ConstructedEis root = eis_from_observations(s, times, trivial, identity);
    CHECK(root.check.ok);
    for (const auto& a : root.eis.per_move) CHECK(a.atoms().size() == 2);

    ObservationFamily at_x1{{{0, 0}, {1, 2}, {0, 0}}};
    ConstructedEis b = eis_from_observations(s, times, trivial, at_x1);
    CHECK(b.check.ok);
    CHECK(b.eis == simple_catalog(s).structure("2b").eis);
}
