#include <map>

#include "doctest.h"
#include "random_structures.hpp"
#include "sdf/action_path.hpp"
#include "sdf/generators.hpp"

using namespace sdf;

namespace {

VerifyOptions exhaustive() {
    VerifyOptions o;
    o.max_x = 16;
    o.work_cap = std::size_t{1} << 20;
    return o;
}

VerifyOptions pairwise() {
    VerifyOptions o;
    o.max_x = 0;
    return o;
}

// Trees of the derived order need moves at every root.
Verdict ttree_after_reduction(const Sdf& s) {
    try {
        return check_derived_tree(s);
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::roots_not_moves);
        // Without any move the derived tree is empty.
        if (s.move_count() == 0) return Verdict::pass();
        return check_derived_tree(drop_moveless_scenarios(s));
    }
}

// Each move split into one section per atom of its domain.
std::vector<RandomMove> split_by_atoms(const Sdf& s) {
    std::vector<RandomMove> out;
    for (const auto& m : s.moves())
        for (std::size_t a = 0; a < s.space().atoms().size(); ++a) {
            IndexSet part = m.domain & s.space().atoms()[a];
            if (part.empty()) continue;
            RandomMove piece;
            piece.name = m.name + "@" + std::to_string(a);
            piece.domain = part;
            piece.assignment.assign(s.space().size(), std::nullopt);
            part.for_each([&](std::size_t w) { piece.assignment[w] = m.assignment[w]; });
            out.push_back(piece);
        }
    return out;
}

}  // namespace

TEST_CASE("random action path outcomes satisfying the assumptions yield verified forests") {
    auto& g = fixture::rng();
    std::map<std::string, int> excluded;
    int accepted = 0, tries = 0;
    while (accepted < 200 && tries < 20000) {
        ++tries;
        PathOutcomes po = random_path_outcomes(g);
        ApwReport r = check_apw(po);
        if (!r.ok()) {
            ++excluded[r.first_failure().substr(0, 2)];
            continue;
        }
        ++accepted;
        BuildOptions b;
        b.sdf = exhaustive();
        ActionPathSdf ap = build_action_path_sdf(po, b);
        REQUIRE(ap.verified);
        CAPTURE(po.size());
        CHECK(ap.verified->ok());
        CHECK_FALSE(ap.verified->partial());
        CHECK(check_evaluation_bijection(ap.sdf).ok);
        CHECK(ttree_after_reduction(ap.sdf).ok);
    }
    CHECK(accepted == 200);
    for (const auto& [id, n] : excluded) MESSAGE("excluded by " << id << ": " << n);
}

TEST_CASE("evaluation bijection and derived tree on fixed instances") {
    std::vector<Sdf> pool{build_simple(), build_variant()};
    for (const PathOutcomes& po : {timing_example(), up_and_out_example(), product_example(), simple_action_path(),
                                   variant_action_path()})
        pool.push_back(build_action_path_sdf(po).sdf);
    for (const Sdf& s : pool) {
        CHECK(check_evaluation_bijection(s).ok);
        CHECK(ttree_after_reduction(s).ok);
        TTree t = tmap_order(s);
        std::size_t moves = 0;
        for (const auto& e : t.entries) moves += e.move.has_value();
        CHECK(moves == s.move_count());
    }
}

TEST_CASE("exhaustive and pairwise irreducibility checks compared") {
    auto& g = fixture::rng();
    int compared = 0, agree = 0, split_rejected = 0, split_total = 0;
    for (int tries = 0; tries < 4000 && compared < 150; ++tries) {
        PathOutcomes po = random_path_outcomes(g);
        if (!check_apw(po).ok()) continue;
        BuildOptions b;
        b.verify = false;
        ActionPathSdf ap = build_action_path_sdf(po, b);
        if (ap.sdf.move_count() > 16) continue;
        SdfVerdict full = verify_sdf(ap.sdf, exhaustive());
        if (full.partial()) continue;
        SdfVerdict quick = verify_sdf(ap.sdf, pairwise());
        ++compared;
        agree += full.axiom("3e").ok == quick.axiom("3e").ok;
        CHECK(full.axiom("3e").ok);

        // Splitting a move over several atoms leaves a mergeable family.
        std::vector<RandomMove> split = split_by_atoms(ap.sdf);
        if (split.size() == ap.sdf.move_count() || split.size() > 16) continue;
        Sdf broken(ap.sdf.forest(), ap.sdf.space(), ap.sdf.projection(), split);
        SdfVerdict sv = verify_sdf(broken, exhaustive());
        if (sv.partial() || !check_section_axioms(broken, split).verdict.ok) continue;
        ++split_total;
        split_rejected += !sv.axiom("3e").ok;
        CHECK_FALSE(sv.axiom("3e").ok);
        SdfVerdict sq = verify_sdf(broken, pairwise());
        agree += sv.axiom("3e").ok == sq.axiom("3e").ok;
        ++compared;
    }
    CHECK(compared >= 100);
    MESSAGE("irreducibility: " << agree << " of " << compared << " verdicts agree; split families rejected "
                               << split_rejected << " of " << split_total);
}
