#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace oracle {

sdf::Poset poset_from_covers(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& above) {
    std::vector<std::vector<bool>> geq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) geq[i][i] = true;
    for (auto [x, y] : above) geq[x][y] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (geq[i][k] && geq[k][j]) geq[i][j] = true;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    return sdf::Poset(labels, geq);
}

namespace {

bool chain(const sdf::Poset& p, const std::vector<std::size_t>& members) {
    for (std::size_t a : members)
        for (std::size_t b : members)
            if (!p.geq(a, b) && !p.geq(b, a)) return false;
    return true;
}

std::vector<std::size_t> bits(std::size_t mask, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) out.push_back(i);
    return out;
}

}  // namespace

std::vector<IndexSet> maximal_chains(const sdf::Poset& p) {
    const std::size_t n = p.size();
    std::vector<std::size_t> chains;
    for (std::size_t m = 1; m < (std::size_t{1} << n); ++m)
        if (chain(p, bits(m, n))) chains.push_back(m);
    std::vector<IndexSet> out;
    for (std::size_t m : chains) {
        bool maximal = std::none_of(chains.begin(), chains.end(), [&](std::size_t o) { return o != m && (o & m) == m; });
        if (maximal) out.push_back(IndexSet::from(n, bits(m, n)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_decision_forest(const sdf::Poset& p) {
    const std::size_t n = p.size();
    if (n == 0) return false;
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<std::size_t> up;
        for (std::size_t y = 0; y < n; ++y)
            if (p.geq(y, x)) up.push_back(y);
        if (!chain(p, up)) return false;
    }
    auto chains = oracle::maximal_chains(p);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y) continue;
            bool separated = std::any_of(chains.begin(), chains.end(),
                                         [&](const IndexSet& c) { return c.test(x) != c.test(y); });
            if (!separated) return false;
        }
    return true;
}

bool own_representation(const sdf::SetForest& sf) {
    if (sf.size() == 0) return false;
    // Inclusion order written out directly.
    std::vector<std::vector<bool>> geq(sf.size(), std::vector<bool>(sf.size()));
    for (std::size_t i = 0; i < sf.size(); ++i)
        for (std::size_t j = 0; j < sf.size(); ++j) geq[i][j] = sf.node(j).subset_of(sf.node(i));
    sdf::Poset p(std::vector<std::string>(sf.size(), ""), geq);
    std::vector<IndexSet> chains = oracle::maximal_chains(p);
    std::set<IndexSet> hit;
    for (std::size_t v = 0; v < sf.outcome_count(); ++v) {
        IndexSet path(sf.size());
        for (std::size_t x = 0; x < sf.size(); ++x)
            if (sf.node(x).test(v)) path.set(x);
        if (!std::binary_search(chains.begin(), chains.end(), path)) return false;
        if (!hit.insert(path).second) return false;
    }
    return hit.size() == chains.size();
}

bool partitioned_into_trees(const sdf::SetForest& sf) {
    if (sf.size() == 0) return false;
    std::vector<IndexSet> roots;
    for (std::size_t x = 0; x < sf.size(); ++x) {
        bool top = true;
        for (std::size_t y = 0; y < sf.size(); ++y)
            if (y != x && sf.node(x).subset_of(sf.node(y))) top = false;
        if (top) roots.push_back(sf.node(x));
    }
    IndexSet cover(sf.outcome_count());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (roots[i].intersects(roots[j])) return false;
        cover |= roots[i];
    }
    if (cover != IndexSet::full(sf.outcome_count())) return false;
    for (const auto& r : roots) {
        // The root's family over its own outcomes.
        std::vector<std::size_t> keep = r.elements();
        std::vector<std::string> labels;
        for (std::size_t v : keep) labels.push_back(sf.outcome_label(v));
        std::vector<IndexSet> nodes;
        for (const auto& x : sf.nodes()) {
            if (!x.subset_of(r)) continue;
            IndexSet local(keep.size());
            for (std::size_t i = 0; i < keep.size(); ++i)
                if (x.test(keep[i])) local.set(i);
            nodes.push_back(local);
        }
        if (!own_representation(sdf::SetForest(labels, nodes))) return false;
    }
    return true;
}

namespace {

// All partitions of `members` into events of the scenario space.
std::vector<std::vector<IndexSet>> event_partitions(const sdf::ScenarioSpace& space, const IndexSet& domain) {
    std::vector<std::size_t> m = domain.elements();
    std::vector<std::vector<IndexSet>> out;
    std::vector<IndexSet> blocks;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == m.size()) {
            // Blocks must be traces of events, i.e. unions of atoms within the domain.
            for (const auto& b : blocks) {
                IndexSet closure(space.size());
                for (const auto& a : space.atoms())
                    if (a.intersects(b)) closure |= a;
                if ((closure & domain) != b) return;
            }
            out.push_back(blocks);
            return;
        }
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            blocks[k].set(m[i]);
            rec(i + 1);
            blocks[k].reset(m[i]);
        }
        blocks.push_back(IndexSet(space.size(), {m[i]}));
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
    return out;
}

}  // namespace

std::size_t eis_count(const sdf::Sdf& s) {
    std::vector<std::vector<std::vector<IndexSet>>> options;
    for (const auto& mv : s.moves()) options.push_back(event_partitions(s.space(), mv.domain));
    auto measurable = [](const std::vector<IndexSet>& part, const IndexSet& e) {
        for (const auto& b : part)
            if (b.intersects(e) && !b.subset_of(e)) return false;
        return true;
    };
    std::size_t count = 0;
    std::vector<std::size_t> pick(options.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == options.size()) {
            for (std::size_t a = 0; a < options.size(); ++a)
                for (std::size_t b = 0; b < options.size(); ++b) {
                    if (a == b || !s.move_geq(a, b)) continue;
                    for (const auto& blk : options[a][pick[a]])
                        if (!measurable(options[b][pick[b]], blk & s.move(b).domain)) return;
                }
            ++count;
            return;
        }
        for (pick[i] = 0; pick[i] < options[i].size(); ++pick[i]) rec(i + 1);
    };
    rec(0);
    return count;
}

IndexSet nodes_below(const sdf::Sdf& s, const IndexSet& c) {
    IndexSet out(s.forest().size());
    for (std::size_t x = 0; x < s.forest().size(); ++x)
        if (s.forest().node(x).subset_of(c)) out.set(x);
    return out;
}

IndexSet immediate_predecessors(const sdf::Sdf& s, const IndexSet& c) {
    const auto& f = s.forest();
    IndexSet below = nodes_below(s, c);
    IndexSet out(f.size());
    below.for_each([&](std::size_t y) {
        // Nodes strictly containing y but not inside c; the least one.
        std::vector<std::size_t> above;
        for (std::size_t x = 0; x < f.size(); ++x)
            if (x != y && f.node(y).subset_of(f.node(x)) && !below.test(x)) above.push_back(x);
        for (std::size_t x : above) {
            bool least = std::all_of(above.begin(), above.end(),
                                     [&](std::size_t z) { return f.node(x).subset_of(f.node(z)); });
            if (least) {
                // Everything strictly between x and y lies in c.
                bool direct = true;
                for (std::size_t z = 0; z < f.size(); ++z)
                    if (z != x && z != y && f.node(y).subset_of(f.node(z)) && f.node(z).subset_of(f.node(x)) &&
                        !below.test(z))
                        direct = false;
                if (direct) out.set(x);
            }
        }
    });
    return out;
}

IndexSet path_node(const sdf::PathOutcomes& po, std::size_t w, std::size_t k) {
    IndexSet out(po.size());
    const auto& o = po.outcome(w);
    for (std::size_t v = 0; v < po.size(); ++v) {
        const auto& p = po.outcome(v);
        if (p.scenario == o.scenario && std::equal(o.path.begin(), o.path.begin() + static_cast<std::ptrdiff_t>(k),
                                                   p.path.begin()))
            out.set(v);
    }
    return out;
}

IndexSet closed_form_predecessors(const sdf::ActionPathSdf& ap, std::size_t k, const IndexSet& c) {
    IndexSet out(ap.sdf.forest().size());
    c.for_each([&](std::size_t w) {
        auto x = ap.sdf.forest().find_node(path_node(ap.po, w, k));
        if (x) out.set(*x);
    });
    return out;
}

}  // namespace oracle
