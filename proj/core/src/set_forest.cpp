#include "sdf/set_forest.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sdf {

SetForest::SetForest(std::vector<std::string> outcome_labels, std::vector<IndexSet> nodes)
    : outcomes_(std::move(outcome_labels)), nodes_(std::move(nodes)) {
    const std::size_t n = outcomes_.size();
    if (n == 0) throw Error(ErrorKind::invalid_argument, "outcome set is empty");
    {
        std::set<std::string> seen(outcomes_.begin(), outcomes_.end());
        if (seen.size() != n) throw Error(ErrorKind::invalid_argument, "duplicate outcome label");
    }
    containing_.assign(n, IndexSet(nodes_.size()));
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const IndexSet& x = nodes_[i];
        if (x.universe() != n)
            throw Error(ErrorKind::invalid_argument, "node " + std::to_string(i) + " over wrong universe");
        if (x.empty()) throw Error(ErrorKind::invalid_argument, "node " + std::to_string(i) + " is empty");
        auto [it, inserted] = lookup_.emplace(x, i);
        if (!inserted)
            throw Error(ErrorKind::duplicate_node, "duplicate node " + describe(x) + " at positions " +
                                                       std::to_string(it->second) + " and " +
                                                       std::to_string(i));
        x.for_each([&](std::size_t v) { containing_[v].set(i); });
    }
    const std::size_t m = nodes_.size();
    std::vector<std::vector<bool>> geq(m, std::vector<bool>(m, false));
    std::vector<std::string> labels;
    labels.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        labels.push_back(describe(nodes_[i]));
        for (std::size_t j = 0; j < m; ++j) geq[i][j] = nodes_[j].subset_of(nodes_[i]);
    }
    poset_ = Poset(std::move(labels), std::move(geq));
}

std::size_t SetForest::outcome_index(const std::string& label) const {
    auto it = std::find(outcomes_.begin(), outcomes_.end(), label);
    if (it == outcomes_.end()) throw Error(ErrorKind::unknown_element, "outcome '" + label + "'");
    return static_cast<std::size_t>(it - outcomes_.begin());
}

std::optional<std::size_t> SetForest::find_node(const IndexSet& outcomes) const {
    auto it = lookup_.find(outcomes);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::string SetForest::describe(const IndexSet& outcomes) const {
    std::string s = "{";
    bool first = true;
    outcomes.for_each([&](std::size_t v) {
        if (!first) s += ",";
        first = false;
        s += v < outcomes_.size() ? outcomes_[v] : std::to_string(v);
    });
    return s + "}";
}

Poset induced_poset(const SetForest& sf) { return sf.poset(); }

namespace {

std::string describe_chain(const SetForest& sf, const IndexSet& chain) {
    std::string s = "[";
    bool first = true;
    chain.for_each([&](std::size_t i) {
        if (!first) s += " ";
        first = false;
        s += sf.describe(sf.node(i));
    });
    return s + "]";
}

}  // namespace

Verdict verify_own_representation(const SetForest& sf) {
    const Poset& p = sf.poset();
    if (sf.size() == 0) return Verdict::fail("forest has no nodes");
    if (!is_forest(p)) {
        for (std::size_t x = 0; x < p.size(); ++x)
            if (!is_chain(p, p.up(x)))
                return Verdict::fail("up-set of node " + sf.describe(sf.node(x)) + " is not a chain");
    }
    if (!is_rooted_forest(p)) return Verdict::fail("forest is not rooted");

    ChainSet chains = maximal_chains(p);
    std::set<IndexSet> chain_set(chains.chains.begin(), chains.chains.end());
    std::map<IndexSet, std::size_t> hit;
    for (std::size_t v = 0; v < sf.outcome_count(); ++v) {
        const IndexSet& path = sf.nodes_containing(v);
        if (!chain_set.count(path))
            return Verdict::fail("outcome " + sf.outcome_label(v) + ": the nodes containing it " +
                                 describe_chain(sf, path) + " do not form a maximal chain");
        auto [it, inserted] = hit.emplace(path, v);
        if (!inserted)
            return Verdict::fail("outcomes " + sf.outcome_label(it->second) + " and " +
                                 sf.outcome_label(v) + " share the decision path " +
                                 describe_chain(sf, path));
    }
    for (const auto& c : chains.chains)
        if (!hit.count(c))
            return Verdict::fail("maximal chain " + describe_chain(sf, c) + " corresponds to no outcome");
    // (Pf)(y) = W(y): the chains through y are exactly the paths of y's outcomes.
    for (std::size_t y = 0; y < sf.size(); ++y) {
        std::set<IndexSet> through_y;
        for (const auto& c : chains.chains)
            if (c.test(y)) through_y.insert(c);
        std::set<IndexSet> image;
        sf.node(y).for_each([&](std::size_t v) { image.insert(sf.nodes_containing(v)); });
        if (image != through_y)
            return Verdict::fail("node " + sf.describe(sf.node(y)) +
                                 ": its outcomes' paths differ from the maximal chains through it");
    }
    IndexSet terminals = minimal_elements(p);
    std::optional<std::size_t> fat;
    terminals.for_each([&](std::size_t t) {
        if (!fat && sf.node(t).count() != 1) fat = t;
    });
    if (fat) return Verdict::fail("terminal node " + sf.describe(sf.node(*fat)) + " is not a singleton");
    return Verdict::pass();
}

Verdict verify_decision_tree(const SetForest& sf) {
    Verdict v = verify_own_representation(sf);
    if (!v) return v;
    auto blocks = connected_components(sf.poset());
    if (blocks.size() != 1)
        return Verdict::fail("forest has " + std::to_string(blocks.size()) + " components");
    for (std::size_t x = 0; x < sf.size(); ++x)
        for (std::size_t y = x + 1; y < sf.size(); ++y) {
            IndexSet u = sf.node(x) | sf.node(y);
            bool found = false;
            for (const auto& z : sf.nodes())
                if (u.subset_of(z)) {
                    found = true;
                    break;
                }
            if (!found)
                return Verdict::fail("no node contains both " + sf.describe(sf.node(x)) + " and " +
                                     sf.describe(sf.node(y)));
        }
    return Verdict::pass();
}

SetForest representation_by_decision_paths(const Poset& p) {
    if (!is_forest(p)) throw Error(ErrorKind::not_a_decision_forest, "poset is not a forest");
    if (!is_rooted_forest(p)) throw Error(ErrorKind::not_a_decision_forest, "forest is not rooted");
    if (auto pair = unseparated_pair(p))
        throw Error(ErrorKind::not_a_decision_forest,
                    "elements " + p.label(pair->first) + " and " + p.label(pair->second) +
                        " are not separated by any maximal chain");
    ChainSet chains = maximal_chains(p);
    std::vector<std::string> labels;
    for (const auto& c : chains.chains) {
        // Label a decision path by its least element.
        std::size_t least = c.first();
        c.for_each([&](std::size_t x) {
            if (p.geq(least, x)) least = x;
        });
        labels.push_back(p.label(least));
    }
    const std::size_t n = chains.chains.size();
    std::vector<IndexSet> nodes;
    for (std::size_t x = 0; x < p.size(); ++x) {
        IndexSet node(n);
        for (std::size_t k = 0; k < n; ++k)
            if (chains.chains[k].test(x)) node.set(k);
        nodes.push_back(node);
    }
    return SetForest(std::move(labels), std::move(nodes));
}

std::vector<TreePart> decompose(const SetForest& sf) {
    std::vector<TreePart> parts;
    for (const auto& block : connected_components(sf.poset())) {
        TreePart part;
        std::size_t root = block.first();
        block.for_each([&](std::size_t x) {
            if (sf.poset().geq(x, root)) root = x;
        });
        part.root_outcomes = sf.node(root);
        part.outcome_of = part.root_outcomes.elements();
        std::vector<std::size_t> local(sf.outcome_count(), 0);
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < part.outcome_of.size(); ++k) {
            local[part.outcome_of[k]] = k;
            labels.push_back(sf.outcome_label(part.outcome_of[k]));
        }
        std::vector<IndexSet> nodes;
        block.for_each([&](std::size_t x) {
            part.node_of.push_back(x);
            IndexSet node(part.outcome_of.size());
            sf.node(x).for_each([&](std::size_t v) {
                if (!part.root_outcomes.test(v))
                    throw Error(ErrorKind::precondition_violation,
                                "node " + sf.describe(sf.node(x)) + " is not below its root");
                node.set(local[v]);
            });
            nodes.push_back(node);
        });
        part.tree = SetForest(std::move(labels), std::move(nodes));
        parts.push_back(std::move(part));
    }
    return parts;
}

SetForest glue(const std::vector<SetForest>& trees) {
    if (trees.empty()) throw Error(ErrorKind::empty_list, "glue needs at least one tree");
    std::vector<std::string> labels;
    std::vector<std::size_t> offset;
    for (std::size_t k = 0; k < trees.size(); ++k) {
        Verdict v = verify_decision_tree(trees[k]);
        if (!v)
            throw Error(ErrorKind::precondition_violation,
                        "input " + std::to_string(k) + " is not a decision tree: " + v.witness);
        offset.push_back(labels.size());
        for (const auto& o : trees[k].outcomes())
            labels.push_back("(" + o + "," + std::to_string(k) + ")");
    }
    const std::size_t n = labels.size();
    std::vector<IndexSet> nodes;
    for (std::size_t k = 0; k < trees.size(); ++k)
        for (const auto& x : trees[k].nodes()) {
            IndexSet node(n);
            x.for_each([&](std::size_t v) { node.set(offset[k] + v); });
            nodes.push_back(node);
        }
    return SetForest(std::move(labels), std::move(nodes));
}

std::optional<std::vector<std::size_t>> find_outcome_bijection(
    const SetForest& a, const SetForest& b, const std::function<bool(std::size_t, std::size_t)>& allowed,
    const std::function<bool(const std::vector<std::size_t>&)>& accept) {
    const std::size_t n = a.outcome_count();
    if (b.outcome_count() != n || a.size() != b.size()) return std::nullopt;

    auto signature = [](const SetForest& f, std::size_t v) {
        std::vector<std::size_t> sizes;
        f.nodes_containing(v).for_each([&](std::size_t i) { sizes.push_back(f.node(i).count()); });
        std::sort(sizes.begin(), sizes.end());
        return sizes;
    };
    // Size of the smallest node holding both outcomes (0 if none).
    auto meet_sizes = [n](const SetForest& f) {
        std::vector<std::vector<std::size_t>> m(n, std::vector<std::size_t>(n, 0));
        for (const auto& x : f.nodes()) {
            auto members = x.elements();
            for (auto u : members)
                for (auto v : members)
                    if (m[u][v] == 0 || x.count() < m[u][v]) m[u][v] = x.count();
        }
        return m;
    };
    std::vector<std::vector<std::size_t>> sig_a(n), sig_b(n);
    for (std::size_t v = 0; v < n; ++v) {
        sig_a[v] = signature(a, v);
        sig_b[v] = signature(b, v);
    }
    auto meet_a = meet_sizes(a);
    auto meet_b = meet_sizes(b);

    std::vector<std::size_t> map(n, n);
    std::vector<bool> used(n, false);
    auto nodes_match = [&]() {
        for (const auto& x : a.nodes()) {
            IndexSet image(n);
            x.for_each([&](std::size_t v) { image.set(map[v]); });
            if (!b.find_node(image)) return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> assign = [&](std::size_t v) -> bool {
        if (v == n) return nodes_match() && (!accept || accept(map));
        for (std::size_t w = 0; w < n; ++w) {
            if (used[w] || sig_a[v] != sig_b[w]) continue;
            if (allowed && !allowed(v, w)) continue;
            bool consistent = true;
            for (std::size_t u = 0; u < v && consistent; ++u) consistent = meet_a[v][u] == meet_b[w][map[u]];
            if (!consistent) continue;
            map[v] = w;
            used[w] = true;
            if (assign(v + 1)) return true;
            used[w] = false;
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;
    return map;
}

}  // namespace sdf
