#include "sdf/order.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace sdf {

Poset::Poset(std::vector<std::string> labels, std::vector<std::vector<bool>> geq)
    : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    if (geq.size() != n)
        throw Error(ErrorKind::invalid_argument, "order relation has wrong number of rows");
    up_.assign(n, IndexSet(n));
    down_.assign(n, IndexSet(n));
    for (std::size_t x = 0; x < n; ++x) {
        if (geq[x].size() != n)
            throw Error(ErrorKind::invalid_argument, "order relation row has wrong length");
        for (std::size_t y = 0; y < n; ++y) {
            if (!geq[x][y]) continue;
            up_[y].set(x);
            down_[x].set(y);
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        if (!up_[x].test(x))
            throw Error(ErrorKind::invalid_argument, "order not reflexive at " + labels_[x]);
        IndexSet both = up_[x] & down_[x];
        both.reset(x);
        if (both.any())
            throw Error(ErrorKind::invalid_argument,
                        "order not antisymmetric: " + labels_[x] + " and " + labels_[both.first()]);
        bool transitive = true;
        std::size_t bad = 0;
        up_[x].for_each([&](std::size_t y) {
            if (transitive && !up_[y].subset_of(up_[x])) {
                transitive = false;
                bad = y;
            }
        });
        if (!transitive)
            throw Error(ErrorKind::invalid_argument,
                        "order not transitive above " + labels_[x] + " via " + labels_[bad]);
    }
}

const std::string& Poset::label(std::size_t x) const {
    if (x >= size()) throw Error(ErrorKind::unknown_element, "element " + std::to_string(x));
    return labels_[x];
}

std::size_t Poset::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error(ErrorKind::unknown_element, "element '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

namespace {

void require_element(const Poset& p, std::size_t x) {
    if (x >= p.size())
        throw Error(ErrorKind::unknown_element,
                    "element " + std::to_string(x) + " not in poset of size " + std::to_string(p.size()));
}

void require_forest(const Poset& p) {
    if (!is_forest(p)) throw Error(ErrorKind::not_a_forest, "poset is not a forest");
}

IndexSet comparable_set(const Poset& p, std::size_t x) {
    IndexSet s = p.up(x) | p.down(x);
    s.reset(x);
    return s;
}

void sort_unique(std::vector<IndexSet>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

IndexSet up_set(const Poset& p, std::size_t x) {
    require_element(p, x);
    return p.up(x);
}

IndexSet down_set(const Poset& p, std::size_t x) {
    require_element(p, x);
    return p.down(x);
}

bool is_chain(const Poset& p, const IndexSet& s) {
    bool ok = true;
    s.for_each([&](std::size_t a) {
        if (ok && !s.subset_of(p.up(a) | p.down(a))) ok = false;
    });
    return ok;
}

bool is_forest(const Poset& p) {
    for (std::size_t x = 0; x < p.size(); ++x)
        if (!is_chain(p, p.up(x))) return false;
    return true;
}

bool is_rooted_forest(const Poset& p) {
    require_forest(p);
    if (p.size() == 0) return false;
    IndexSet roots = maximal_elements(p);
    for (std::size_t x = 0; x < p.size(); ++x)
        if (!p.up(x).intersects(roots)) return false;
    return true;
}

IndexSet maximal_elements(const Poset& p) {
    IndexSet out(p.size());
    for (std::size_t x = 0; x < p.size(); ++x)
        if (p.up(x).count() == 1) out.set(x);
    return out;
}

IndexSet minimal_elements(const Poset& p) {
    IndexSet out(p.size());
    for (std::size_t x = 0; x < p.size(); ++x)
        if (p.down(x).count() == 1) out.set(x);
    return out;
}

std::vector<IndexSet> connected_components(const Poset& p) {
    require_forest(p);
    const std::size_t n = p.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t x = 0; x < n; ++x)
        p.up(x).for_each([&](std::size_t y) { parent[find(x)] = find(y); });
    std::vector<IndexSet> blocks;
    std::vector<std::size_t> block_of_root(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t r = find(x);
        if (block_of_root[r] == n) {
            block_of_root[r] = blocks.size();
            blocks.emplace_back(n);
        }
        blocks[block_of_root[r]].set(x);
    }
    return blocks;
}

ChainSet maximal_chains_general(const Poset& p, std::size_t cap) {
    const std::size_t n = p.size();
    std::vector<IndexSet> adj(n);
    for (std::size_t x = 0; x < n; ++x) adj[x] = comparable_set(p, x);

    ChainSet out;
    out.maximal = true;
    std::size_t work = 0;
    // Bron-Kerbosch with pivoting on the comparability graph: its maximal
    // cliques are exactly the maximal chains.
    std::function<void(IndexSet, IndexSet, IndexSet)> expand = [&](IndexSet r, IndexSet cand,
                                                                   IndexSet excl) {
        if (++work > cap)
            throw Error(ErrorKind::size_cap_exceeded,
                        "maximal chain enumeration exceeded " + std::to_string(cap) + " work units");
        if (cand.empty() && excl.empty()) {
            out.chains.push_back(r);
            return;
        }
        IndexSet pool = cand | excl;
        std::size_t pivot = pool.first();
        std::size_t best = 0;
        pool.for_each([&](std::size_t u) {
            std::size_t c = (cand & adj[u]).count();
            if (c > best) {
                best = c;
                pivot = u;
            }
        });
        IndexSet todo = cand - adj[pivot];
        todo.for_each([&](std::size_t v) {
            IndexSet r2 = r;
            r2.set(v);
            expand(r2, cand & adj[v], excl & adj[v]);
            cand.reset(v);
            excl.set(v);
        });
    };
    if (n > 0) expand(IndexSet(n), IndexSet::full(n), IndexSet(n));
    sort_unique(out.chains);
    return out;
}

ChainSet maximal_chains(const Poset& p, std::size_t cap) {
    if (!is_forest(p)) return maximal_chains_general(p, cap);
    // In a finite forest a maximal chain has a least element t, equals the
    // chain up(t), and t is minimal; conversely up(t) is maximal for minimal t.
    if (p.size() > cap)
        throw Error(ErrorKind::size_cap_exceeded,
                    "maximal chain enumeration exceeded " + std::to_string(cap) + " work units");
    ChainSet out;
    out.maximal = true;
    minimal_elements(p).for_each([&](std::size_t t) { out.chains.push_back(p.up(t)); });
    sort_unique(out.chains);
    return out;
}

bool separates(const Poset& p, std::size_t x, std::size_t y, std::size_t cap) {
    require_element(p, x);
    require_element(p, y);
    if (x == y)
        throw Error(ErrorKind::invalid_argument, "separation needs two distinct elements");
    for (const auto& c : maximal_chains(p, cap).chains)
        if (c.test(x) != c.test(y)) return true;
    return false;
}

std::optional<std::pair<std::size_t, std::size_t>> unseparated_pair(const Poset& p,
                                                                    std::size_t cap) {
    ChainSet chains = maximal_chains(p, cap);
    for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y = x + 1; y < p.size(); ++y) {
            bool sep = false;
            for (const auto& c : chains.chains)
                if (c.test(x) != c.test(y)) {
                    sep = true;
                    break;
                }
            if (!sep) return std::make_pair(x, y);
        }
    return std::nullopt;
}

bool is_decision_forest(const Poset& p, std::size_t cap) {
    return is_forest(p) && is_rooted_forest(p) && !unseparated_pair(p, cap).has_value();
}

std::optional<std::vector<std::size_t>> find_order_isomorphism(const Poset& p, const Poset& q) {
    const std::size_t n = p.size();
    if (q.size() != n) return std::nullopt;
    auto signature = [](const Poset& r, std::size_t x) {
        return std::make_pair(r.up(x).count(), r.down(x).count());
    };
    std::vector<std::size_t> map(n, n);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> assign = [&](std::size_t x) -> bool {
        if (x == n) return true;
        auto sig = signature(p, x);
        for (std::size_t y = 0; y < n; ++y) {
            if (used[y] || signature(q, y) != sig) continue;
            bool consistent = true;
            for (std::size_t z = 0; z < x && consistent; ++z)
                consistent = p.geq(x, z) == q.geq(y, map[z]) && p.geq(z, x) == q.geq(map[z], y);
            if (!consistent) continue;
            map[x] = y;
            used[y] = true;
            if (assign(x + 1)) return true;
            used[y] = false;
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;
    return map;
}

}  // namespace sdf
