#include "sdf/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <tuple>

namespace sdf {

namespace {

ActionSpace single_agent(std::vector<std::string> labels, const std::string& agent = "agent") {
    Factorization f{{agent}, {labels}, {}};
    for (std::uint32_t a = 0; a < labels.size(); ++a) f.coords.push_back({a});
    return ActionSpace(std::move(labels), std::move(f));
}

TimeAxis integer_axis(int n) {
    std::vector<Time> t;
    for (int k = 0; k < n; ++k) t.emplace_back(k);
    return TimeAxis(std::move(t));
}

// All paths of length n over m actions, lexicographic.
std::vector<Path> all_paths(std::size_t n, std::size_t m) {
    std::vector<Path> out;
    Path p(n, 0);
    while (true) {
        out.push_back(p);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++p[i] < m) break;
            p[i] = 0;
            if (i == 0) return out;
        }
        if (n == 0) return out;
    }
}

}  // namespace

PathOutcomes product_outcomes(const ScenarioSpace& space, const TimeAxis& time, const ActionSpace& actions) {
    std::vector<PathOutcome> w;
    std::vector<Path> paths = all_paths(time.size(), actions.size());
    for (std::size_t s = 0; s < space.size(); ++s)
        for (const auto& p : paths) w.push_back({s, p});
    return PathOutcomes(time, actions, space, std::move(w));
}

PathOutcomes timing_outcomes(const ScenarioSpace& space, const TimeAxis& time, const std::vector<std::string>& agents) {
    ActionSpace actions = ActionSpace::product(agents, std::vector<std::vector<std::string>>(agents.size(), {"0", "1"}));
    const auto& coords = actions.factorization().coords;
    auto decreasing = [&](const Path& p) {
        for (std::size_t k = 1; k < p.size(); ++k)
            for (std::size_t i = 0; i < agents.size(); ++i)
                if (coords[p[k]][i] > coords[p[k - 1]][i]) return false;
        return true;
    };
    std::vector<PathOutcome> w;
    std::vector<Path> paths = all_paths(time.size(), actions.size());
    for (std::size_t s = 0; s < space.size(); ++s)
        for (const auto& p : paths)
            if (decreasing(p)) w.push_back({s, p});
    return PathOutcomes(time, std::move(actions), space, std::move(w));
}

PathOutcomes up_and_out_outcomes(const ScenarioSpace& space, const TimeAxis& time,
                                 const std::vector<std::vector<Time>>& price) {
    if (price.size() != space.size()) throw Error(ErrorKind::invalid_argument, "price table needs a row per scenario");
    for (const auto& row : price) {
        if (row.size() != time.size())
            throw Error(ErrorKind::invalid_argument, "price table needs a column per time point");
        if (row.front() != Time(1)) throw Error(ErrorKind::invalid_argument, "initial price must be 1");
        for (const auto& p : row)
            if (p <= Time(0)) throw Error(ErrorKind::invalid_argument, "prices must be positive");
    }
    ActionSpace actions = single_agent({"0", "1"}, "holder");
    std::size_t n = time.size();
    std::vector<PathOutcome> w;
    for (std::size_t s = 0; s < space.size(); ++s) {
        // Exercise at index e (drop to 0 there), or never (e = n).
        Time running_max = 0;
        std::vector<bool> alive(n);
        for (std::size_t k = 0; k < n; ++k) {
            running_max = std::max(running_max, price[s][k]);
            alive[k] = running_max < Time(2);
        }
        for (std::size_t e = 0; e <= n; ++e) {
            if (e < n && !alive[e]) continue;
            Path p(n, 1);
            for (std::size_t k = e; k < n; ++k) p[k] = 0;
            w.push_back({s, p});
        }
    }
    std::sort(w.begin(), w.end(), [](const PathOutcome& a, const PathOutcome& b) {
        return std::tie(a.scenario, a.path) < std::tie(b.scenario, b.path);
    });
    return PathOutcomes(time, std::move(actions), space, std::move(w));
}

PathOutcomes simple_action_path() {
    return product_outcomes(ScenarioSpace::discrete({"1", "2"}), integer_axis(2), single_agent({"1", "2"}));
}

PathOutcomes variant_action_path() {
    // Actions 0, 1, 2 have indices 0, 1, 2.
    std::vector<PathOutcome> w{{0, {1, 1}}, {0, {1, 2}}, {0, {2, 0}}};
    for (std::uint32_t k = 1; k <= 2; ++k)
        for (std::uint32_t m = 1; m <= 2; ++m) w.push_back({1, {k, m}});
    return PathOutcomes(integer_axis(2), single_agent({"0", "1", "2"}), ScenarioSpace::discrete({"1", "2"}),
                        std::move(w));
}

PathOutcomes timing_example() {
    return timing_outcomes(ScenarioSpace::discrete({"1", "2"}), integer_axis(3), {"a", "b"});
}

PathOutcomes up_and_out_example() {
    std::vector<std::vector<Time>> price{{Time(1), Time(5, 2), Time(3)}, {Time(1), Time(3, 2), Time(1, 2)}};
    return up_and_out_outcomes(ScenarioSpace::discrete({"1", "2"}), integer_axis(3), price);
}

PathOutcomes product_example() {
    return product_outcomes(ScenarioSpace::discrete({"1", "2"}), integer_axis(2), single_agent({"0", "1"}));
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char* s = std::getenv("SDF_SEED");
    if (!s || !*s) return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    return end && *end == '\0' ? v : fallback;
}

PathOutcomes random_path_outcomes(std::mt19937_64& rng, const RandomOutcomeOptions& options) {
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    std::size_t n_scen = pick(1, options.max_scenarios);
    std::size_t n_time = pick(1, options.max_times);
    std::size_t n_act = pick(1, options.max_actions);

    std::vector<std::string> labels;
    for (std::size_t w = 0; w < n_scen; ++w) labels.push_back(std::to_string(w + 1));
    std::vector<std::size_t> block(n_scen, 0);
    std::size_t blocks = 0;
    for (std::size_t w = 0; w < n_scen; ++w) {
        block[w] = pick(0, blocks);
        if (block[w] == blocks) ++blocks;
    }
    std::vector<IndexSet> atoms(blocks, IndexSet(n_scen));
    for (std::size_t w = 0; w < n_scen; ++w) atoms[block[w]].set(w);
    ScenarioSpace space(labels, atoms);

    std::vector<Time> grid;
    for (int k = 0; k <= 6; ++k) grid.emplace_back(k, 2);
    std::shuffle(grid.begin() + 1, grid.end(), rng);
    TimeAxis time(std::vector<Time>(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(n_time)));

    std::vector<std::string> acts;
    for (std::size_t a = 0; a < n_act; ++a) acts.push_back("a" + std::to_string(a));
    ActionSpace actions(acts);

    std::bernoulli_distribution keep(options.keep_probability);
    std::vector<Path> candidates = all_paths(n_time, n_act);
    std::vector<PathOutcome> w;
    for (std::size_t s = 0; s < n_scen; ++s) {
        std::size_t before = w.size();
        for (const auto& p : candidates)
            if (keep(rng)) w.push_back({s, p});
        if (w.size() == before) w.push_back({s, candidates[pick(0, candidates.size() - 1)]});
    }
    return PathOutcomes(time, actions, space, std::move(w));
}

SetFamily random_set_family(std::mt19937_64& rng, std::size_t max_universe, std::size_t max_sets) {
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    SetFamily out;
    out.universe = pick(1, max_universe);
    std::set<IndexSet> sets;
    if (std::bernoulli_distribution(0.5)(rng)) {
        // Nested splits give forests most of the time; a few random sets
        // and dropped nodes keep the other cases in play.
        std::function<void(const std::vector<std::size_t>&)> split = [&](const std::vector<std::size_t>& part) {
            sets.insert(IndexSet::from(out.universe, part));
            if (part.size() < 2) return;
            std::vector<std::size_t> shuffled = part;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            std::size_t cut = pick(1, shuffled.size() - 1);
            split({shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(cut)});
            split({shuffled.begin() + static_cast<std::ptrdiff_t>(cut), shuffled.end()});
        };
        std::vector<std::size_t> all(out.universe);
        for (std::size_t v = 0; v < out.universe; ++v) all[v] = v;
        std::size_t roots = pick(1, out.universe);
        std::shuffle(all.begin(), all.end(), rng);
        for (std::size_t r = 0; r < roots; ++r) {
            std::vector<std::size_t> part;
            for (std::size_t v = r; v < out.universe; v += roots) part.push_back(all[v]);
            split(part);
        }
        std::vector<IndexSet> list(sets.begin(), sets.end());
        std::bernoulli_distribution drop(0.1);
        sets.clear();
        for (auto& s : list)
            if (!drop(rng)) sets.insert(s);
        if (std::bernoulli_distribution(0.2)(rng)) {
            IndexSet extra(out.universe);
            for (std::size_t v = 0; v < out.universe; ++v)
                if (std::bernoulli_distribution(0.5)(rng)) extra.set(v);
            if (extra.any()) sets.insert(extra);
        }
    } else {
        std::size_t count = pick(1, max_sets);
        for (std::size_t j = 0; j < count * 4 && sets.size() < count; ++j) {
            IndexSet s(out.universe);
            for (std::size_t v = 0; v < out.universe; ++v)
                if (std::bernoulli_distribution(0.4)(rng)) s.set(v);
            if (s.any()) sets.insert(s);
        }
        if (std::bernoulli_distribution(0.5)(rng))
            for (std::size_t v = 0; v < out.universe && sets.size() < max_sets; ++v)
                sets.insert(IndexSet(out.universe, {v}));
    }
    while (sets.size() > max_sets) sets.erase(std::prev(sets.end()));
    if (sets.empty()) sets.insert(IndexSet::full(out.universe));
    out.sets.assign(sets.begin(), sets.end());
    std::shuffle(out.sets.begin(), out.sets.end(), rng);
    return out;
}

}  // namespace sdf
