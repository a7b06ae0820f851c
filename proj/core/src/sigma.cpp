#include "sdf/sigma.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace sdf {

namespace {

void sort_atoms(std::vector<IndexSet>& atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const IndexSet& a, const IndexSet& b) { return a.first() < b.first(); });
}

}  // namespace

SubSigma::SubSigma(IndexSet carrier, std::vector<IndexSet> atoms) : carrier_(std::move(carrier)), atoms_(std::move(atoms)) {
    IndexSet covered(carrier_.universe());
    for (const auto& a : atoms_) {
        if (a.universe() != carrier_.universe()) throw Error(ErrorKind::invalid_argument, "atom over wrong universe");
        if (a.empty()) throw Error(ErrorKind::invalid_argument, "empty atom");
        if (a.intersects(covered)) throw Error(ErrorKind::invalid_argument, "atoms overlap");
        covered |= a;
    }
    if (covered != carrier_) throw Error(ErrorKind::invalid_argument, "atoms do not partition the carrier");
    sort_atoms(atoms_);
}

SubSigma SubSigma::trivial(const IndexSet& carrier) {
    if (carrier.empty()) return SubSigma(carrier, {});
    return SubSigma(carrier, {carrier});
}

SubSigma SubSigma::discrete(const IndexSet& carrier) {
    std::vector<IndexSet> atoms;
    carrier.for_each([&](std::size_t w) { atoms.push_back(IndexSet(carrier.universe(), {w})); });
    return SubSigma(carrier, std::move(atoms));
}

bool SubSigma::contains(const IndexSet& e) const {
    if (e.universe() != carrier_.universe() || !e.subset_of(carrier_)) return false;
    for (const auto& a : atoms_)
        if (a.intersects(e) && !a.subset_of(e)) return false;
    return true;
}

SubSigma SubSigma::trace(const IndexSet& d) const {
    std::vector<IndexSet> atoms;
    for (const auto& a : atoms_) {
        IndexSet t = a & d;
        if (t.any()) atoms.push_back(t);
    }
    return SubSigma(carrier_ & d, std::move(atoms));
}

bool SubSigma::refines(const SubSigma& other) const {
    if (other.carrier_ != carrier_) return false;
    return std::all_of(other.atoms_.begin(), other.atoms_.end(), [&](const IndexSet& a) { return contains(a); });
}

bool SubSigma::within(const ScenarioSpace& space) const {
    return std::all_of(atoms_.begin(), atoms_.end(), [&](const IndexSet& a) { return space.is_event(a); });
}

SubSigma join(const SubSigma& a, const SubSigma& b) {
    if (a.carrier() != b.carrier()) throw Error(ErrorKind::invalid_argument, "join of sigma-algebras on different carriers");
    std::vector<IndexSet> atoms;
    for (const auto& p : a.atoms())
        for (const auto& q : b.atoms()) {
            IndexSet r = p & q;
            if (r.any()) atoms.push_back(r);
        }
    return SubSigma(a.carrier(), std::move(atoms));
}

SubSigma generated_by(const IndexSet& carrier, const std::vector<long>& values) {
    if (values.size() != carrier.universe())
        throw Error(ErrorKind::invalid_argument, "observable needs one value per scenario");
    std::map<long, IndexSet> level;
    carrier.for_each([&](std::size_t w) {
        auto it = level.try_emplace(values[w], IndexSet(carrier.universe())).first;
        it->second.set(w);
    });
    std::vector<IndexSet> atoms;
    for (auto& [v, set] : level) atoms.push_back(set);
    return SubSigma(carrier, std::move(atoms));
}

Verdict verify_eis(const Sdf& s, const Eis& e) {
    if (e.per_move.size() != s.move_count())
        throw Error(ErrorKind::invalid_argument, "information structure lists " + std::to_string(e.per_move.size()) +
                                                     " sigma-algebras for " + std::to_string(s.move_count()) + " moves");
    for (std::size_t i = 0; i < s.move_count(); ++i)
        if (e.per_move[i].carrier() != s.move(i).domain)
            throw Error(ErrorKind::carrier_mismatch, "sigma-algebra of " + s.move(i).name + " lives on " +
                                                         s.space().describe(e.per_move[i].carrier()) + ", domain is " +
                                                         s.space().describe(s.move(i).domain));
    for (std::size_t i = 0; i < s.move_count(); ++i) {
        for (const auto& a : e.per_move[i].atoms())
            if (!s.space().is_event(a))
                return Verdict::fail("atom " + s.space().describe(a) + " of " + s.move(i).name + " is not an event");
    }
    for (std::size_t i = 0; i < s.move_count(); ++i)
        for (std::size_t j = 0; j < s.move_count(); ++j) {
            if (i == j || !s.move_geq(i, j)) continue;
            for (const auto& a : e.per_move[i].atoms()) {
                IndexSet t = a & s.move(j).domain;
                if (!e.per_move[j].contains(t))
                    return Verdict::fail("event " + s.space().describe(a) + " of " + s.move(i).name + " traces to " +
                                         s.space().describe(t) + ", not an event of " + s.move(j).name);
            }
        }
    return Verdict::pass();
}

std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> rgs(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
        if (i == n) {
            out.push_back(rgs);
            return;
        }
        for (std::size_t b = 0; b <= blocks && b <= i; ++b) {
            rgs[i] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    rec(0, 0);
    return out;
}

std::size_t bell_number(std::size_t n) {
    // Bell triangle.
    std::vector<std::size_t> row{1};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::size_t> next{row.back()};
        for (std::size_t v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

std::vector<Eis> enumerate_eis(const Sdf& s, std::size_t cap) {
    const std::size_t k = s.move_count();
    std::vector<std::vector<SubSigma>> candidates(k);
    std::size_t total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const IndexSet& d = s.move(i).domain;
        if (!s.space().is_event(d))
            throw Error(ErrorKind::precondition_violation, "domain of " + s.move(i).name + " is not an event");
        std::vector<IndexSet> inside;
        for (const auto& a : s.space().atoms())
            if (a.subset_of(d)) inside.push_back(a);
        total += bell_number(inside.size());
        if (total > cap)
            throw Error(ErrorKind::size_cap_exceeded, "sum of per-move partition counts exceeds " + std::to_string(cap));
        for (const auto& rgs : set_partitions(inside.size())) {
            std::size_t blocks = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
            std::vector<IndexSet> atoms(blocks, IndexSet(s.space().size()));
            for (std::size_t a = 0; a < rgs.size(); ++a) atoms[rgs[a]] |= inside[a];
            candidates[i].push_back(SubSigma(d, std::move(atoms)));
        }
    }
    // Trace condition between two assigned moves.
    auto compatible = [&](std::size_t i, const SubSigma& fi, std::size_t j, const SubSigma& fj) {
        if (s.move_geq(i, j) && !fj.refines(fi.trace(s.move(j).domain))) return false;
        if (s.move_geq(j, i) && !fi.refines(fj.trace(s.move(i).domain))) return false;
        return true;
    };
    std::vector<Eis> out;
    std::vector<SubSigma> current(k);
    std::size_t visits = 0;
    const std::size_t visit_cap = cap * 256;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (++visits > visit_cap)
            throw Error(ErrorKind::size_cap_exceeded, "information-structure search exceeded its work bound");
        if (i == k) {
            out.push_back(Eis{current});
            return;
        }
        for (const auto& cand : candidates[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) ok = compatible(i, cand, j, current[j]);
            if (!ok) continue;
            current[i] = cand;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

Filtration::Filtration(std::vector<Time> times, std::vector<SubSigma> algebras) {
    if (times.size() != algebras.size()) throw Error(ErrorKind::invalid_argument, "filtration needs one algebra per time");
    std::vector<std::size_t> order(times.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
    for (std::size_t k = 0; k < order.size(); ++k) {
        times_.push_back(times[order[k]]);
        algebras_.push_back(algebras[order[k]]);
        const SubSigma& g = algebras_.back();
        if (g.carrier() != IndexSet::full(g.carrier().universe()))
            throw Error(ErrorKind::invalid_argument, "filtration algebra at time " + to_string(times_.back()) +
                                                         " does not live on the whole scenario set");
        if (k > 0) {
            if (times_[k - 1] == times_[k])
                throw Error(ErrorKind::invalid_argument, "duplicate filtration time " + to_string(times_[k]));
            if (!algebras_[k].refines(algebras_[k - 1]))
                throw Error(ErrorKind::invalid_argument, "filtration not increasing at time " + to_string(times_[k]));
        }
    }
}

const SubSigma& Filtration::at(const Time& t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t);
    if (it == times_.end() || *it != t)
        throw Error(ErrorKind::time_index_mismatch, "filtration has no algebra at time " + to_string(t));
    return algebras_[static_cast<std::size_t>(it - times_.begin())];
}

ChainTrace chain_filtration(const Sdf& s, const Eis& e, const std::vector<std::size_t>& chain) {
    for (std::size_t a : chain)
        if (a >= s.move_count()) throw Error(ErrorKind::unknown_element, "random move index " + std::to_string(a));
    for (std::size_t a = 0; a < chain.size(); ++a)
        for (std::size_t b = a + 1; b < chain.size(); ++b) {
            if (chain[a] == chain[b])
                throw Error(ErrorKind::not_a_chain, "random move " + s.move(chain[a]).name + " listed twice");
            if (!s.move_geq(chain[a], chain[b]) && !s.move_geq(chain[b], chain[a]))
                throw Error(ErrorKind::not_a_chain,
                            s.move(chain[a]).name + " and " + s.move(chain[b]).name + " are not comparable");
        }
    ChainTrace out;
    out.moves = chain;
    auto above = [&](std::size_t x) {
        return std::count_if(chain.begin(), chain.end(), [&](std::size_t y) { return s.move_geq(y, x); });
    };
    std::sort(out.moves.begin(), out.moves.end(), [&](std::size_t a, std::size_t b) { return above(a) < above(b); });
    for (std::size_t x : out.moves) out.algebras.push_back(e.per_move.at(x));
    out.trace_monotone = Verdict::pass();
    for (std::size_t a = 0; a < out.moves.size() && out.trace_monotone.ok; ++a)
        for (std::size_t b = a + 1; b < out.moves.size(); ++b) {
            const IndexSet& db = s.move(out.moves[b]).domain;
            if (!out.algebras[b].refines(out.algebras[a].trace(db))) {
                out.trace_monotone = Verdict::fail("events of " + s.move(out.moves[a]).name + " do not trace into " +
                                                   s.move(out.moves[b]).name);
                break;
            }
        }
    bool full = std::all_of(out.algebras.begin(), out.algebras.end(),
                            [&](const SubSigma& g) { return g.carrier() == s.space().all(); });
    if (full && out.trace_monotone.ok) {
        std::vector<Time> times;
        for (std::size_t k = 0; k < out.moves.size(); ++k) times.push_back(Time(static_cast<std::int64_t>(k)));
        out.filtration = Filtration(std::move(times), out.algebras);
    }
    return out;
}

namespace {

void require_times(const Sdf& s, const std::vector<Time>& move_times) {
    if (move_times.size() != s.move_count())
        throw Error(ErrorKind::invalid_argument, "time map must give one time per random move");
}

}  // namespace

ConstructedEis eis_from_filtration(const Sdf& s, const std::vector<Time>& move_times, const Filtration& g) {
    require_times(s, move_times);
    ConstructedEis out;
    for (std::size_t i = 0; i < s.move_count(); ++i)
        out.eis.per_move.push_back(g.at(move_times[i]).trace(s.move(i).domain));
    out.check = verify_eis(s, out.eis);
    return out;
}

ConstructedEis eis_from_observations(const Sdf& s, const std::vector<Time>& move_times, const Filtration& g,
                                     const ObservationFamily& y) {
    require_times(s, move_times);
    if (y.per_move.size() != s.move_count())
        throw Error(ErrorKind::invalid_argument, "observation family must give one observable per random move");
    const IndexSet all = s.space().all();
    std::vector<SubSigma> generated;
    for (std::size_t i = 0; i < s.move_count(); ++i) {
        SubSigma gen = generated_by(all, y.per_move[i]);
        if (!gen.within(s.space()))
            throw Error(ErrorKind::invalid_argument, "observable of " + s.move(i).name + " is not measurable");
        generated.push_back(std::move(gen));
    }
    ConstructedEis out;
    for (std::size_t i = 0; i < s.move_count(); ++i) {
        SubSigma acc = g.at(move_times[i]);
        for (std::size_t j = 0; j < s.move_count(); ++j)
            if (s.move_geq(j, i)) acc = join(acc, generated[j]);
        out.eis.per_move.push_back(acc.trace(s.move(i).domain));
    }
    out.check = verify_eis(s, out.eis);
    return out;
}

}  // namespace sdf
