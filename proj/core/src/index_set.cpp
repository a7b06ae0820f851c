#include "sdf/index_set.hpp"

#include <bit>

#include "sdf/error.hpp"

namespace sdf {

namespace {
std::size_t words_for(std::size_t n) { return (n + 63) / 64; }
}  // namespace

IndexSet::IndexSet(std::size_t universe) : n_(universe), w_(words_for(universe), 0) {}

IndexSet::IndexSet(std::size_t universe, std::initializer_list<std::size_t> members)
    : IndexSet(universe) {
    for (std::size_t m : members) set(m);
}

IndexSet IndexSet::full(std::size_t universe) {
    IndexSet s(universe);
    for (auto& word : s.w_) word = ~std::uint64_t{0};
    if (universe % 64 != 0 && !s.w_.empty())
        s.w_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
    return s;
}

IndexSet IndexSet::from(std::size_t universe, const std::vector<std::size_t>& members) {
    IndexSet s(universe);
    for (std::size_t m : members) s.set(m);
    return s;
}

void IndexSet::set(std::size_t i) {
    if (i >= n_)
        throw Error(ErrorKind::unknown_element,
                    "index " + std::to_string(i) + " outside universe of size " +
                        std::to_string(n_));
    w_[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void IndexSet::reset(std::size_t i) {
    if (i >= n_) return;
    w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

std::size_t IndexSet::count() const {
    std::size_t c = 0;
    for (auto word : w_) c += static_cast<std::size_t>(std::popcount(word));
    return c;
}

bool IndexSet::empty() const {
    for (auto word : w_)
        if (word != 0) return false;
    return true;
}

void IndexSet::require_same_universe(const IndexSet& other) const {
    if (n_ != other.n_)
        throw Error(ErrorKind::invalid_argument,
                    "index sets over different universes (" + std::to_string(n_) +
                        " vs " + std::to_string(other.n_) + ")");
}

bool IndexSet::subset_of(const IndexSet& other) const {
    require_same_universe(other);
    for (std::size_t k = 0; k < w_.size(); ++k)
        if ((w_[k] & ~other.w_[k]) != 0) return false;
    return true;
}

bool IndexSet::intersects(const IndexSet& other) const {
    require_same_universe(other);
    for (std::size_t k = 0; k < w_.size(); ++k)
        if ((w_[k] & other.w_[k]) != 0) return true;
    return false;
}

IndexSet& IndexSet::operator|=(const IndexSet& other) {
    require_same_universe(other);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= other.w_[k];
    return *this;
}

IndexSet& IndexSet::operator&=(const IndexSet& other) {
    require_same_universe(other);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= other.w_[k];
    return *this;
}

IndexSet& IndexSet::operator-=(const IndexSet& other) {
    require_same_universe(other);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~other.w_[k];
    return *this;
}

IndexSet IndexSet::complement() const { return full(n_) - *this; }

std::strong_ordering operator<=>(const IndexSet& a, const IndexSet& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    // Compare as sorted member sequences: the set holding the smallest
    // differing element that the other lacks decides, unless it is a prefix.
    for (std::size_t k = 0; k < a.w_.size(); ++k) {
        std::uint64_t diff = a.w_[k] ^ b.w_[k];
        if (diff == 0) continue;
        std::uint64_t low = diff & (~diff + 1);
        bool a_has = (a.w_[k] & low) != 0;
        // The set that has the differing element: its sequence continues
        // with a smaller value than the other's, unless the other has no
        // further elements at all.
        const IndexSet& with = a_has ? a : b;
        const IndexSet& without = a_has ? b : a;
        std::size_t pos = k * 64 + static_cast<std::size_t>(std::countr_zero(low));
        bool without_has_more = false;
        for (std::size_t j = pos + 1; j < without.n_ && !without_has_more; ++j)
            without_has_more = without.test(j);
        bool with_first = without_has_more;
        // with_first: `with` sorts before `without`.
        if (&with == &a) return with_first ? std::strong_ordering::less : std::strong_ordering::greater;
        return with_first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

std::vector<std::size_t> IndexSet::elements() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
}

std::size_t IndexSet::first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
        if (w_[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(w_[k]));
    return n_;
}

std::size_t IndexSet::hash() const {
    std::size_t h = std::hash<std::size_t>{}(n_);
    for (auto word : w_) h ^= std::hash<std::uint64_t>{}(word) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace sdf
