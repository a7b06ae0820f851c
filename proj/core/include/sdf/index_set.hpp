#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace sdf {

// Subset of {0, ..., universe-1}, stored as a bit vector. Used for outcome
// sets, scenario events, node families and move sets alike.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::size_t universe);
    IndexSet(std::size_t universe, std::initializer_list<std::size_t> members);

    static IndexSet full(std::size_t universe);
    static IndexSet from(std::size_t universe, const std::vector<std::size_t>& members);

    std::size_t universe() const { return n_; }

    bool test(std::size_t i) const {
        return i < n_ && ((w_[i >> 6] >> (i & 63)) & 1u) != 0;
    }
    void set(std::size_t i);
    void reset(std::size_t i);

    std::size_t count() const;
    bool empty() const;
    bool any() const { return !empty(); }

    bool subset_of(const IndexSet& other) const;
    bool intersects(const IndexSet& other) const;

    IndexSet& operator|=(const IndexSet& other);
    IndexSet& operator&=(const IndexSet& other);
    IndexSet& operator-=(const IndexSet& other);

    friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
    friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
    friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

    IndexSet complement() const;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;
    friend std::strong_ordering operator<=>(const IndexSet& a, const IndexSet& b);

    std::vector<std::size_t> elements() const;
    // Smallest member; universe() if empty.
    std::size_t first() const;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t word = w_[k];
            while (word != 0) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
                f(k * 64 + bit);
                word &= word - 1;
            }
        }
    }

    std::size_t hash() const;

private:
    void require_same_universe(const IndexSet& other) const;

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct IndexSetHash {
    std::size_t operator()(const IndexSet& s) const { return s.hash(); }
};

}  // namespace sdf
