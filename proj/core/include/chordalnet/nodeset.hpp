#ifndef CHORDALNET_NODESET_HPP
#define CHORDALNET_NODESET_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace chordalnet {

// Canonical subset of variable indices, stored as a bit mask.
// Doubles as clique candidate and separator label.
class NodeSet {
public:
    static constexpr int kMaxNodes = 30;

    constexpr NodeSet() = default;

    static constexpr NodeSet from_mask(std::uint32_t m) { return NodeSet(m); }

    static constexpr NodeSet single(int v) { return NodeSet(std::uint32_t{1} << v); }

    static NodeSet of(std::initializer_list<int> vs) {
        NodeSet s;
        for (int v : vs) s.add(v);
        return s;
    }

    constexpr std::uint32_t mask() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int v) const { return (bits_ >> v) & 1u; }

    NodeSet& add(int v) {
        bits_ |= std::uint32_t{1} << v;
        return *this;
    }
    NodeSet& remove(int v) {
        bits_ &= ~(std::uint32_t{1} << v);
        return *this;
    }

    constexpr bool subset_of(NodeSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool proper_subset_of(NodeSet o) const {
        return bits_ != o.bits_ && subset_of(o);
    }
    constexpr bool intersects(NodeSet o) const { return (bits_ & o.bits_) != 0; }

    // Lowest member; undefined on the empty set.
    int min_member() const { return std::countr_zero(bits_); }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::uint32_t m = bits_; m != 0; m &= m - 1)
            f(std::countr_zero(m));
    }

    friend constexpr NodeSet operator&(NodeSet a, NodeSet b) { return NodeSet(a.bits_ & b.bits_); }
    friend constexpr NodeSet operator|(NodeSet a, NodeSet b) { return NodeSet(a.bits_ | b.bits_); }
    constexpr NodeSet minus(NodeSet o) const { return NodeSet(bits_ & ~o.bits_); }

    friend constexpr bool operator==(NodeSet a, NodeSet b) = default;

private:
    constexpr explicit NodeSet(std::uint32_t m) : bits_(m) {}
    std::uint32_t bits_ = 0;
};

// Canonical order used for score files, candidate enumeration and clique
// lists: sets compare by (size, lexicographic member sequence).
inline bool canonical_less(NodeSet a, NodeSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    // With equal sizes the lexicographically smaller member sequence is the
    // one whose lowest differing bit is set.
    std::uint32_t diff = a.mask() ^ b.mask();
    if (diff == 0) return false;
    return a.mask() & (diff & -diff);
}

struct NodeSetHash {
    std::size_t operator()(NodeSet s) const {
        return std::hash<std::uint32_t>{}(s.mask());
    }
};

} // namespace chordalnet

#endif
