#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace boltspan {

// Disjoint sets with union by size and path halving.
class DisjointSets {
public:
    DisjointSets() = default;
    explicit DisjointSets(std::size_t n) { reset(n); }

    void reset(std::size_t n) {
        parent_.resize(n);
        std::iota(parent_.begin(), parent_.end(), 0u);
        size_.assign(n, 1);
    }

    std::uint32_t add() {
        const auto id = static_cast<std::uint32_t>(parent_.size());
        parent_.push_back(id);
        size_.push_back(1);
        return id;
    }

    [[nodiscard]] std::uint32_t find(std::uint32_t x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    [[nodiscard]] bool same(std::uint32_t a, std::uint32_t b) const { return find(a) == find(b); }
    [[nodiscard]] std::size_t size() const noexcept { return parent_.size(); }

private:
    mutable std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

}  // namespace boltspan
