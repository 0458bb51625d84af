#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace ledgertopo::detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0u); }

    std::uint32_t find(std::uint32_t x) {
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

    std::uint32_t size_of(std::uint32_t x) { return size_[find(x)]; }

    /// Resets only the listed elements to singletons.
    template <typename Range>
    void reset(const Range& elements) {
        for (auto x : elements) {
            parent_[x] = x;
            size_[x] = 1;
        }
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

} // namespace ledgertopo::detail
