#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace confgraph {

/// Disjoint-set forest with union by size and path halving.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    /// Blocks with sorted members, ordered by minimal member. Independent of
    /// the order in which unions were performed.
    std::vector<std::vector<std::size_t>> blocks() {
        const std::size_t n = parent_.size();
        std::vector<std::size_t> slot(n, n);
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t x = 0; x < n; ++x) {
            const std::size_t r = find(x);
            if (slot[r] == n) {
                slot[r] = out.size();
                out.emplace_back();
            }
            out[slot[r]].push_back(x);
        }
        return out;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace confgraph
