#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace nilmoore {

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
        return i;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    std::size_t class_count() {
        std::size_t c = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i)
            if (find(i) == i) ++c;
        return c;
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace nilmoore
