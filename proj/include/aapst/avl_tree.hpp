#pragma once

// AVL tree over distinct keys. One three-way comparison per node on a search
// path; rebalancing reads stored heights only and never compares keys.

#include <cstddef>
#include <memory>
#include <vector>

#include "aapst/instrument.hpp"
#include "aapst/types.hpp"

namespace aapst {

class AvlTree {
public:
    bool search(Key key) const;
    // Throws TreeError(DuplicateKey).
    void insert(Key key);
    // Throws TreeError(NotFound).
    void erase(Key key);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return !root_; }
    std::size_t height() const noexcept { return height_of(root_); }

    std::vector<Key> keys() const;
    // BST order, stored heights, and |h(left) - h(right)| <= 1 everywhere.
    bool check_invariants() const;

    CountingComparator& comparator() const noexcept { return cmp_; }
    const OpMetrics& last_op() const noexcept { return last_; }

private:
    struct Node {
        Key key;
        int height = 1;
        std::unique_ptr<Node> left;
        std::unique_ptr<Node> right;
    };
    using Slot = std::unique_ptr<Node>;

    static int height_of(const Slot& n) noexcept { return n ? n->height : 0; }
    static void update(Node& n) noexcept;
    static void rotate_left(Slot& slot);
    static void rotate_right(Slot& slot);
    static void rebalance(Slot& slot);
    static Slot detach_min(Slot& slot);

    void insert(Slot& slot, Key key);
    void erase(Slot& slot, Key key);

    Slot root_;
    std::size_t size_ = 0;
    mutable CountingComparator cmp_;
    mutable OpMetrics last_;
};

}  // namespace aapst
