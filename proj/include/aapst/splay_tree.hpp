#pragma once

// Top-down splay tree (Sleator) over distinct keys. Each three-way key
// comparison is charged once to the tree's CountingComparator; with top-down
// splaying the descent and the restructuring are the same pass.

#include <cstddef>
#include <vector>

#include "aapst/instrument.hpp"
#include "aapst/types.hpp"

namespace aapst {

class SplayTree {
public:
    SplayTree() = default;
    ~SplayTree();
    SplayTree(SplayTree&& other) noexcept;
    SplayTree& operator=(SplayTree&& other) noexcept;
    SplayTree(const SplayTree&) = delete;
    SplayTree& operator=(const SplayTree&) = delete;

    // Splays key (or the last node on its search path) to the root.
    bool search(Key key);
    // Throws TreeError(DuplicateKey).
    void insert(Key key);
    // Throws TreeError(NotFound).
    void erase(Key key);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return root_ == nullptr; }
    std::size_t height() const;
    bool has_root() const noexcept { return root_ != nullptr; }
    Key root_key() const;

    // In-order keys.
    std::vector<Key> keys() const;
    // BST order and size bookkeeping; not instrumented.
    bool check_invariants() const;

    CountingComparator& comparator() noexcept { return cmp_; }
    const OpMetrics& last_op() const noexcept { return last_; }

private:
    struct Node {
        Key key;
        Node* left = nullptr;
        Node* right = nullptr;
    };

    struct SplayResult {
        Node* root;
        bool found;
        bool key_less_than_root;
    };

    SplayResult splay(Key key, Node* t);
    void clear() noexcept;

    Node* root_ = nullptr;
    std::size_t size_ = 0;
    CountingComparator cmp_;
    OpMetrics last_;
};

}  // namespace aapst
