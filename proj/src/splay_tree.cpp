#include "aapst/splay_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace aapst {

SplayTree::~SplayTree() { clear(); }

SplayTree::SplayTree(SplayTree&& other) noexcept
    : root_(std::exchange(other.root_, nullptr)),
      size_(std::exchange(other.size_, 0)),
      cmp_(other.cmp_),
      last_(other.last_) {}

SplayTree& SplayTree::operator=(SplayTree&& other) noexcept {
    if (this != &other) {
        clear();
        root_ = std::exchange(other.root_, nullptr);
        size_ = std::exchange(other.size_, 0);
        cmp_ = other.cmp_;
        last_ = other.last_;
    }
    return *this;
}

void SplayTree::clear() noexcept {
    // Iterative: a splay tree can degenerate into a path of length n.
    std::vector<Node*> stack;
    if (root_) stack.push_back(root_);
    while (!stack.empty()) {
        Node* n = stack.back();
        stack.pop_back();
        if (n->left) stack.push_back(n->left);
        if (n->right) stack.push_back(n->right);
        delete n;
    }
    root_ = nullptr;
    size_ = 0;
}

// Top-down splay. The loop ends either on an equal comparison or on a missing
// child; in both cases the last comparison was against the final root, so the
// caller never needs to compare again.
SplayTree::SplayResult SplayTree::splay(Key key, Node* t) {
    if (!t) return {nullptr, false, false};
    Node header;
    Node* l = &header;
    Node* r = &header;
    const Node* peeked = nullptr;
    std::strong_ordering last = std::strong_ordering::equal;

    for (;;) {
        if (t != peeked) ++last_.nodes_visited;
        last = cmp_.compare(key, t->key);
        if (last < 0) {
            if (!t->left) break;
            ++last_.nodes_visited;
            peeked = t->left;
            if (cmp_.compare(key, t->left->key) < 0) {
                Node* y = t->left;  // rotate right
                t->left = y->right;
                y->right = t;
                t = y;
                last = std::strong_ordering::less;
                if (!t->left) break;
            }
            r->left = t;  // link right
            r = t;
            t = t->left;
        } else if (last > 0) {
            if (!t->right) break;
            ++last_.nodes_visited;
            peeked = t->right;
            if (cmp_.compare(key, t->right->key) > 0) {
                Node* y = t->right;  // rotate left
                t->right = y->left;
                y->left = t;
                t = y;
                last = std::strong_ordering::greater;
                if (!t->right) break;
            }
            l->right = t;  // link left
            l = t;
            t = t->right;
        } else {
            break;
        }
    }
    l->right = t->left;  // assemble
    r->left = t->right;
    t->left = header.right;
    t->right = header.left;
    return {t, last == 0, last < 0};
}

bool SplayTree::search(Key key) {
    OpScope scope(cmp_, last_);
    const SplayResult s = splay(key, root_);
    root_ = s.root;
    return s.found;
}

void SplayTree::insert(Key key) {
    OpScope scope(cmp_, last_);
    const SplayResult s = splay(key, root_);
    root_ = s.root;
    if (s.found) throw TreeError(TreeErrc::DuplicateKey, "key " + std::to_string(key));
    Node* n = new Node{key};
    if (root_) {
        if (s.key_less_than_root) {
            n->left = root_->left;
            n->right = root_;
            root_->left = nullptr;
        } else {
            n->right = root_->right;
            n->left = root_;
            root_->right = nullptr;
        }
    }
    root_ = n;
    ++size_;
}

void SplayTree::erase(Key key) {
    OpScope scope(cmp_, last_);
    const SplayResult s = splay(key, root_);
    root_ = s.root;
    if (!s.found) throw TreeError(TreeErrc::NotFound, "key " + std::to_string(key));
    Node* old = root_;
    if (!old->left) {
        root_ = old->right;
    } else {
        // Every key on the left is smaller, so this brings its maximum up,
        // leaving no right child.
        root_ = splay(key, old->left).root;
        root_->right = old->right;
    }
    delete old;
    --size_;
}

Key SplayTree::root_key() const {
    if (!root_) throw std::logic_error("root_key on empty splay tree");
    return root_->key;
}

std::size_t SplayTree::height() const {
    std::size_t best = 0;
    std::vector<std::pair<const Node*, std::size_t>> stack;
    if (root_) stack.emplace_back(root_, 1);
    while (!stack.empty()) {
        auto [n, d] = stack.back();
        stack.pop_back();
        best = std::max(best, d);
        if (n->left) stack.emplace_back(n->left, d + 1);
        if (n->right) stack.emplace_back(n->right, d + 1);
    }
    return best;
}

std::vector<Key> SplayTree::keys() const {
    std::vector<Key> out;
    out.reserve(size_);
    std::vector<const Node*> stack;
    const Node* n = root_;
    while (n || !stack.empty()) {
        while (n) {
            stack.push_back(n);
            n = n->left;
        }
        n = stack.back();
        stack.pop_back();
        out.push_back(n->key);
        n = n->right;
    }
    return out;
}

bool SplayTree::check_invariants() const {
    const std::vector<Key> k = keys();
    return k.size() == size_ && std::adjacent_find(k.begin(), k.end(), std::greater_equal<>{}) ==
                                    k.end();
}

}  // namespace aapst
