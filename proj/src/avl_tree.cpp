#include "aapst/avl_tree.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace aapst {

void AvlTree::update(Node& n) noexcept {
    n.height = 1 + std::max(height_of(n.left), height_of(n.right));
}

void AvlTree::rotate_left(Slot& slot) {
    Slot r = std::move(slot->right);
    slot->right = std::move(r->left);
    update(*slot);
    r->left = std::move(slot);
    update(*r);
    slot = std::move(r);
}

void AvlTree::rotate_right(Slot& slot) {
    Slot l = std::move(slot->left);
    slot->left = std::move(l->right);
    update(*slot);
    l->right = std::move(slot);
    update(*l);
    slot = std::move(l);
}

void AvlTree::rebalance(Slot& slot) {
    Node& n = *slot;
    update(n);
    const int balance = height_of(n.left) - height_of(n.right);
    if (balance > 1) {
        if (height_of(n.left->left) < height_of(n.left->right)) rotate_left(n.left);
        rotate_right(slot);
    } else if (balance < -1) {
        if (height_of(n.right->right) < height_of(n.right->left)) rotate_right(n.right);
        rotate_left(slot);
    }
}

bool AvlTree::search(Key key) const {
    OpScope scope(cmp_, last_);
    const Node* n = root_.get();
    while (n) {
        ++last_.nodes_visited;
        const auto c = cmp_.compare(key, n->key);
        if (c == 0) return true;
        n = c < 0 ? n->left.get() : n->right.get();
    }
    return false;
}

void AvlTree::insert(Key key) {
    OpScope scope(cmp_, last_);
    insert(root_, key);
    ++size_;
}

void AvlTree::insert(Slot& slot, Key key) {
    if (!slot) {
        slot = std::make_unique<Node>();
        slot->key = key;
        return;
    }
    ++last_.nodes_visited;
    const auto c = cmp_.compare(key, slot->key);
    if (c == 0) throw TreeError(TreeErrc::DuplicateKey, "key " + std::to_string(key));
    insert(c < 0 ? slot->left : slot->right, key);
    rebalance(slot);
}

void AvlTree::erase(Key key) {
    OpScope scope(cmp_, last_);
    erase(root_, key);
    --size_;
}

AvlTree::Slot AvlTree::detach_min(Slot& slot) {
    if (!slot->left) {
        Slot min = std::move(slot);
        slot = std::move(min->right);
        return min;
    }
    Slot min = detach_min(slot->left);
    rebalance(slot);
    return min;
}

void AvlTree::erase(Slot& slot, Key key) {
    if (!slot) throw TreeError(TreeErrc::NotFound, "key " + std::to_string(key));
    ++last_.nodes_visited;
    const auto c = cmp_.compare(key, slot->key);
    if (c < 0) {
        erase(slot->left, key);
    } else if (c > 0) {
        erase(slot->right, key);
    } else if (!slot->left || !slot->right) {
        slot = std::move(slot->left ? slot->left : slot->right);
        return;
    } else {
        Slot successor = detach_min(slot->right);
        successor->left = std::move(slot->left);
        successor->right = std::move(slot->right);
        slot = std::move(successor);
    }
    rebalance(slot);
}

std::vector<Key> AvlTree::keys() const {
    std::vector<Key> out;
    out.reserve(size_);
    std::vector<const Node*> stack;
    const Node* n = root_.get();
    while (n || !stack.empty()) {
        while (n) {
            stack.push_back(n);
            n = n->left.get();
        }
        n = stack.back();
        stack.pop_back();
        out.push_back(n->key);
        n = n->right.get();
    }
    return out;
}

bool AvlTree::check_invariants() const {
    struct Walk {
        static bool ok(const Slot& n) {
            if (!n) return true;
            if (!ok(n->left) || !ok(n->right)) return false;
            const int hl = height_of(n->left);
            const int hr = height_of(n->right);
            return n->height == 1 + std::max(hl, hr) && std::abs(hl - hr) <= 1;
        }
    };
    const std::vector<Key> k = keys();
    return k.size() == size_ && Walk::ok(root_) &&
           std::adjacent_find(k.begin(), k.end(), std::greater_equal<>{}) == k.end();
}

}  // namespace aapst
