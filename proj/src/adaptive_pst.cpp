#include "aapst/adaptive_pst.hpp"

#include <string>

namespace aapst {

Aapst::Aapst(AapstOptions options) : tree_(HeapVariant::Max, options.alpha), options_(options) {}

Aapst Aapst::from_tree(Pst tree, bool siftup) {
    if (tree.variant() != HeapVariant::Max) {
        throw TreeError(TreeErrc::WrongVariant, "an AAPST needs a max-PST");
    }
    Aapst t(AapstOptions{tree.alpha(), siftup});
    for (const KeyPair& p : tree.pairs()) t.total_ += static_cast<std::uint64_t>(p.y);
    t.tree_ = std::move(tree);
    return t;
}

void Aapst::insert_key(Key key) {
    tree_.insert(KeyPair{key, 1});
    last_ = tree_.last_op();
    ++total_;
}

void Aapst::delete_key(Key key) {
    const KeyPair removed = tree_.erase(key);
    last_ = tree_.last_op();
    total_ -= static_cast<std::uint64_t>(removed.y);
}

bool Aapst::query(Key key) {
    OpScope scope(tree_.cmp_, last_);
    CountingComparator& cmp = tree_.cmp_;

    // Each visited node costs two key comparisons: equality against the
    // resident pair, then routing against the split.
    Pst::Path path;
    Pst::Slot* slot = &tree_.root_;
    bool found = false;
    while (*slot) {
        PstNode& n = **slot;
        ++last_.nodes_visited;
        path.push_back(slot);
        if (cmp.compare(key, n.pair.x) == 0) {
            found = true;
            break;
        }
        slot = tree_.routes_left(key, n) ? &n.left : &n.right;
    }
    if (!found) return false;

    PstNode& node = **path.back();
    if (node.pair.y >= kMaxCount) {
        throw TreeError(TreeErrc::CountOverflow, "access count of " + std::to_string(key));
    }
    ++node.pair.y;
    ++total_;

    if (path.size() == 1) return true;
    const PstNode& parent = **path[path.size() - 2];
    if (node.pair.y <= parent.pair.y) return true;

    ++restructures_;
    last_.restructured = true;
    const KeyPair pair = node.pair;

    // Highest ancestor the promoted pair outranks. Counts are non-increasing
    // down the path, so it is the first one from the top.
    std::size_t start = 0;
    if (options_.siftup) {
        while (pair.y <= (*path[start])->pair.y) ++start;
    }

    const std::size_t rebuilt = tree_.erase_at(path);
    // A rebuild at or above the chosen ancestor invalidates the slots below it.
    if (rebuilt != Pst::kNoRebuild && rebuilt < start) start = rebuilt;
    tree_.insert_from(std::move(path), start, pair);
    return true;
}

bool Aapst::contains(Key key) const {
    const bool present = tree_.find(key).has_value();
    last_ = tree_.last_op();
    return present;
}

Priority Aapst::count_of(Key key) const {
    CountingComparator& cmp = tree_.comparator();
    const bool was = cmp.enabled();
    cmp.set_enabled(false);
    const auto p = tree_.find(key);
    cmp.set_enabled(was);
    return p ? p->y : 0;
}

}  // namespace aapst
