#pragma once

// Access-adaptive priority search tree: a max-PST whose pairs are
// (key, access count). Hot keys migrate toward the root while the split-key
// skeleton keeps every operation within O(log n).

#include <cstdint>

#include "aapst/pst.hpp"

namespace aapst {

struct AapstOptions {
    double alpha = Pst::kDefaultAlpha;
    // Re-seat a promoted pair at the highest ancestor it outranks instead of
    // reinserting it from the root.
    bool siftup = false;
};

class Aapst {
public:
    static constexpr Priority kMaxCount = Priority{1} << 62;

    Aapst() : Aapst(AapstOptions{}) {}
    explicit Aapst(AapstOptions options);

    // Wraps an existing max-PST whose priorities are access counts.
    // Throws TreeError(WrongVariant) for a min-PST.
    static Aapst from_tree(Pst tree, bool siftup = false);

    // Stores key with count 1 (the insertion is its first access).
    // Throws TreeError(DuplicateKey).
    void insert_key(Key key);
    // Throws TreeError(NotFound).
    void delete_key(Key key);

    // Finds key and bumps its count. If the new count exceeds the parent's,
    // the pair is deleted and reinserted so heap order holds again. Returns
    // false, without touching anything, when key is absent.
    bool query(Key key);

    bool contains(Key key) const;
    // Stored access count, or 0 when absent. Not instrumented.
    Priority count_of(Key key) const;

    std::size_t size() const noexcept { return tree_.size(); }
    bool empty() const noexcept { return tree_.empty(); }
    std::uint64_t total_accesses() const noexcept { return total_; }
    std::uint64_t restructure_count() const noexcept { return restructures_; }
    const AapstOptions& options() const noexcept { return options_; }

    const Pst& tree() const noexcept { return tree_; }
    InvariantReport check_invariants() const { return tree_.check_invariants(); }

    CountingComparator& comparator() const noexcept { return tree_.comparator(); }
    const OpMetrics& last_op() const noexcept { return last_; }

private:
    Pst tree_;
    AapstOptions options_;
    std::uint64_t total_ = 0;
    std::uint64_t restructures_ = 0;
    mutable OpMetrics last_;
};

}  // namespace aapst
