#pragma once

// Priority search tree over (x, y) pairs.
//
// Each node stores exactly one pair plus a split key. Pairs are heap-ordered
// on y (min or max, chosen at construction) and routed by x through the split
// keys: a pair with x <= split lives in the left subtree, x > split in the
// right one. Every node holds a pair, so the node count equals the number of
// stored pairs.
//
// Balance is kept by weight-balanced partial rebuilding: after an update, the
// highest node on the update path with a child heavier than alpha * size is
// rebuilt into a perfectly balanced subtree. This gives height at most
// log_{1/alpha}(n) + 1 at all times.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aapst/instrument.hpp"
#include "aapst/types.hpp"

namespace aapst {

enum class HeapVariant { Min, Max };

// Query region x0 <= x <= x1, y <= y1.
struct Rect {
    Key x0 = 0;
    Key x1 = 0;
    Priority y1 = 0;
};

struct PstNode {
    KeyPair pair;
    Key split = 0;
    std::size_t size = 1;
    std::unique_ptr<PstNode> left;
    std::unique_ptr<PstNode> right;
};

enum class Violation {
    None,
    HeapViolation,
    SplitOrderViolation,
    ResidencyViolation,
    SizeViolation,
    BalanceViolation,
    HeightViolation,
    DuplicateKey,
};

const char* to_string(Violation v) noexcept;

struct InvariantReport {
    Violation violation = Violation::None;
    std::string detail;

    bool ok() const noexcept { return violation == Violation::None; }
};

class Aapst;

class Pst {
public:
    static constexpr double kDefaultAlpha = 0.7;

    explicit Pst(HeapVariant variant = HeapVariant::Min, double alpha = kDefaultAlpha);

    Pst(Pst&&) noexcept = default;
    Pst& operator=(Pst&&) noexcept = default;
    Pst(const Pst&) = delete;
    Pst& operator=(const Pst&) = delete;

    // Throws TreeError(DuplicateKey) if pair.x is already stored.
    void insert(KeyPair pair);

    // Removes and returns the pair with key x. Throws TreeError(NotFound).
    KeyPair erase(Key x);

    std::optional<KeyPair> find(Key x) const;
    bool contains(Key x) const { return find(x).has_value(); }

    // Min-variant queries; a max-variant tree throws TreeError(WrongVariant),
    // x0 > x1 throws std::invalid_argument.
    std::optional<KeyPair> min_x_in_rectangle(const Rect& r) const;
    // Ties on y are broken by the smaller x.
    std::optional<KeyPair> min_y_in_x_range(Key x0, Key x1) const;
    // Result is sorted by ascending x.
    std::vector<KeyPair> enumerate_rectangle(const Rect& r) const;

    InvariantReport check_invariants() const;

    // Rebuilds the whole tree. Afterwards every right subtree holds as many
    // nodes as its left sibling, or one fewer.
    void rebuild_all();

    std::size_t size() const noexcept { return root_ ? root_->size : 0; }
    bool empty() const noexcept { return !root_; }
    std::size_t height() const noexcept;
    HeapVariant variant() const noexcept { return variant_; }
    double alpha() const noexcept { return alpha_; }
    std::uint64_t rebuild_count() const noexcept { return rebuilds_; }
    // Key comparisons spent sorting pairs during rebuilds, cumulative. They
    // are also charged to the comparator like any other comparison.
    std::uint64_t rebuild_comparisons() const noexcept { return rebuild_comparisons_; }

    const PstNode* root() const noexcept { return root_.get(); }
    std::vector<KeyPair> pairs() const;

    // Preorder, one node per line: "depth x y split size".
    void dump(std::ostream& os) const;
    std::string dump() const;

    CountingComparator& comparator() const noexcept { return cmp_; }
    const OpMetrics& last_op() const noexcept { return last_; }

    // Test hooks: adopt a hand-built node graph, or reach in to corrupt one.
    static Pst from_root(std::unique_ptr<PstNode> root, HeapVariant variant,
                         double alpha = kDefaultAlpha);
    PstNode* mutable_root() noexcept { return root_.get(); }

private:
    friend class Aapst;

    using Slot = std::unique_ptr<PstNode>;
    using Path = std::vector<Slot*>;
    static constexpr std::size_t kNoRebuild = static_cast<std::size_t>(-1);

    bool beats(Priority challenger, Priority incumbent) const noexcept {
        return variant_ == HeapVariant::Min ? challenger < incumbent : challenger > incumbent;
    }
    bool routes_left(Key x, const PstNode& n) const noexcept {
        return cmp_.compare(x, n.split) <= 0;
    }
    void require_min(const char* op) const;

    // Slots from the root down to the node holding x; empty if x is absent.
    Path locate(Key x);
    // Tournament insert starting at path[start]; path[0..start) are its
    // ancestors and get their sizes bumped. Returns the rebuilt path index.
    std::size_t insert_from(Path path, std::size_t start, KeyPair carry);
    // Vacates the node at path.back(), pulling winning child pairs up until a
    // leaf disappears. Returns the rebuilt path index, or kNoRebuild.
    std::size_t erase_at(Path path);
    std::size_t rebalance(const Path& path);
    void rebuild(Slot& slot);
    void collect_sorted(const PstNode* n, std::vector<KeyPair>& out) const;
    std::unique_ptr<PstNode> build(std::span<const KeyPair> sorted) const;

    void min_x_search(const PstNode* n, const Rect& r, std::optional<KeyPair>& best) const;
    void min_y_search(const PstNode* n, Key x0, Key x1, std::optional<Priority>& best) const;
    void enumerate_search(const PstNode* n, const Rect& r, std::vector<KeyPair>& out) const;

    std::unique_ptr<PstNode> root_;
    HeapVariant variant_;
    double alpha_;
    std::uint64_t rebuilds_ = 0;
    std::uint64_t rebuild_comparisons_ = 0;
    mutable CountingComparator cmp_;
    mutable OpMetrics last_;
};

}  // namespace aapst
