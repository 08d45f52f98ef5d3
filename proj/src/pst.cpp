#include "aapst/pst.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace aapst {

const char* to_string(TreeErrc code) noexcept {
    switch (code) {
        case TreeErrc::DuplicateKey: return "DuplicateKey";
        case TreeErrc::NotFound: return "NotFound";
        case TreeErrc::WrongVariant: return "WrongVariant";
        case TreeErrc::CountOverflow: return "CountOverflow";
    }
    return "Unknown";
}

const char* to_string(Violation v) noexcept {
    switch (v) {
        case Violation::None: return "OK";
        case Violation::HeapViolation: return "HeapViolation";
        case Violation::SplitOrderViolation: return "SplitOrderViolation";
        case Violation::ResidencyViolation: return "ResidencyViolation";
        case Violation::SizeViolation: return "SizeViolation";
        case Violation::BalanceViolation: return "BalanceViolation";
        case Violation::HeightViolation: return "HeightViolation";
        case Violation::DuplicateKey: return "DuplicateKey";
    }
    return "Unknown";
}

namespace {

std::size_t size_of(const std::unique_ptr<PstNode>& n) noexcept { return n ? n->size : 0; }

std::size_t height_of(const PstNode* n) noexcept {
    if (!n) return 0;
    return 1 + std::max(height_of(n->left.get()), height_of(n->right.get()));
}

void validate_range(Key x0, Key x1) {
    if (x0 > x1) throw std::invalid_argument("query range has x0 > x1");
}

}  // namespace

Pst::Pst(HeapVariant variant, double alpha) : variant_(variant), alpha_(alpha) {
    if (!(alpha > 0.5 && alpha < 1.0)) {
        throw std::invalid_argument("rebuild threshold alpha must lie in (0.5, 1)");
    }
}

Pst Pst::from_root(std::unique_ptr<PstNode> root, HeapVariant variant, double alpha) {
    Pst t(variant, alpha);
    t.root_ = std::move(root);
    return t;
}

void Pst::require_min(const char* op) const {
    if (variant_ != HeapVariant::Min) {
        throw TreeError(TreeErrc::WrongVariant, std::string(op) + " requires a min-PST");
    }
}

std::size_t Pst::height() const noexcept { return height_of(root_.get()); }

// --- updates ---------------------------------------------------------------

Pst::Path Pst::locate(Key x) {
    Path path;
    Slot* slot = &root_;
    while (*slot) {
        PstNode& n = **slot;
        ++last_.nodes_visited;
        path.push_back(slot);
        if (cmp_.compare(x, n.pair.x) == 0) return path;
        slot = routes_left(x, n) ? &n.left : &n.right;
    }
    return {};
}

std::optional<KeyPair> Pst::find(Key x) const {
    OpScope scope(cmp_, last_);
    const PstNode* n = root_.get();
    while (n) {
        ++last_.nodes_visited;
        if (cmp_.compare(x, n->pair.x) == 0) return n->pair;
        n = routes_left(x, *n) ? n->left.get() : n->right.get();
    }
    return std::nullopt;
}

void Pst::insert(KeyPair pair) {
    OpScope scope(cmp_, last_);
    if (!locate(pair.x).empty()) {
        throw TreeError(TreeErrc::DuplicateKey, "key " + std::to_string(pair.x) + " already stored");
    }
    insert_from(Path{&root_}, 0, pair);
}

std::size_t Pst::insert_from(Path path, std::size_t start, KeyPair carry) {
    path.resize(start + 1);
    Slot* slot = path.back();
    path.pop_back();
    for (Slot* s : path) ++(*s)->size;

    while (*slot) {
        PstNode& n = **slot;
        ++n.size;
        ++last_.nodes_visited;
        path.push_back(slot);
        if (beats(carry.y, n.pair.y)) std::swap(carry, n.pair);
        slot = routes_left(carry.x, n) ? &n.left : &n.right;
    }
    *slot = std::make_unique<PstNode>();
    (*slot)->pair = carry;
    (*slot)->split = carry.x;
    path.push_back(slot);
    return rebalance(path);
}

KeyPair Pst::erase(Key x) {
    OpScope scope(cmp_, last_);
    Path path = locate(x);
    if (path.empty()) {
        throw TreeError(TreeErrc::NotFound, "key " + std::to_string(x) + " not stored");
    }
    const KeyPair removed = (*path.back())->pair;
    erase_at(std::move(path));
    return removed;
}

std::size_t Pst::erase_at(Path path) {
    for (;;) {
        PstNode& n = **path.back();
        Slot* next = nullptr;
        if (n.left && n.right) {
            next = beats(n.right->pair.y, n.left->pair.y) ? &n.right : &n.left;
        } else if (n.left) {
            next = &n.left;
        } else if (n.right) {
            next = &n.right;
        }
        if (!next) {
            path.back()->reset();
            path.pop_back();
            break;
        }
        n.pair = (*next)->pair;
        path.push_back(next);
    }
    for (Slot* s : path) --(*s)->size;
    return rebalance(path);
}

std::size_t Pst::rebalance(const Path& path) {
    for (std::size_t i = 0; i < path.size(); ++i) {
        Slot& s = *path[i];
        if (!s) continue;
        const double limit = alpha_ * static_cast<double>(s->size);
        if (static_cast<double>(size_of(s->left)) > limit ||
            static_cast<double>(size_of(s->right)) > limit) {
            rebuild(s);
            return i;
        }
    }
    return kNoRebuild;
}

void Pst::rebuild_all() {
    if (root_) rebuild(root_);
}

void Pst::rebuild(Slot& slot) {
    std::vector<KeyPair> sorted;
    sorted.reserve(slot->size);
    const std::uint64_t before = cmp_.count();
    collect_sorted(slot.get(), sorted);
    rebuild_comparisons_ += cmp_.count() - before;
    slot = build(sorted);
    ++rebuilds_;
}

// Produces the subtree's pairs in ascending x. Child subtrees come back
// already sorted and separated by the split key, so only the node's own pair
// needs a binary-search placement.
void Pst::collect_sorted(const PstNode* n, std::vector<KeyPair>& out) const {
    if (!n) return;
    const auto begin = static_cast<std::ptrdiff_t>(out.size());
    collect_sorted(n->left.get(), out);
    const auto mid = static_cast<std::ptrdiff_t>(out.size());
    collect_sorted(n->right.get(), out);

    const auto less = [this](const KeyPair& p, Key x) { return cmp_.compare(p.x, x) < 0; };
    const Key x = n->pair.x;
    const auto pos = routes_left(x, *n)
                         ? std::lower_bound(out.begin() + begin, out.begin() + mid, x, less)
                         : std::lower_bound(out.begin() + mid, out.end(), x, less);
    out.insert(pos, n->pair);
}

std::unique_ptr<PstNode> Pst::build(std::span<const KeyPair> sorted) const {
    if (sorted.empty()) return nullptr;

    // Heap winner; ties keep the earlier, i.e. smaller-x, pair.
    std::size_t w = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (beats(sorted[i].y, sorted[w].y)) w = i;
    }
    std::vector<KeyPair> rest;
    rest.reserve(sorted.size() - 1);
    rest.insert(rest.end(), sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(w));
    rest.insert(rest.end(), sorted.begin() + static_cast<std::ptrdiff_t>(w) + 1, sorted.end());

    auto node = std::make_unique<PstNode>();
    node->pair = sorted[w];
    node->size = sorted.size();
    if (rest.empty()) {
        node->split = node->pair.x;
        return node;
    }
    const std::size_t left_count = (rest.size() + 1) / 2;
    node->split = rest[left_count - 1].x;
    const std::span<const KeyPair> all(rest);
    node->left = build(all.first(left_count));
    node->right = build(all.subspan(left_count));
    return node;
}

// --- geometric queries -----------------------------------------------------

std::optional<KeyPair> Pst::min_x_in_rectangle(const Rect& r) const {
    require_min("min_x_in_rectangle");
    validate_range(r.x0, r.x1);
    OpScope scope(cmp_, last_);
    std::optional<KeyPair> best;
    min_x_search(root_.get(), r, best);
    return best;
}

// Left-first descent. Once a candidate at or below a node's split is known,
// nothing in the right subtree can beat it.
void Pst::min_x_search(const PstNode* n, const Rect& r, std::optional<KeyPair>& best) const {
    if (!n) return;
    ++last_.nodes_visited;
    if (n->pair.y > r.y1) return;
    const Key x = n->pair.x;
    if (cmp_.compare(x, r.x0) >= 0 && cmp_.compare(x, r.x1) <= 0 &&
        (!best || cmp_.compare(x, best->x) < 0)) {
        best = n->pair;
    }
    if (cmp_.compare(r.x0, n->split) <= 0) min_x_search(n->left.get(), r, best);
    if (best && cmp_.compare(best->x, n->split) <= 0) return;
    if (cmp_.compare(r.x1, n->split) > 0) min_x_search(n->right.get(), r, best);
}

std::optional<KeyPair> Pst::min_y_in_x_range(Key x0, Key x1) const {
    require_min("min_y_in_x_range");
    validate_range(x0, x1);
    OpScope scope(cmp_, last_);
    std::optional<Priority> best_y;
    min_y_search(root_.get(), x0, x1, best_y);
    if (!best_y) return std::nullopt;
    // Among the pairs at the minimal y, take the smallest x.
    std::optional<KeyPair> best;
    min_x_search(root_.get(), Rect{x0, x1, *best_y}, best);
    return best;
}

void Pst::min_y_search(const PstNode* n, Key x0, Key x1, std::optional<Priority>& best) const {
    if (!n) return;
    ++last_.nodes_visited;
    // Descendants are no better than n, so n bounds the whole subtree.
    if (best && !beats(n->pair.y, *best)) return;
    const Key x = n->pair.x;
    if (cmp_.compare(x, x0) >= 0 && cmp_.compare(x, x1) <= 0) best = n->pair.y;
    if (cmp_.compare(x0, n->split) <= 0) min_y_search(n->left.get(), x0, x1, best);
    if (cmp_.compare(x1, n->split) > 0) min_y_search(n->right.get(), x0, x1, best);
}

std::vector<KeyPair> Pst::enumerate_rectangle(const Rect& r) const {
    require_min("enumerate_rectangle");
    validate_range(r.x0, r.x1);
    OpScope scope(cmp_, last_);
    std::vector<KeyPair> out;
    enumerate_search(root_.get(), r, out);
    return out;
}

void Pst::enumerate_search(const PstNode* n, const Rect& r, std::vector<KeyPair>& out) const {
    if (!n) return;
    ++last_.nodes_visited;
    if (n->pair.y > r.y1) return;
    const auto begin = static_cast<std::ptrdiff_t>(out.size());
    if (cmp_.compare(r.x0, n->split) <= 0) enumerate_search(n->left.get(), r, out);
    const auto mid = static_cast<std::ptrdiff_t>(out.size());
    if (cmp_.compare(r.x1, n->split) > 0) enumerate_search(n->right.get(), r, out);

    const Key x = n->pair.x;
    if (cmp_.compare(x, r.x0) < 0 || cmp_.compare(x, r.x1) > 0) return;
    const auto less = [this](const KeyPair& p, Key k) { return cmp_.compare(p.x, k) < 0; };
    const auto pos = routes_left(x, *n)
                         ? std::lower_bound(out.begin() + begin, out.begin() + mid, x, less)
                         : std::lower_bound(out.begin() + mid, out.end(), x, less);
    out.insert(pos, n->pair);
}

// --- inspection ------------------------------------------------------------

namespace {

// Walks the tree with the half-open x-interval (lo, hi] implied by ancestor
// splits. Uses raw comparisons: it is an oracle, not instrumented code.
class InvariantChecker {
public:
    InvariantChecker(HeapVariant variant, double alpha) : variant_(variant), alpha_(alpha) {}

    std::size_t walk(const PstNode* n, const PstNode* parent, std::optional<Key> lo,
                     std::optional<Key> hi) {
        if (!n || !report_.ok()) return 0;
        const KeyPair& p = n->pair;
        if (parent) {
            const bool inverted = variant_ == HeapVariant::Min ? p.y < parent->pair.y
                                                               : p.y > parent->pair.y;
            if (inverted) {
                fail(Violation::HeapViolation, n, "child priority beats its parent");
                return 0;
            }
        }
        if (!within(n->split, lo, hi)) {
            fail(Violation::SplitOrderViolation, n, "split outside ancestor interval");
            return 0;
        }
        if (!within(p.x, lo, hi)) {
            fail(Violation::ResidencyViolation, n, "pair outside ancestor interval");
            return 0;
        }
        if (!seen_.insert(p.x).second) {
            fail(Violation::DuplicateKey, n, "key stored twice");
            return 0;
        }
        const std::size_t l = walk(n->left.get(), n, lo, n->split);
        const std::size_t r = walk(n->right.get(), n, n->split, hi);
        if (!report_.ok()) return 0;
        const std::size_t total = 1 + l + r;
        if (n->size != total) {
            fail(Violation::SizeViolation, n, "size field " + std::to_string(n->size) +
                                                  " but subtree holds " + std::to_string(total));
            return 0;
        }
        const double limit = alpha_ * static_cast<double>(total);
        if (static_cast<double>(l) > limit || static_cast<double>(r) > limit) {
            fail(Violation::BalanceViolation, n, "child heavier than alpha * size");
            return 0;
        }
        return total;
    }

    InvariantReport& report() { return report_; }

private:
    static bool within(Key x, std::optional<Key> lo, std::optional<Key> hi) {
        return (!lo || x > *lo) && (!hi || x <= *hi);
    }

    void fail(Violation v, const PstNode* n, const std::string& why) {
        std::ostringstream os;
        os << "node " << n->pair << " split " << n->split << ": " << why;
        report_ = InvariantReport{v, os.str()};
    }

    HeapVariant variant_;
    double alpha_;
    std::unordered_set<Key> seen_;
    InvariantReport report_;
};

}  // namespace

InvariantReport Pst::check_invariants() const {
    InvariantChecker checker(variant_, alpha_);
    const std::size_t n = checker.walk(root_.get(), nullptr, std::nullopt, std::nullopt);
    if (!checker.report().ok() || n == 0) return checker.report();

    const double bound = std::log(static_cast<double>(n)) / std::log(1.0 / alpha_) + 2.0;
    const std::size_t h = height();
    if (static_cast<double>(h) > bound + 1e-9) {
        return {Violation::HeightViolation,
                "height " + std::to_string(h) + " exceeds " + std::to_string(bound)};
    }
    return {};
}

std::vector<KeyPair> Pst::pairs() const {
    std::vector<KeyPair> out;
    out.reserve(size());
    std::vector<const PstNode*> stack;
    if (root_) stack.push_back(root_.get());
    while (!stack.empty()) {
        const PstNode* n = stack.back();
        stack.pop_back();
        out.push_back(n->pair);
        if (n->right) stack.push_back(n->right.get());
        if (n->left) stack.push_back(n->left.get());
    }
    return out;
}

void Pst::dump(std::ostream& os) const {
    struct Frame {
        const PstNode* n;
        std::size_t depth;
    };
    std::vector<Frame> stack;
    if (root_) stack.push_back({root_.get(), 0});
    while (!stack.empty()) {
        const auto [n, d] = stack.back();
        stack.pop_back();
        os << d << ' ' << n->pair.x << ' ' << n->pair.y << ' ' << n->split << ' ' << n->size
           << '\n';
        if (n->right) stack.push_back({n->right.get(), d + 1});
        if (n->left) stack.push_back({n->left.get(), d + 1});
    }
}

std::string Pst::dump() const {
    std::ostringstream os;
    dump(os);
    return os.str();
}

}  // namespace aapst
