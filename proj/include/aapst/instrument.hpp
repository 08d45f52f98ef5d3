#pragma once

#include <compare>
#include <cstdint>

#include "aapst/types.hpp"

namespace aapst {

// Three-way key comparison that charges one unit per call. Every ordering
// decision on keys in the trees goes through here; priority (y) comparisons
// do not.
class CountingComparator {
public:
    std::strong_ordering compare(Key a, Key b) noexcept {
        if (enabled_) ++count_;
        return a <=> b;
    }

    std::uint64_t count() const noexcept { return count_; }

    // Returns the current count and zeroes the counter.
    std::uint64_t snapshot_and_reset() noexcept {
        const std::uint64_t c = count_;
        count_ = 0;
        return c;
    }

    // Counting is observation only; turning it off must not change any
    // structural outcome.
    void set_enabled(bool on) noexcept { enabled_ = on; }
    bool enabled() const noexcept { return enabled_; }

private:
    std::uint64_t count_ = 0;
    bool enabled_ = true;
};

// Per-operation figures, reset at the start of every public operation.
struct OpMetrics {
    std::uint64_t comparisons_this_op = 0;
    std::uint64_t nodes_visited = 0;
    bool restructured = false;
};

// Scoped helper: zeroes `m` on entry and on exit stores the comparator delta.
class OpScope {
public:
    OpScope(const CountingComparator& cmp, OpMetrics& m) noexcept
        : cmp_(cmp), m_(m), start_(cmp.count()) {
        m_ = OpMetrics{};
    }
    ~OpScope() { m_.comparisons_this_op = cmp_.count() - start_; }

    OpScope(const OpScope&) = delete;
    OpScope& operator=(const OpScope&) = delete;

private:
    const CountingComparator& cmp_;
    OpMetrics& m_;
    std::uint64_t start_;
};

}  // namespace aapst
