#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "aapst/adaptive_pst.hpp"
#include "aapst/avl_tree.hpp"
#include "aapst/bench.hpp"
#include "aapst/splay_tree.hpp"
#include "aapst/workload.hpp"

namespace aapst {

namespace {

// Linear-scan references for the three geometric queries.
std::optional<KeyPair> scan_min_x(const std::vector<KeyPair>& pts, const Rect& r) {
    std::optional<KeyPair> best;
    for (const KeyPair& p : pts)
        if (p.x >= r.x0 && p.x <= r.x1 && p.y <= r.y1 && (!best || p.x < best->x)) best = p;
    return best;
}

std::optional<KeyPair> scan_min_y(const std::vector<KeyPair>& pts, Key x0, Key x1) {
    std::optional<KeyPair> best;
    for (const KeyPair& p : pts) {
        if (p.x < x0 || p.x > x1) continue;
        if (!best || p.y < best->y || (p.y == best->y && p.x < best->x)) best = p;
    }
    return best;
}

std::vector<KeyPair> scan_enumerate(const std::vector<KeyPair>& pts, const Rect& r) {
    std::vector<KeyPair> out;
    for (const KeyPair& p : pts)
        if (p.x >= r.x0 && p.x <= r.x1 && p.y <= r.y1) out.push_back(p);
    std::sort(out.begin(), out.end(), [](const KeyPair& a, const KeyPair& b) { return a.x < b.x; });
    return out;
}

std::string describe(const std::optional<KeyPair>& p) {
    std::ostringstream os;
    if (p) os << *p; else os << "none";
    return os.str();
}

VerifyCase geometry_suite(const VerifyConfig& cfg) {
    VerifyCase vc{"pst_geometry_vs_linear_scan", true, {}};
    Xoshiro256StarStar rng(cfg.seed, 100);
    const auto universe = static_cast<Key>(4 * cfg.max_points);
    std::size_t mismatches = 0;
    std::size_t visit_breaches = 0;

    for (std::size_t set = 0; set < cfg.point_sets; ++set) {
        const std::size_t count = 1 + static_cast<std::size_t>(rng.below(cfg.max_points));
        std::vector<Key> xs(static_cast<std::size_t>(universe));
        std::iota(xs.begin(), xs.end(), Key{0});
        seeded_shuffle(xs, rng);
        std::vector<KeyPair> pts;
        Pst tree(HeapVariant::Min, cfg.alpha);
        for (std::size_t i = 0; i < count; ++i) {
            const KeyPair p{xs[i], static_cast<Priority>(rng.below(64))};
            pts.push_back(p);
            tree.insert(p);
        }
        if (auto rep = tree.check_invariants(); !rep.ok()) {
            vc.passed = false;
            vc.detail = std::string(to_string(rep.violation)) + " " + rep.detail;
            return vc;
        }
        const double log_n = std::log2(static_cast<double>(count) + 1.0);

        for (std::size_t q = 0; q < cfg.rects_per_set; ++q) {
            Key a = static_cast<Key>(rng.below(static_cast<std::uint64_t>(universe) + 10)) - 5;
            Key b = static_cast<Key>(rng.below(static_cast<std::uint64_t>(universe) + 10)) - 5;
            if (a > b) std::swap(a, b);
            const Rect r{a, b, static_cast<Priority>(rng.below(72)) - 2};

            const auto mx = tree.min_x_in_rectangle(r);
            const auto my = tree.min_y_in_x_range(r.x0, r.x1);
            const auto en = tree.enumerate_rectangle(r);
            const double visits = static_cast<double>(tree.last_op().nodes_visited);
            const bool ok = mx == scan_min_x(pts, r) && my == scan_min_y(pts, r.x0, r.x1) &&
                            en == scan_enumerate(pts, r);
            if (!ok) {
                if (mismatches == 0) {
                    std::ostringstream os;
                    os << "set " << set << " rect [" << r.x0 << ',' << r.x1 << "] y1=" << r.y1
                       << ": min_x " << describe(mx) << " min_y " << describe(my);
                    vc.detail = os.str();
                }
                ++mismatches;
            }
            if (visits > 4.0 * log_n + 3.0 * static_cast<double>(en.size())) ++visit_breaches;
        }
    }
    if (mismatches || visit_breaches) {
        vc.passed = false;
        vc.detail = std::to_string(mismatches) + " mismatches, " + std::to_string(visit_breaches) +
                    " enumerate visit-bound breaches; " + vc.detail;
    } else {
        vc.detail = std::to_string(cfg.point_sets * cfg.rects_per_set) + " rectangles matched";
    }
    return vc;
}

// Corrupts the first node with a child so the child outranks it.
bool inject_heap_fault(Pst& tree) {
    PstNode* n = tree.mutable_root();
    if (!n || (!n->left && !n->right)) return false;
    PstNode* child = n->left ? n->left.get() : n->right.get();
    child->pair.y = tree.variant() == HeapVariant::Min ? n->pair.y - 1 : n->pair.y + 1;
    return true;
}

VerifyCase pst_update_suite(const VerifyConfig& cfg, HeapVariant variant) {
    VerifyCase vc{variant == HeapVariant::Min ? "min_pst_random_updates" : "max_pst_random_updates", true, {}};
    Xoshiro256StarStar rng(cfg.seed, variant == HeapVariant::Min ? 200 : 201);
    Pst tree(variant, cfg.alpha);
    std::map<Key, Priority> oracle;
    const std::uint64_t universe = 2048;
    const bool inject = cfg.inject_fault == "heap";

    for (std::size_t op = 1; op <= cfg.dictionary_ops; ++op) {
        const Key x = static_cast<Key>(rng.below(universe));
        if (rng.below(3) < 2) {
            const auto y = static_cast<Priority>(rng.below(1000));
            const bool fresh = !oracle.contains(x);
            try {
                tree.insert({x, y});
                if (!fresh) return {vc.name, false, "duplicate insert accepted"};
                oracle.emplace(x, y);
            } catch (const TreeError& e) {
                if (fresh || e.code() != TreeErrc::DuplicateKey)
                    return {vc.name, false, e.what()};
            }
        } else {
            const auto it = oracle.find(x);
            try {
                const KeyPair removed = tree.erase(x);
                if (it == oracle.end() || removed.y != it->second)
                    return {vc.name, false, "erase returned wrong pair"};
                oracle.erase(it);
            } catch (const TreeError& e) {
                if (it != oracle.end() || e.code() != TreeErrc::NotFound)
                    return {vc.name, false, e.what()};
            }
        }
        if (inject && op == cfg.dictionary_ops / 2) inject_heap_fault(tree);
        if (op % cfg.check_every == 0) {
            if (auto rep = tree.check_invariants(); !rep.ok()) {
                return {vc.name, false,
                        std::string(to_string(rep.violation)) + " after op " +
                            std::to_string(op) + ": " + rep.detail};
            }
            auto pairs = tree.pairs();
            std::sort(pairs.begin(), pairs.end(),
                      [](const KeyPair& a, const KeyPair& b) { return a.x < b.x; });
            std::vector<KeyPair> expect;
            for (auto [k, y] : oracle) expect.push_back({k, y});
            if (pairs != expect) return {vc.name, false, "pair multiset diverged from oracle"};
        }
    }
    vc.detail = std::to_string(cfg.dictionary_ops) + " ops, final size " + std::to_string(tree.size());
    return vc;
}

VerifyCase aapst_suite(const VerifyConfig& cfg) {
    VerifyCase vc{"aapst_vs_sorted_set", true, {}};
    Xoshiro256StarStar rng(cfg.seed, 300);
    Aapst tree(AapstOptions{cfg.alpha, false});
    std::map<Key, Priority> ledger;
    const std::uint64_t universe = 2048;

    for (std::size_t op = 1; op <= cfg.dictionary_ops; ++op) {
        const Key k = static_cast<Key>(rng.below(universe));
        const auto kind = rng.below(10);
        const auto it = ledger.find(k);
        if (kind < 3) {
            try {
                tree.insert_key(k);
                if (it != ledger.end()) return {vc.name, false, "duplicate insert accepted"};
                ledger.emplace(k, 1);
            } catch (const TreeError&) {
                if (it == ledger.end()) return {vc.name, false, "fresh insert rejected"};
            }
        } else if (kind < 5) {
            try {
                tree.delete_key(k);
                if (it == ledger.end()) return {vc.name, false, "absent delete accepted"};
                ledger.erase(it);
            } catch (const TreeError&) {
                if (it != ledger.end()) return {vc.name, false, "present delete rejected"};
            }
        } else if (kind < 9) {
            if (tree.query(k) != (it != ledger.end())) return {vc.name, false, "query disagrees"};
            if (it != ledger.end()) ++it->second;
        } else {
            if (tree.contains(k) != (it != ledger.end()))
                return {vc.name, false, "contains disagrees"};
        }
        if (op % cfg.check_every == 0) {
            if (auto rep = tree.check_invariants(); !rep.ok())
                return {vc.name, false, std::string(to_string(rep.violation)) + ": " + rep.detail};
            std::uint64_t sum = 0;
            for (const KeyPair& p : tree.tree().pairs()) {
                sum += static_cast<std::uint64_t>(p.y);
                const auto e = ledger.find(p.x);
                if (e == ledger.end() || e->second != p.y)
                    return {vc.name, false, "count ledger mismatch at key " + std::to_string(p.x)};
            }
            if (sum != tree.total_accesses() || tree.size() != ledger.size())
                return {vc.name, false, "count conservation broken"};
        }
    }
    vc.detail = std::to_string(cfg.dictionary_ops) + " ops, final size " + std::to_string(tree.size());
    return vc;
}

template <typename Tree>
VerifyCase baseline_suite(const VerifyConfig& cfg, const std::string& name, std::uint64_t stream) {
    VerifyCase vc{name, true, {}};
    Xoshiro256StarStar rng(cfg.seed, stream);
    Tree tree;
    std::set<Key> oracle;
    const std::uint64_t universe = 2048;
    for (std::size_t op = 1; op <= cfg.dictionary_ops; ++op) {
        const Key k = static_cast<Key>(rng.below(universe));
        const auto kind = rng.below(10);
        const bool present = oracle.contains(k);
        if (kind < 4) {
            try {
                tree.insert(k);
                if (present) return {name, false, "duplicate insert accepted"};
                oracle.insert(k);
            } catch (const TreeError&) {
                if (!present) return {name, false, "fresh insert rejected"};
            }
        } else if (kind < 6) {
            try {
                tree.erase(k);
                if (!present) return {name, false, "absent erase accepted"};
                oracle.erase(k);
            } catch (const TreeError&) {
                if (present) return {name, false, "present erase rejected"};
            }
        } else if (tree.search(k) != present) {
            return {name, false, "search disagrees at key " + std::to_string(k)};
        }
        if (op % cfg.check_every == 0) {
            if (!tree.check_invariants()) return {name, false, "invariant check failed"};
            const auto keys = tree.keys();
            if (!std::equal(keys.begin(), keys.end(), oracle.begin(), oracle.end()))
                return {name, false, "key set diverged from oracle"};
        }
    }
    vc.detail = std::to_string(cfg.dictionary_ops) + " ops, final size " + std::to_string(tree.size());
    return vc;
}

}  // namespace

std::vector<VerifyCase> run_verify(const VerifyConfig& cfg) {
    std::vector<VerifyCase> out;
    out.push_back(geometry_suite(cfg));
    out.push_back(pst_update_suite(cfg, HeapVariant::Min));
    out.push_back(pst_update_suite(cfg, HeapVariant::Max));
    out.push_back(aapst_suite(cfg));
    out.push_back(baseline_suite<SplayTree>(cfg, "splay_vs_sorted_set", 400));
    out.push_back(baseline_suite<AvlTree>(cfg, "avl_vs_sorted_set", 401));
    return out;
}

}  // namespace aapst
