#include "aapst/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "aapst/adaptive_pst.hpp"
#include "aapst/avl_tree.hpp"
#include "aapst/splay_tree.hpp"
#include "aapst/workload.hpp"

namespace aapst {

std::string_view to_string(Structure s) noexcept {
    switch (s) {
        case Structure::Aapst: return "aapst";
        case Structure::Splay: return "splay";
        case Structure::Avl: return "avl";
    }
    return "unknown";
}

std::optional<Structure> parse_structure(std::string_view name) noexcept {
    if (name == "aapst") return Structure::Aapst;
    if (name == "splay") return Structure::Splay;
    if (name == "avl") return Structure::Avl;
    return std::nullopt;
}

BenchConfig BenchConfig::defaults() {
    BenchConfig c;
    for (std::size_t e = 10; e <= 17; ++e) c.n_list.push_back(std::size_t{1} << e);
    c.p_list = {0.0, 0.25, 0.5, 0.75, 1.0};
    return c;
}

void BenchConfig::validate() const {
    if (n_list.empty()) throw std::invalid_argument("--n-list is empty");
    for (std::size_t n : n_list) {
        if (n < 1) throw std::invalid_argument("every n must be >= 1");
    }
    if (p_list.empty()) throw std::invalid_argument("--p-list is empty");
    for (double p : p_list) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("every p must lie in [0, 1]");
    }
    if (seeds < 1) throw std::invalid_argument("--seeds must be >= 1");
    if (structures.empty()) throw std::invalid_argument("--structures is empty");
    if (!(alpha > 0.5 && alpha < 1.0)) throw std::invalid_argument("--alpha must lie in (0.5, 1)");
}

namespace {

struct AapstAdapter {
    Aapst tree;
    explicit AapstAdapter(AapstOptions o) : tree(o) {}
    void insert(Key k) { tree.insert_key(k); }
    bool query(Key k) { return tree.query(k); }
    std::uint64_t cost() const { return tree.last_op().comparisons_this_op; }
    CountingComparator& cmp() { return tree.comparator(); }
    std::uint64_t restructures() const { return tree.restructure_count(); }
};

struct SplayAdapter {
    SplayTree tree;
    void insert(Key k) { tree.insert(k); }
    bool query(Key k) { return tree.search(k); }
    std::uint64_t cost() const { return tree.last_op().comparisons_this_op; }
    CountingComparator& cmp() { return tree.comparator(); }
    std::uint64_t restructures() const { return 0; }
};

struct AvlAdapter {
    AvlTree tree;
    void insert(Key k) { tree.insert(k); }
    bool query(Key k) { return tree.search(k); }
    std::uint64_t cost() const { return tree.last_op().comparisons_this_op; }
    CountingComparator& cmp() { return tree.comparator(); }
    std::uint64_t restructures() const { return 0; }
};

template <typename Adapter>
void replay(Adapter& a, QueryStream& stream, TrialResult& row) {
    for (Key k : stream.dataset().insert_order) a.insert(k);
    a.cmp().snapshot_and_reset();
    const std::uint64_t restructures_before = a.restructures();

    const auto t0 = std::chrono::steady_clock::now();
    for (std::uint64_t i = 0; i < row.m; ++i) {
        const Key k = stream.next();
        if (!a.query(k)) throw std::logic_error("workload key missing from structure");
        const std::uint64_t c = a.cost();
        row.total_comparisons += c;
        if (c > row.max_comparisons_single_query) row.max_comparisons_single_query = c;
    }
    const auto t1 = std::chrono::steady_clock::now();
    row.wall_time_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    row.restructure_count = a.restructures() - restructures_before;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

TrialResult run_trial(Structure s, std::size_t n, double p, std::uint64_t seed,
                      std::size_t queries_per_key, double alpha, bool siftup) {
    TrialResult row;
    row.structure = s;
    row.n = n;
    row.p = p;
    row.seed = seed;
    row.m = static_cast<std::uint64_t>(queries_per_key) * n;

    QueryStream stream(WorkloadSpec{n, p, static_cast<std::size_t>(row.m), seed});
    switch (s) {
        case Structure::Aapst: {
            AapstAdapter a(AapstOptions{alpha, siftup});
            replay(a, stream, row);
            break;
        }
        case Structure::Splay: {
            SplayAdapter a;
            replay(a, stream, row);
            break;
        }
        case Structure::Avl: {
            AvlAdapter a;
            replay(a, stream, row);
            break;
        }
    }
    return row;
}

std::vector<TrialResult> run_bench(const BenchConfig& config) {
    config.validate();
    struct Cell {
        Structure s;
        std::size_t n;
        double p;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (Structure s : config.structures)
        for (std::size_t n : config.n_list)
            for (double p : config.p_list)
                for (std::size_t i = 0; i < config.seeds; ++i)
                    cells.push_back({s, n, p, config.base_seed + i});

    std::vector<TrialResult> rows(cells.size());
    parallel_for(cells.size(), config.threads, [&](std::size_t i) {
        const Cell& c = cells[i];
        rows[i] = run_trial(c.s, c.n, c.p, c.seed, config.queries_per_key, config.alpha,
                            config.siftup);
    });
    return rows;
}

std::vector<TrialResult> run_adversarial(const BenchConfig& config) {
    config.validate();
    std::vector<TrialResult> rows;
    for (Structure s : config.structures) {
        for (std::size_t n : config.n_list) {
            TrialResult row;
            row.structure = s;
            row.n = n;
            row.m = 1;
            const auto ops = adversarial_sequence(n);

            auto run = [&](auto& a) {
                for (const Operation& op : ops) {
                    if (op.kind == OpKind::Insert) {
                        a.insert(op.key);
                        continue;
                    }
                    const std::uint64_t restructures_before = a.restructures();
                    a.cmp().snapshot_and_reset();
                    const auto t0 = std::chrono::steady_clock::now();
                    if (!a.query(op.key)) throw std::logic_error("adversarial key missing");
                    const auto t1 = std::chrono::steady_clock::now();
                    row.total_comparisons = a.cost();
                    row.max_comparisons_single_query = a.cost();
                    row.restructure_count = a.restructures() - restructures_before;
                    row.wall_time_ns = static_cast<std::uint64_t>(
                        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
                }
            };
            switch (s) {
                case Structure::Aapst: {
                    AapstAdapter a(AapstOptions{config.alpha, config.siftup});
                    run(a);
                    break;
                }
                case Structure::Splay: {
                    SplayAdapter a;
                    run(a);
                    break;
                }
                case Structure::Avl: {
                    AvlAdapter a;
                    run(a);
                    break;
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::string format_average(std::uint64_t total, std::uint64_t m) {
    if (m == 0) return "0.0000";
    const unsigned __int128 scaled =
        (static_cast<unsigned __int128>(total) * 20000 + m) / (static_cast<unsigned __int128>(m) * 2);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%llu.%04llu",
                  static_cast<unsigned long long>(scaled / 10000),
                  static_cast<unsigned long long>(scaled % 10000));
    return buf;
}

std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<TrialResult>& rows) {
    os << kCsvHeader << '\n';
    for (const TrialResult& r : rows) {
        os << to_string(r.structure) << ',' << r.n << ',' << format_p(r.p) << ',' << r.seed << ','
           << r.m << ',' << r.total_comparisons << ',' << format_average(r.total_comparisons, r.m)
           << ',' << r.max_comparisons_single_query << ',' << r.restructure_count << ','
           << r.wall_time_ns << '\n';
    }
}

std::vector<std::string> write_plot_data(const std::string& dir, const BenchConfig& config,
                                         const std::vector<TrialResult>& rows) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> written;
    for (double p : config.p_list) {
        const std::string path =
            (std::filesystem::path(dir) / ("p_" + format_p(p) + ".dat")).string();
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << "# p=" << format_p(p) << "\n# n";
        for (Structure s : config.structures) out << ' ' << to_string(s);
        out << '\n';
        for (std::size_t n : config.n_list) {
            out << n;
            for (Structure s : config.structures) {
                double sum = 0.0;
                std::size_t count = 0;
                for (const TrialResult& r : rows) {
                    if (r.structure == s && r.n == n && r.p == p) {
                        sum += r.avg();
                        ++count;
                    }
                }
                char buf[32];
                std::snprintf(buf, sizeof buf, " %.4f", count ? sum / static_cast<double>(count) : 0.0);
                out << buf;
            }
            out << '\n';
        }
        written.push_back(path);
    }
    return written;
}

}  // namespace aapst
