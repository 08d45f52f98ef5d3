#pragma once

// Benchmark and verification harness behind the aapst_bench tool.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aapst/pst.hpp"

namespace aapst {

enum class Structure { Aapst, Splay, Avl };

std::string_view to_string(Structure s) noexcept;
std::optional<Structure> parse_structure(std::string_view name) noexcept;

struct BenchConfig {
    std::vector<std::size_t> n_list;
    std::vector<double> p_list;
    std::size_t queries_per_key = 16;
    std::size_t seeds = 5;
    std::uint64_t base_seed = 1;
    std::vector<Structure> structures{Structure::Aapst, Structure::Splay, Structure::Avl};
    double alpha = Pst::kDefaultAlpha;
    bool siftup = false;
    unsigned threads = 0;  // 0: hardware concurrency

    static BenchConfig defaults();
    // Throws std::invalid_argument on an unusable configuration.
    void validate() const;
};

struct TrialResult {
    Structure structure = Structure::Avl;
    std::size_t n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t m = 0;
    std::uint64_t total_comparisons = 0;
    std::uint64_t max_comparisons_single_query = 0;
    std::uint64_t restructure_count = 0;
    std::uint64_t wall_time_ns = 0;

    double avg() const noexcept {
        return m ? static_cast<double>(total_comparisons) / static_cast<double>(m) : 0.0;
    }
};

// One cell: build the dataset, insert every key, reset the counters, then
// replay m = queries_per_key * n queries. Build comparisons are excluded.
TrialResult run_trial(Structure s, std::size_t n, double p, std::uint64_t seed,
                      std::size_t queries_per_key, double alpha, bool siftup);

// Rows ordered by (structure, n, p, seed) in configuration order, however
// the cells were scheduled.
std::vector<TrialResult> run_bench(const BenchConfig& config);

// Per n: ascending inserts then a query for the smallest key. The row's
// comparison fields all describe that single query.
std::vector<TrialResult> run_adversarial(const BenchConfig& config);

inline constexpr std::string_view kCsvHeader =
    "structure,n,p,seed,m,total_comparisons,avg_comparisons_per_query,"
    "max_comparisons_single_query,restructure_count,wall_time_ns";

// total / m rounded half-up to four decimals, computed in integers.
std::string format_average(std::uint64_t total, std::uint64_t m);
std::string format_p(double p);
void write_csv(std::ostream& os, const std::vector<TrialResult>& rows);

// One file per p value, "p_<p>.dat": n followed by the seed-averaged
// comparisons per query of each structure. Returns the paths written.
std::vector<std::string> write_plot_data(const std::string& dir, const BenchConfig& config,
                                         const std::vector<TrialResult>& rows);

struct VerifyConfig {
    std::size_t point_sets = 1000;
    std::size_t max_points = 256;
    std::size_t rects_per_set = 100;
    std::size_t dictionary_ops = 100000;
    std::size_t check_every = 100;
    std::uint64_t seed = 1;
    double alpha = Pst::kDefaultAlpha;
    // "heap" corrupts a priority mid-run so the invariant sweep must fail.
    std::string inject_fault;
};

struct VerifyCase {
    std::string name;
    bool passed = true;
    std::string detail;
};

std::vector<VerifyCase> run_verify(const VerifyConfig& config);

}  // namespace aapst
