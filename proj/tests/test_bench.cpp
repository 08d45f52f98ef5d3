#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "aapst/bench.hpp"

using namespace aapst;

namespace {

std::string csv_without_wall_time(const std::vector<TrialResult>& rows) {
    std::vector<TrialResult> copy = rows;
    for (TrialResult& r : copy) r.wall_time_ns = 0;
    std::ostringstream os;
    write_csv(os, copy);
    return os.str();
}

std::map<std::pair<Structure, double>, double> mean_avg(const std::vector<TrialResult>& rows) {
    std::map<std::pair<Structure, double>, std::pair<double, int>> acc;
    for (const TrialResult& r : rows) {
        auto& [sum, count] = acc[{r.structure, r.p}];
        sum += r.avg();
        ++count;
    }
    std::map<std::pair<Structure, double>, double> out;
    for (auto& [key, v] : acc) out[key] = v.first / v.second;
    return out;
}

}  // namespace

TEST_CASE("average formatting is exact to four decimals, rounding half up") {
    CHECK(format_average(1, 3) == "0.3333");
    CHECK(format_average(2, 3) == "0.6667");
    CHECK(format_average(5, 8) == "0.6250");
    CHECK(format_average(1, 20000) == "0.0001");
    CHECK(format_average(1, 20001) == "0.0000");
    CHECK(format_average(35450344, 1048576) == "33.8081");
    CHECK(format_average(7, 0) == "0.0000");
    CHECK(format_p(0.0) == "0");
    CHECK(format_p(0.25) == "0.25");
    CHECK(format_p(1.0) == "1");
}

TEST_CASE("structure names round-trip") {
    for (Structure s : {Structure::Aapst, Structure::Splay, Structure::Avl}) {
        CHECK(parse_structure(to_string(s)) == s);
    }
    CHECK_FALSE(parse_structure("treap").has_value());
}

TEST_CASE("one cell yields one row with m = queries_per_key * n") {
    BenchConfig cfg;
    cfg.n_list = {16};
    cfg.p_list = {0.0};
    cfg.queries_per_key = 1;
    cfg.seeds = 1;
    cfg.structures = {Structure::Avl};
    const auto rows = run_bench(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].m == 16);
    CHECK(rows[0].n == 16);
    CHECK(rows[0].total_comparisons >= 16);

    std::ostringstream os;
    write_csv(os, rows);
    std::istringstream in(os.str());
    std::string header, line;
    std::getline(in, header);
    std::getline(in, line);
    CHECK(header == kCsvHeader);
    CHECK(line.rfind("avl,16,0,1,16,", 0) == 0);
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
}

TEST_CASE("rows are ordered by structure, n, p, seed and are reproducible") {
    BenchConfig cfg;
    cfg.n_list = {64, 32};
    cfg.p_list = {0.5, 0.0};
    cfg.queries_per_key = 4;
    cfg.seeds = 2;
    cfg.base_seed = 10;
    cfg.structures = {Structure::Splay, Structure::Aapst};
    cfg.threads = 3;
    const auto rows = run_bench(cfg);
    REQUIRE(rows.size() == 16);
    CHECK(rows[0].structure == Structure::Splay);
    CHECK(rows[0].n == 64);
    CHECK(rows[0].p == 0.5);
    CHECK(rows[0].seed == 10);
    CHECK(rows[1].seed == 11);
    CHECK(rows[2].p == 0.0);
    CHECK(rows[4].n == 32);
    CHECK(rows[8].structure == Structure::Aapst);

    for (const TrialResult& r : rows) {
        CHECK(static_cast<double>(r.max_comparisons_single_query) >= r.avg());
        if (r.structure != Structure::Aapst) CHECK(r.restructure_count == 0);
    }

    cfg.threads = 1;
    CHECK(csv_without_wall_time(run_bench(cfg)) == csv_without_wall_time(rows));
}

TEST_CASE("configuration validation") {
    BenchConfig ok = BenchConfig::defaults();
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.n_list.front() == 1024);
    CHECK(ok.n_list.back() == 131072);
    CHECK(ok.p_list.size() == 5);
    CHECK(ok.seeds == 5);
    CHECK(ok.queries_per_key == 16);

    auto bad = ok;
    bad.p_list = {1.5};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.n_list = {0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.structures.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = ok;
    bad.alpha = 0.4;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("plot data: one file per p with a column per structure") {
    BenchConfig cfg;
    cfg.n_list = {32, 64};
    cfg.p_list = {0.0, 1.0};
    cfg.queries_per_key = 2;
    cfg.seeds = 2;
    const auto rows = run_bench(cfg);
    const auto dir = std::filesystem::temp_directory_path() / "aapst_plot_test";
    std::filesystem::remove_all(dir);
    const auto files = write_plot_data(dir.string(), cfg, rows);
    REQUIRE(files.size() == 2);
    CHECK(std::filesystem::path(files[0]).filename() == "p_0.dat");
    CHECK(std::filesystem::path(files[1]).filename() == "p_1.dat");

    std::ifstream in(files[1]);
    std::string l1, l2, l3;
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    CHECK(l1 == "# p=1");
    CHECK(l2 == "# n aapst splay avl");
    std::istringstream row(l3);
    double n = 0, a = 0, s = 0, v = 0;
    row >> n >> a >> s >> v;
    CHECK(n == 32);
    double expect_avl = 0;
    for (const TrialResult& r : rows)
        if (r.structure == Structure::Avl && r.n == 32 && r.p == 1.0) expect_avl += r.avg() / 2;
    CHECK(v == doctest::Approx(expect_avl).epsilon(1e-4));
    std::filesystem::remove_all(dir);
}

TEST_CASE("adaptive structures get cheaper as p grows; AVL does not care" * doctest::timeout(120)) {
    BenchConfig cfg;
    cfg.n_list = {4096};
    cfg.p_list = {0.0, 0.25, 0.5, 0.75, 1.0};
    cfg.seeds = 40;
    cfg.structures = {Structure::Avl};
    const auto avl = mean_avg(run_bench(cfg));
    const double base = avl.at({Structure::Avl, 0.0});
    for (double p : cfg.p_list) CHECK(avl.at({Structure::Avl, p}) == doctest::Approx(base).epsilon(0.02));

    cfg.seeds = 5;
    cfg.structures = {Structure::Aapst, Structure::Splay};
    const auto adaptive = mean_avg(run_bench(cfg));
    for (Structure s : cfg.structures) {
        for (std::size_t i = 1; i < cfg.p_list.size(); ++i) {
            CHECK(adaptive.at({s, cfg.p_list[i]}) <= 1.02 * adaptive.at({s, cfg.p_list[i - 1]}));
        }
    }
}

TEST_CASE("adversarial rows") {
    BenchConfig cfg;
    cfg.n_list = {2, 256};
    cfg.p_list = {0.0};
    cfg.structures = {Structure::Splay, Structure::Aapst};
    const auto rows = run_adversarial(cfg);
    REQUIRE(rows.size() == 4);
    for (const TrialResult& r : rows) {
        CHECK(r.m == 1);
        CHECK(r.total_comparisons == r.max_comparisons_single_query);
    }
    CHECK(rows[0].max_comparisons_single_query <= 3);  // splay, n = 2
    CHECK(rows[1].max_comparisons_single_query >= 128);
    CHECK(rows[2].max_comparisons_single_query <= 3);  // aapst, n = 2
}

TEST_CASE("verify passes on a correct build and names an injected heap fault") {
    VerifyConfig cfg;
    cfg.point_sets = 50;
    cfg.dictionary_ops = 20000;
    for (const VerifyCase& c : run_verify(cfg)) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.passed);
    }

    cfg.inject_fault = "heap";
    bool named = false;
    for (const VerifyCase& c : run_verify(cfg)) {
        if (!c.passed && c.detail.find("HeapViolation") != std::string::npos) named = true;
    }
    CHECK(named);
}
