#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <set>

#include "aapst/adaptive_pst.hpp"
#include "aapst/splay_tree.hpp"
#include "aapst/workload.hpp"

using namespace aapst;

namespace {

// P(rank = i) of the truncated geometric, from its definition.
double exponential_mass(std::size_t i, std::size_t n) {
    if (i + 1 < n) return std::ldexp(1.0, -static_cast<int>(i + 1));
    return std::ldexp(1.0, -static_cast<int>(n - 1));
}

std::vector<std::uint64_t> key_counts(const WorkloadSpec& spec, QueryStream& qs) {
    std::vector<std::uint64_t> counts(spec.n, 0);
    for (std::size_t i = 0; i < spec.m; ++i) ++counts[static_cast<std::size_t>(qs.next())];
    return counts;
}

}  // namespace

TEST_CASE("PRNG matches reference splitmix64 / xoshiro256** outputs") {
    SplitMix64 sm(0);
    CHECK(sm.next() == 0xe220a8397b1dcdafULL);
    CHECK(sm.next() == 0x6e789e6aa1b965f4ULL);

    Xoshiro256StarStar x(1);
    CHECK(x() == 0xb3f2af6d0fc710c5ULL);
    CHECK(x() == 0x853b559647364ceaULL);
    CHECK(x() == 0x92f89756082a4514ULL);
    CHECK(x() == 0x642e1c7bc266a3a7ULL);

    Xoshiro256StarStar y(42, 1);
    CHECK(y() == 0x30425e2a3dc334ULL);
    CHECK(y() == 0x57e19f0156c8a6bULL);
}

TEST_CASE("bounded draws stay in range and shuffles are permutations") {
    Xoshiro256StarStar rng(3);
    for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 1000ull, 1ull << 40}) {
        for (int i = 0; i < 1000; ++i) REQUIRE(rng.below(bound) < bound);
    }
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("build_dataset") {
    const Dataset one = build_dataset(1, 5);
    CHECK(one.insert_order == std::vector<Key>{0});
    CHECK(one.rank_to_key == std::vector<Key>{0});

    const Dataset a = build_dataset(1000, 77);
    const Dataset b = build_dataset(1000, 77);
    CHECK(a.insert_order == b.insert_order);
    CHECK(a.rank_to_key == b.rank_to_key);
    CHECK(std::set<Key>(a.insert_order.begin(), a.insert_order.end()).size() == 1000);
    CHECK(*std::max_element(a.rank_to_key.begin(), a.rank_to_key.end()) == 999);

    const Dataset c = build_dataset(1000, 78);
    CHECK(a.rank_to_key != c.rank_to_key);
    CHECK(a.insert_order != c.insert_order);

    CHECK_THROWS_AS(build_dataset(0, 1), std::invalid_argument);
}

TEST_CASE("exponential_rank is the leading-zero count clamped to n-1") {
    CHECK(exponential_rank(~0ull, 16) == 0);
    CHECK(exponential_rank(1ull << 63, 16) == 0);
    CHECK(exponential_rank((1ull << 63) - 1, 16) == 1);
    CHECK(exponential_rank(1ull << 60, 16) == 3);
    CHECK(exponential_rank(1, 16) == 15);
    CHECK(exponential_rank(0, 16) == 15);
    // n = 2: top bit decides, so each rank has probability exactly 1/2.
    CHECK(exponential_rank(1ull << 63, 2) == 0);
    CHECK(exponential_rank((1ull << 63) - 1, 2) == 1);
    CHECK(exponential_rank(0, 1) == 0);
}

TEST_CASE("identical specs give identical streams") {
    const WorkloadSpec spec{300, 0.4, 10000, 99};
    QueryStream a(spec), b(spec);
    for (std::size_t i = 0; i < spec.m; ++i) REQUIRE(a.next() == b.next());
    QueryStream c(WorkloadSpec{300, 0.4, 10000, 100});
    QueryStream d(spec);
    int same = 0;
    for (int i = 0; i < 1000; ++i) same += c.next() == d.next();
    CHECK(same < 100);
}

TEST_CASE("invalid workload specs are rejected") {
    CHECK_THROWS_AS(QueryStream(WorkloadSpec{0, 0.5, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(QueryStream(WorkloadSpec{4, -0.1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(QueryStream(WorkloadSpec{4, 1.5, 1, 1}), std::invalid_argument);
}

TEST_CASE("p = 0 is uniform within 3 sigma") {
    const WorkloadSpec spec{16, 0.0, 1000000, 1};
    QueryStream qs(spec);
    const auto counts = key_counts(spec, qs);
    const double mean = 1e6 / 16.0;
    const double sigma = std::sqrt(1e6 * (1.0 / 16.0) * (15.0 / 16.0));
    for (auto c : counts) CHECK(std::abs(static_cast<double>(c) - mean) <= 3.0 * sigma);
}

TEST_CASE("p = 1 puts about half the mass on rank 0 and a quarter on rank 1") {
    const WorkloadSpec spec{16, 1.0, 1000000, 2};
    QueryStream qs(spec);
    const auto counts = key_counts(spec, qs);
    const auto& rank = qs.dataset().rank_to_key;
    const double f0 = static_cast<double>(counts[static_cast<std::size_t>(rank[0])]) / 1e6;
    const double f1 = static_cast<double>(counts[static_cast<std::size_t>(rank[1])]) / 1e6;
    CHECK(f0 >= 0.49);
    CHECK(f0 <= 0.51);
    CHECK(f1 >= 0.24);
    CHECK(f1 <= 0.26);
}

TEST_CASE("p = 1, n = 2 splits evenly") {
    const WorkloadSpec spec{2, 1.0, 200000, 3};
    QueryStream qs(spec);
    const auto counts = key_counts(spec, qs);
    const double sigma = std::sqrt(200000 * 0.25);
    CHECK(std::abs(static_cast<double>(counts[0]) - 100000.0) <= 4.0 * sigma);
}

TEST_CASE("p = 0.5 follows the mixture law (chi-square at the 1e-3 level)") {
    const std::size_t n = 64;
    const WorkloadSpec spec{n, 0.5, 1000000, 4};
    QueryStream qs(spec);
    const auto counts = key_counts(spec, qs);
    std::vector<double> expected(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto key = static_cast<std::size_t>(qs.dataset().rank_to_key[r]);
        expected[key] = 1e6 * (0.5 / static_cast<double>(n) + 0.5 * exponential_mass(r, n));
    }
    // The uniform half keeps every expected count near 7800, so no pooling.
    double stat = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double o = static_cast<double>(counts[k]);
        stat += (o - expected[k]) * (o - expected[k]) / expected[k];
    }
    const boost::math::chi_squared dist(static_cast<double>(n - 1));
    const double critical = boost::math::quantile(boost::math::complement(dist, 1e-3));
    CHECK(critical == doctest::Approx(103.442).epsilon(1e-4));
    CHECK(stat < critical);
}

TEST_CASE("top ceil(log2 n) ranks carry at least 1 - 2/n of the exponential mass") {
    for (std::size_t n : {2u, 3u, 16u, 64u, 1000u, 65536u}) {
        const auto top = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
        double mass = 0.0, total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            total += exponential_mass(i, n);
            if (i < top) mass += exponential_mass(i, n);
        }
        CHECK(total == doctest::Approx(1.0));
        CHECK(mass >= 1.0 - 2.0 / static_cast<double>(n) - 1e-12);
    }
}

TEST_CASE("adversarial sequence") {
    CHECK(adversarial_sequence(2) == std::vector<Operation>{
                                         {OpKind::Insert, 0}, {OpKind::Insert, 1}, {OpKind::Query, 0}});
    CHECK_THROWS_AS(adversarial_sequence(1), std::invalid_argument);

    std::vector<double> splay_cost;
    for (int k = 8; k <= 14; ++k) {
        const std::size_t n = std::size_t{1} << k;
        SplayTree s;
        Aapst a;
        for (const Operation& op : adversarial_sequence(n)) {
            if (op.kind == OpKind::Insert) {
                s.insert(op.key);
                a.insert_key(op.key);
            } else {
                REQUIRE(s.search(op.key));
                REQUIRE(a.query(op.key));
            }
        }
        splay_cost.push_back(static_cast<double>(s.last_op().comparisons_this_op));
        CHECK(static_cast<double>(a.last_op().comparisons_this_op) <=
              10.0 * std::log2(static_cast<double>(n) + 1.0));
        CHECK(splay_cost.back() >= static_cast<double>(n));
    }
    // Doubling n doubles the splay cost: linear growth.
    for (std::size_t i = 1; i < splay_cost.size(); ++i) {
        CHECK(splay_cost[i] / splay_cost[i - 1] == doctest::Approx(2.0).epsilon(0.01));
    }
}
