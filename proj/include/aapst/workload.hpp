#pragma once

// Seeded query workloads. Randomness comes from xoshiro256** seeded through
// splitmix64, and every draw (bounded integers, shuffles, coin flips) is done
// here rather than via <random> distributions, whose output is
// implementation-defined. Equal specs give bit-identical key streams on any
// platform.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "aapst/types.hpp"

namespace aapst {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Satisfies UniformRandomBitGenerator.
class Xoshiro256StarStar {
public:
    using result_type = std::uint64_t;

    // `stream` separates independent sequences drawn from one user seed.
    explicit Xoshiro256StarStar(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    // Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with
    // rejection, so no modulo bias).
    std::uint64_t below(std::uint64_t bound) noexcept;
    // Uniform double in [0, 1) with 53 random bits.
    double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t s_[4];
};

template <typename T>
void seeded_shuffle(std::vector<T>& v, Xoshiro256StarStar& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

struct WorkloadSpec {
    std::size_t n = 1;
    double p = 0.0;
    std::size_t m = 0;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument unless n >= 1 and 0 <= p <= 1.
    void validate() const;
};

struct Dataset {
    // Keys 0..n-1 in the order they are inserted.
    std::vector<Key> insert_order;
    // rank_to_key[r] is the key with the r-th highest access probability
    // under the exponential component.
    std::vector<Key> rank_to_key;
};

Dataset build_dataset(std::size_t n, std::uint64_t seed);

// Rank r = floor(-log2(u)) for u = bits / 2^64, i.e. the count of leading
// zero bits, clamped to n - 1. P(r = i) = 2^-(i+1) below n - 1 and the last
// rank carries the remaining 2^-(n-1).
std::size_t exponential_rank(std::uint64_t bits, std::size_t n) noexcept;

class QueryStream {
public:
    explicit QueryStream(const WorkloadSpec& spec);

    // With probability p a key drawn by exponential rank, otherwise a
    // uniformly random key.
    Key next();

    const WorkloadSpec& spec() const noexcept { return spec_; }
    const Dataset& dataset() const noexcept { return data_; }

private:
    WorkloadSpec spec_;
    Dataset data_;
    Xoshiro256StarStar rng_;
};

enum class OpKind { Insert, Query };

struct Operation {
    OpKind kind;
    Key key;

    friend bool operator==(const Operation&, const Operation&) = default;
};

// Ascending inserts of 0..n-1 followed by a query for 0. Requires n >= 2.
std::vector<Operation> adversarial_sequence(std::size_t n);

}  // namespace aapst
