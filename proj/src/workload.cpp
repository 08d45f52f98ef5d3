#include "aapst/workload.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace aapst {

namespace {

constexpr std::uint64_t kDatasetStream = 0;
constexpr std::uint64_t kQueryStream = 1;

std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed, std::uint64_t stream) noexcept {
    SplitMix64 sm(seed ^ (stream * 0xd1b54a32d192ed03ULL));
    for (auto& word : s_) word = sm.next();
}

Xoshiro256StarStar::result_type Xoshiro256StarStar::operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Xoshiro256StarStar::below(std::uint64_t bound) noexcept {
    unsigned __int128 product = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<unsigned __int128>((*this)()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

void WorkloadSpec::validate() const {
    if (n < 1) throw std::invalid_argument("workload needs n >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("workload p must lie in [0, 1]");
}

Dataset build_dataset(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("dataset needs n >= 1");
    Xoshiro256StarStar rng(seed, kDatasetStream);
    Dataset d;
    d.insert_order.resize(n);
    std::iota(d.insert_order.begin(), d.insert_order.end(), Key{0});
    seeded_shuffle(d.insert_order, rng);
    d.rank_to_key.resize(n);
    std::iota(d.rank_to_key.begin(), d.rank_to_key.end(), Key{0});
    seeded_shuffle(d.rank_to_key, rng);
    return d;
}

std::size_t exponential_rank(std::uint64_t bits, std::size_t n) noexcept {
    const auto r = static_cast<std::size_t>(std::countl_zero(bits));
    return r < n - 1 ? r : n - 1;
}

QueryStream::QueryStream(const WorkloadSpec& spec)
    : spec_(spec), data_((spec.validate(), build_dataset(spec.n, spec.seed))),
      rng_(spec.seed, kQueryStream) {}

Key QueryStream::next() {
    const bool skewed = rng_.unit() < spec_.p;
    if (skewed) return data_.rank_to_key[exponential_rank(rng_(), spec_.n)];
    return static_cast<Key>(rng_.below(spec_.n));
}

std::vector<Operation> adversarial_sequence(std::size_t n) {
    if (n < 2) throw std::invalid_argument("adversarial sequence needs n >= 2");
    std::vector<Operation> ops;
    ops.reserve(n + 1);
    for (std::size_t k = 0; k < n; ++k) ops.push_back({OpKind::Insert, static_cast<Key>(k)});
    ops.push_back({OpKind::Query, 0});
    return ops;
}

}  // namespace aapst
