#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace ebbi {

std::uint64_t splitmix64(std::uint64_t& state);

// Seed for stream `stream` derived from a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
public:
    explicit Rng(std::uint64_t seed);

    // Uniform on [0,1) from the top 53 bits, identical on every platform.
    double uniform();
    std::uint64_t bits() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

// Work is cut into fixed-size shards, shard k gets derive_seed(seed, k).
// Results do not depend on how many threads run the shards.
inline constexpr std::size_t kShardSize = std::size_t{1} << 16;

template <class Fn>
void for_each_shard(std::size_t count, std::uint64_t seed, Fn&& fn) {
    const std::size_t shards = (count + kShardSize - 1) / kShardSize;
    auto run = [&](std::size_t k) {
        Rng rng(derive_seed(seed, k));
        std::size_t begin = k * kShardSize;
        std::size_t end = std::min(count, begin + kShardSize);
        fn(rng, begin, end);
    };
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, shards);
    if (workers <= 1) {
        for (std::size_t k = 0; k < shards; ++k) run(k);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t k = w; k < shards; k += workers) run(k);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace ebbi
