#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mmaf {

// Seeded stream that can be split into independent children by key. A child
// depends only on (root seed, key path), never on how much the parent has
// been consumed, so parallel work stays reproducible for any thread count.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    RandomStream split(std::uint64_t key) const;
    RandomStream split(std::uint64_t k1, std::uint64_t k2) const;

    double uniform();           // [0, 1)
    double uniform_open();      // (0, 1)
    double normal();            // N(0, 1)

    std::mt19937_64& engine() { return engine_; }
    std::uint64_t seed() const { return path_.front(); }

private:
    RandomStream(std::vector<std::uint64_t> path);

    std::vector<std::uint64_t> path_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mmaf
