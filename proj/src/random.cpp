#include "mmaf/random.hpp"

#include <utility>

namespace mmaf {

namespace {

std::mt19937_64 seeded_engine(const std::vector<std::uint64_t>& path)
{
    std::vector<std::uint32_t> words;
    words.reserve(2 * path.size() + 1);
    words.push_back(static_cast<std::uint32_t>(path.size()));
    for (auto v : path) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : RandomStream(std::vector<std::uint64_t>{seed}) {}

RandomStream::RandomStream(std::vector<std::uint64_t> path)
    : path_(std::move(path)), engine_(seeded_engine(path_))
{
}

RandomStream RandomStream::split(std::uint64_t key) const
{
    auto p = path_;
    p.push_back(key);
    return RandomStream(std::move(p));
}

RandomStream RandomStream::split(std::uint64_t k1, std::uint64_t k2) const
{
    auto p = path_;
    p.push_back(k1);
    p.push_back(k2);
    return RandomStream(std::move(p));
}

double RandomStream::uniform()
{
    return std::generate_canonical<double, 53>(engine_);
}

double RandomStream::uniform_open()
{
    double u;
    do {
        u = uniform();
    } while (u <= 0.0);
    return u;
}

double RandomStream::normal()
{
    return normal_(engine_);
}

}  // namespace mmaf
