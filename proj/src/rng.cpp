#include "h3/rng.hpp"

namespace h3 {

namespace {
constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x)
{
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt)
{
    return mix64(mix64(seed) ^ (salt * golden + 0x632BE59BD9B4E019ULL));
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : key_(derive_seed(seed, stream)) {}

std::uint64_t Rng::next()
{
    ++counter_;
    return mix64(key_ + counter_ * golden);
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    // reject the top partial block
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = next();
    while (x >= limit)
        x = next();
    return x % bound;
}

double Rng::uniform()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

bool Rng::bernoulli(double p)
{
    return uniform() < p;
}

Rng Rng::split(std::uint64_t stream) const
{
    Rng r;
    r.key_ = derive_seed(key_, stream + 1);
    return r;
}

} // namespace h3
