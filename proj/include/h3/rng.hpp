#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace h3 {

// Counter-based generator: the i-th output of stream s under seed k is
// mix64(key(k, s) + i * 0x9E3779B97F4A7C15), where mix64 is the SplitMix64
// finaliser. Any implementation of that formula reproduces our streams.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0);

    std::uint64_t next();
    std::uint64_t operator()() { return next(); }
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    // Uniform in [0, bound); bound > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound);
    // Uniform in [0, 1) with 53 random bits.
    double uniform();
    bool bernoulli(double p);

    // Independent generator derived from this one's key.
    Rng split(std::uint64_t stream) const;

    template <class T>
    void shuffle(std::vector<T>& items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

// Seed for a numbered sub-task, stable across runs.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

} // namespace h3
