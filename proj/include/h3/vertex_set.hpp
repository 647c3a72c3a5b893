#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace h3 {

using Vertex = std::uint32_t;

// Fixed-universe bitset over vertices 0..n-1.
class VertexSet {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    VertexSet() = default;
    explicit VertexSet(std::size_t n, bool full = false);
    VertexSet(std::size_t n, std::initializer_list<Vertex> members);
    VertexSet(std::size_t n, std::span<const Word> words);

    static VertexSet of(std::size_t n, std::span<const Vertex> members);

    std::size_t universe() const { return n_; }
    static std::size_t words_for(std::size_t n) { return (n + word_bits - 1) / word_bits; }

    bool test(Vertex v) const { return (words_[v / word_bits] >> (v % word_bits)) & 1U; }
    void set(Vertex v) { words_[v / word_bits] |= Word{1} << (v % word_bits); }
    void reset(Vertex v) { words_[v / word_bits] &= ~(Word{1} << (v % word_bits)); }
    void clear();

    std::size_t count() const;
    bool empty() const;

    VertexSet& operator&=(const VertexSet& o);
    VertexSet& operator|=(const VertexSet& o);
    VertexSet& operator-=(const VertexSet& o);
    VertexSet& and_words(std::span<const Word> w);
    VertexSet& and_not_words(std::span<const Word> w);

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    bool operator==(const VertexSet& o) const = default;

    // k-th member in increasing order (0-based); k < count().
    Vertex nth(std::size_t k) const;
    std::vector<Vertex> members() const;

    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            Word bits = words_[w];
            while (bits) {
                int b = std::countr_zero(bits);
                f(static_cast<Vertex>(w * word_bits + b));
                bits &= bits - 1;
            }
        }
    }

    std::span<const Word> words() const { return words_; }

private:
    std::size_t n_ = 0;
    std::vector<Word> words_;
};

} // namespace h3
