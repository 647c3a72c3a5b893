#include "h3/vertex_set.hpp"

#include <algorithm>

namespace h3 {

VertexSet::VertexSet(std::size_t n, bool full) : n_(n), words_(words_for(n), 0)
{
    if (full) {
        std::fill(words_.begin(), words_.end(), ~Word{0});
        if (n % word_bits)
            words_.back() = (Word{1} << (n % word_bits)) - 1;
    }
}

VertexSet::VertexSet(std::size_t n, std::initializer_list<Vertex> members) : VertexSet(n)
{
    for (Vertex v : members)
        set(v);
}

VertexSet::VertexSet(std::size_t n, std::span<const Word> words)
    : n_(n), words_(words.begin(), words.end())
{
}

VertexSet VertexSet::of(std::size_t n, std::span<const Vertex> members)
{
    VertexSet s(n);
    for (Vertex v : members)
        s.set(v);
    return s;
}

void VertexSet::clear()
{
    std::fill(words_.begin(), words_.end(), 0);
}

std::size_t VertexSet::count() const
{
    std::size_t c = 0;
    for (Word w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool VertexSet::empty() const
{
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

VertexSet& VertexSet::operator&=(const VertexSet& o)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= o.words_[i];
    return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& o)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= o.words_[i];
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& o)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~o.words_[i];
    return *this;
}

VertexSet& VertexSet::and_words(std::span<const Word> w)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= w[i];
    return *this;
}

VertexSet& VertexSet::and_not_words(std::span<const Word> w)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~w[i];
    return *this;
}

Vertex VertexSet::nth(std::size_t k) const
{
    for (std::size_t w = 0; w < words_.size(); ++w) {
        auto c = static_cast<std::size_t>(std::popcount(words_[w]));
        if (k < c) {
            Word bits = words_[w];
            for (std::size_t i = 0; i < k; ++i)
                bits &= bits - 1;
            return static_cast<Vertex>(w * word_bits + std::countr_zero(bits));
        }
        k -= c;
    }
    return static_cast<Vertex>(n_);
}

std::vector<Vertex> VertexSet::members() const
{
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
}

} // namespace h3
