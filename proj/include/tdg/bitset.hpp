#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace tdg {

// Fixed-universe vertex set backed by 64-bit words. Single word covers every
// desk-scale instance; larger universes fall back to the chunked path.
class Vset {
  public:
    Vset() = default;
    explicit Vset(int universe) : n_(universe), words_((universe + 63) / 64, 0) {}

    int universe() const { return n_; }

    void set(int v) { words_[v >> 6] |= (1ULL << (v & 63)); }
    void reset(int v) { words_[v >> 6] &= ~(1ULL << (v & 63)); }
    bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1ULL; }

    void clear() { for (auto& w : words_) w = 0; }
    void fill() {
        for (auto& w : words_) w = ~0ULL;
        trim();
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (auto w : words_) if (w) return false;
        return true;
    }

    int count_and(const Vset& o) const {
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }
    bool intersects(const Vset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    Vset& operator|=(const Vset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Vset& operator&=(const Vset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Vset& operator^=(const Vset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }
    // this \ o
    Vset& subtract(const Vset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend Vset operator|(Vset a, const Vset& b) { a |= b; return a; }
    friend Vset operator&(Vset a, const Vset& b) { a &= b; return a; }
    friend Vset operator^(Vset a, const Vset& b) { a ^= b; return a; }

    bool operator==(const Vset& o) const { return n_ == o.n_ && words_ == o.words_; }
    bool operator!=(const Vset& o) const { return !(*this == o); }

    int symdiff_count(const Vset& o) const {
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] ^ o.words_[i]);
        return c;
    }

    // -1 when empty.
    int first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
        return -1;
    }
    int next(int after) const {  // first element > after, or -1
        int v = after + 1;
        if (v >= n_) return -1;
        std::size_t i = static_cast<std::size_t>(v) >> 6;
        std::uint64_t w = words_[i] & (~0ULL << (v & 63));
        while (true) {
            if (w) return static_cast<int>(i * 64 + std::countr_zero(w));
            if (++i >= words_.size()) return -1;
            w = words_[i];
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        for (int v = first(); v >= 0; v = next(v)) f(v);
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    static Vset from(int universe, const std::vector<int>& elems) {
        Vset s(universe);
        for (int v : elems) s.set(v);
        return s;
    }

  private:
    void trim() {
        const int rem = n_ & 63;
        if (rem && !words_.empty()) words_.back() &= (~0ULL >> (64 - rem));
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace tdg
