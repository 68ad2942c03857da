#pragma once

#include <cstdint>
#include <vector>

namespace tdg {

// SplitMix64. Self-contained so that seeded runs are reproducible across
// platforms and standard-library versions (std distributions are not).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0. Rejection-free enough for test scale;
    // uses 128-bit multiply to avoid modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        const __uint128_t wide = static_cast<__uint128_t>(next_u64()) * bound;
        return static_cast<std::uint64_t>(wide >> 64);
    }

    int next_int(int lo, int hi) {  // inclusive range
        return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double next_double() {  // [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bool(double p) { return next_double() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Stable derivation of per-task seeds from a master seed.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t salt1, std::uint64_t salt2 = 0) {
        Rng r(master ^ (salt1 * 0xd6e8feb86659fd93ULL) ^ (salt2 * 0xa3b195354a39b70dULL));
        r.next_u64();
        return r.next_u64();
    }

  private:
    std::uint64_t state_;
};

}  // namespace tdg
