#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace fedsim {

// splitmix64 finalizer; used to mix (base seed, purpose, round, client)
// into independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t purpose,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t h = mix64(base ^ 0x6a09e667f3bcc908ULL);
    h = mix64(h ^ purpose);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    return h;
}

// RNG stream purposes. Keeping streams separate means e.g. skipping RAD
// generation in a baseline run cannot shift client sampling or batching.
namespace stream {
inline constexpr std::uint64_t kSynth = 1;
inline constexpr std::uint64_t kPool = 2;
inline constexpr std::uint64_t kPartition = 3;
inline constexpr std::uint64_t kSplit = 4;
inline constexpr std::uint64_t kShrink = 5;
inline constexpr std::uint64_t kInit = 6;
inline constexpr std::uint64_t kArchAssign = 7;
inline constexpr std::uint64_t kRad = 8;
inline constexpr std::uint64_t kSampling = 9;
inline constexpr std::uint64_t kBatch = 10;
}  // namespace stream

// mt19937_64 with hand-rolled conversions. The engine's output sequence is
// fixed by the C++ standard; std::*_distribution output is not, and the
// test suite pins sampled values.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1), 53-bit resolution
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // standard normal via Box-Muller (cosine branch)
    double next_normal() {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // [0, n), Lemire multiply-shift
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::next_below: n == 0");
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), in selection order (partial Fisher-Yates)
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
        if (k > n) throw std::invalid_argument("Rng::sample_indices: k > n");
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(next_below(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace fedsim
