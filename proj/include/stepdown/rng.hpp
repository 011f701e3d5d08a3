#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace stepdown::rng {

// splitmix64 step; also used to expand seeds into generator state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// xoshiro256++ with splitmix64 seeding.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : state_) w = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

// Derived per-trial stream. Streams depend only on (master_seed, index), so
// simulation results do not depend on worker count or execution order.
inline Xoshiro256 stream(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t sm = master_seed;
    std::uint64_t mixed = splitmix64(sm) ^ (0x9E3779B97F4A7C15ull * (index + 1));
    return Xoshiro256(mixed);
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Xoshiro256& g) {
    return static_cast<double>(g.next() >> 11) * 0x1.0p-53;
}

// Uniform on [a, b).
inline double uniform_in(Xoshiro256& g, double a, double b) {
    return a + (b - a) * uniform01(g);
}

// Uniform on the half-open interval (a, b]; requires a < b.
inline double uniform_left_open(Xoshiro256& g, double a, double b) {
    return b - (b - a) * uniform01(g);
}

// Unbiased integer in [0, bound).
inline std::uint64_t uniform_below(Xoshiro256& g, std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t x;
    do {
        x = g.next();
    } while (x >= limit);
    return x % bound;
}

// Standard normal via the Marsaglia polar method. The spare deviate is
// discarded so a call consumes a deterministic position in the stream.
inline double standard_normal(Xoshiro256& g) {
    while (true) {
        const double u = 2.0 * uniform01(g) - 1.0;
        const double v = 2.0 * uniform01(g) - 1.0;
        const double r = u * u + v * v;
        if (r > 0.0 && r < 1.0) {
            return u * std::sqrt(-2.0 * std::log(r) / r);
        }
    }
}

// Uniformly random k-subset of {0, ..., n-1} by partial Fisher-Yates.
inline std::vector<int> sample_subset(Xoshiro256& g, int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(uniform_below(g, static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace stepdown::rng
