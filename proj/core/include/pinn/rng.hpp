#pragma once

#include <cstdint>
#include <random>

namespace pinn {

/// splitmix64 step, used to derive independent sub-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic seeded generator with a fixed, fully specified algorithm:
/// mt19937_64 raw output mapped to doubles by taking the top 53 bits
/// (never through std::uniform_real_distribution, whose mapping is
/// implementation-defined). Identical seeds give identical streams on
/// every conforming standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// u in [0, 1): (x >> 11) * 2^-53
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// u in [a, b)
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// u in the open interval (a, b); rejects the measure-zero endpoint draws.
    double uniform_open(double a, double b) {
        for (;;) {
            double u = uniform01();
            if (u > 0.0) {
                double v = a + (b - a) * u;
                if (v > a && v < b) return v;
            }
        }
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Independent sub-stream: seed' = splitmix64(seed + tag).
    Rng derive(std::uint64_t stream_tag) const {
        std::uint64_t s = seed_ + stream_tag;
        return Rng(splitmix64(s));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace pinn
