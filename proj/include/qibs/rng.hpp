// Seeded randomness. Every random choice in the simulator flows through Rng
// so a run is reproducible from a single 64-bit seed; independent streams
// (per trial, per channel) are derived with split_seed.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace qibs {

// SplitMix64 finalizer. Child streams are derived as
// Rng(split_seed(master, index)) with a documented, fixed index per role.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0,1) from the top 53 bits; avoids std distributions so the
    // stream is identical across standard library implementations
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    int next_bit() { return static_cast<int>(engine_() & 1ULL); }

    std::size_t next_index(std::size_t n) {
        if (n == 0) throw std::invalid_argument("next_index: empty range");
        return static_cast<std::size_t>(engine_() % n);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace qibs
