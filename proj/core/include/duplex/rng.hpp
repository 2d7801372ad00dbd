#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace duplex {

// splitmix64 finalizer, used to derive independent seeds from a base seed.
inline uint64_t mix_seed(uint64_t base, uint64_t stream) {
    uint64_t z = base + stream * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded RNG with hand-rolled scalings. std::mt19937_64 itself is fully
// specified by the standard; the std distributions are not, so all scaling
// here is explicit to keep outputs byte-identical across platforms.
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : seed_(seed), engine_(seed) {}

    uint64_t next() { return engine_(); }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi], inclusive. Modulo bias is negligible for
    // the small ranges used in data generation.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int64_t>(next() % span);
    }

    bool chance(double p) { return uniform() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<size_t>(uniform_int(0, static_cast<int64_t>(items.size()) - 1))];
    }

    // Independent stream for a sub-task; does not disturb this engine's state.
    SeededRng derive(uint64_t stream) const { return SeededRng(mix_seed(seed_, stream)); }

    uint64_t seed() const { return seed_; }

private:
    uint64_t seed_;
    std::mt19937_64 engine_;
};

// FNV-1a, used for content hashing (dedup keys, mock embedding seeds).
inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace duplex
