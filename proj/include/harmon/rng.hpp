#pragma once

#include <cstdint>

namespace harmon {

// splitmix64 (Steele/Lea/Flood constants). Every piece of randomness in the
// project is derived as SplitMix-of-(master_seed, index), so sample i never
// depends on generation order or worker count.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t mix_seed(uint64_t master, uint64_t index) {
    uint64_t s = master ^ (index * 0xE7037ED1A0B428DBULL + 0xA0761D6478BD642FULL);
    return splitmix64(s);
}

// Small deterministic generator over the splitmix64 stream. Deliberately not
// a std:: engine: std distributions are implementation-defined, this is not.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [lo, hi]
    int64_t next_int(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
    }

    // uniform in [lo, hi)
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    uint64_t state_;
};

}  // namespace harmon
