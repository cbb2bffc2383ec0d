#ifndef FG_RNG_HPP
#define FG_RNG_HPP

#include <cstdint>

namespace fg {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives independent substreams: same (seed, stream) always gives the same
// stream regardless of thread scheduling.
inline std::uint64_t hash_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x6a09e667f3bcc909ULL));
}

// Counter-based generator: output i is splitmix64(state + i).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_ + counter_++); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi]
    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    bool next_bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
    std::uint64_t counter_ = 0;
};

}  // namespace fg

#endif
