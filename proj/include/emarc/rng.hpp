#ifndef EMARC_RNG_HPP
#define EMARC_RNG_HPP

#include <cstdint>

namespace emarc {

// SplitMix64. Small, fast, and the output sequence is identical on every
// platform, which std::mt19937 distributions are not. All stochastic stages
// (training, subsampling, permutation tests) draw from this so a seed pins
// the whole run.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [0, n), n > 0; rejection-free modulo is fine for our n << 2^64
    std::uint64_t next_below(std::uint64_t n) {
        return next_u64() % n;
    }

private:
    std::uint64_t state_;
};

// Derives an independent stream for (seed, index) pairs, so per-permutation
// or per-epoch streams do not depend on evaluation order.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
    Rng mix(seed ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL));
    return Rng(mix.next_u64());
}

} // namespace emarc

#endif
