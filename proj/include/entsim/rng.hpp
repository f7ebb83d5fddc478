#pragma once

// Deterministic, platform-independent random numbers. SplitMix64 is used as
// the stream generator; per-chunk streams are derived from (seed, stream id)
// so chunked/parallel sampling reproduces serial totals exactly.

#include <cstdint>

namespace entsim {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (one value per call, no caching, so the
    // stream position stays easy to reason about).
    double next_normal();

    // Poisson sample; inversion for small means, PTRS-free normal-rounding
    // fallback is avoided in favour of exact inversion by summation for the
    // count scales used here.
    std::uint64_t next_poisson(double mean);

  private:
    std::uint64_t state_;
};

// Derives an independent stream for (seed, stream). Used for pulse chunks,
// multi-start optimizers and bootstrap resamples.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0x517cc1b727220a95ull * (stream + 1)));
    return g.next_u64();
}

} // namespace entsim
