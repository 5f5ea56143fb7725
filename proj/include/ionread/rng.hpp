#pragma once

// Philox4x32-10 counter-based generator. Substream i of seed s is the
// counter sequence keyed by (lo32(s), hi32(s) ^ lo32(i)) with the trial
// index in the high counter words, giving 2^64 independent substreams
// per seed. Fixed algorithm, so ensembles are reproducible across
// platforms and thread counts.

#include <array>
#include <cstdint>

namespace ionread {

class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32) ^ static_cast<std::uint32_t>(stream)},
          counter_{0, 0, static_cast<std::uint32_t>(stream >> 32),
                   static_cast<std::uint32_t>(stream)} {}

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // uniform in (0, 1]; never returns 0 so log() is safe
    double next_double();

    // exponential with the given rate (rate > 0)
    double next_exponential(double rate);

    // true with probability p
    bool next_bernoulli(double p) { return next_double() <= p; }

private:
    std::array<std::uint32_t, 4> round10() const;
    void advance();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> block_{};
    int cursor_ = 4;  // forces a fresh block on first draw
};

}  // namespace ionread
