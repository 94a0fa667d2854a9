#pragma once

// Philox4x32-10 counter-based generator. A 32-bit word of randomness is a
// pure function of (seed, sample, word index), which is what makes Monte
// Carlo results independent of scheduling: any worker can produce any
// sample's stream.

#include <array>
#include <cstdint>

namespace eqd {

inline std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint64_t sample,
                                               std::uint64_t block) {
    std::uint32_t c0 = static_cast<std::uint32_t>(block);
    std::uint32_t c1 = static_cast<std::uint32_t>(block >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(sample);
    std::uint32_t c3 = static_cast<std::uint32_t>(sample >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (int round = 0; round < 10; ++round) {
        std::uint64_t p0 = 0xD2511F53ull * c0;
        std::uint64_t p1 = 0xCD9E8D57ull * c2;
        std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
    }
    return {c0, c1, c2, c3};
}

// Sequential 32-bit word stream for one sample.
class PhiloxStream {
  public:
    PhiloxStream(std::uint64_t seed, std::uint64_t sample)
        : seed_(seed), sample_(sample) {}

    std::uint32_t next_u32() {
        std::uint64_t block = widx_ >> 2;
        if (block != cached_block_) {
            cache_ = philox4x32(seed_, sample_, block);
            cached_block_ = block;
        }
        return cache_[widx_++ & 3];
    }

  private:
    std::uint64_t seed_, sample_;
    std::uint64_t widx_ = 0;
    std::uint64_t cached_block_ = ~0ull;
    std::array<std::uint32_t, 4> cache_{};
};

}  // namespace eqd
