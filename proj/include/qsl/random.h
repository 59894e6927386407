#pragma once

#include <cstdint>

namespace qsl {

/// SplitMix64 output function. Used as the mixing step of the counter-based
/// generator below.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seeded stream of unbiased bits.
///
/// The stream is counter based: block `i` of stream `s` under seed `k` is a
/// pure function of (k, s, i), so any shot can be replayed without touching
/// the others. Bits are handed out least significant first, 64 per block.
/// The j-th bit of a stream is therefore bit (j % 64) of block (j / 64).
class RandomSource {
   public:
    RandomSource(uint64_t seed, uint64_t stream)
        : key_(splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL))) {
    }

    bool next_bit() {
        if (remaining_ == 0) {
            buffer_ = block(counter_++);
            remaining_ = 64;
        }
        bool bit = buffer_ & 1;
        buffer_ >>= 1;
        --remaining_;
        return bit;
    }

    /// Uniform integer in [0, bound) by rejection on the smallest covering
    /// power of two.
    uint64_t next_below(uint64_t bound) {
        int bits = 0;
        while ((uint64_t{1} << bits) < bound) {
            ++bits;
        }
        while (true) {
            uint64_t v = 0;
            for (int i = 0; i < bits; ++i) {
                v |= uint64_t{next_bit()} << i;
            }
            if (v < bound) {
                return v;
            }
        }
    }

    uint64_t block(uint64_t index) const {
        return splitmix64(key_ + index * 0x9E3779B97F4A7C15ULL);
    }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
    uint64_t buffer_ = 0;
    int remaining_ = 0;
};

}  // namespace qsl
