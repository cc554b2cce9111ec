#pragma once

#include <cstdint>

namespace polarshape {

// Purpose tags keep logically distinct random streams apart even when the
// same 64-bit master seed is reused.
namespace stream_purpose {
inline constexpr uint32_t kShaper = 1;
inline constexpr uint32_t kFrozenValues = 2;
inline constexpr uint32_t kChannelNoise = 3;
inline constexpr uint32_t kMessage = 4;
inline constexpr uint32_t kInnerConstruction = 5;
inline constexpr uint32_t kOuterConstruction = 6;
inline constexpr uint32_t kGeneric = 7;
}  // namespace stream_purpose

struct StreamId {
    uint32_t purpose = stream_purpose::kGeneric;
    uint64_t a = 0;
    uint64_t b = 0;
};

uint64_t mix64(uint64_t z);
uint64_t derive_seed(uint64_t seed, uint64_t salt);

// Counter-based generator: the key hashes (seed, id) and each draw finalizes
// key + counter * golden ratio. Identical (seed, id) give identical sequences
// on any platform; distinct ids give substreams that can be opened in any
// order, which is what lets the decoder replay the shaper's draws
// position by position.
class RandomStream {
  public:
    RandomStream(uint64_t seed, StreamId id);

    uint64_t next_u64();
    double next_uniform();  // in [0, 1)
    uint8_t next_bit();

  private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace polarshape
