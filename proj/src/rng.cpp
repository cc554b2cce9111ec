#include "polarshape/rng.hpp"

namespace polarshape {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

uint64_t mix64(uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t seed, uint64_t salt) { return mix64(seed ^ mix64(salt)); }

RandomStream::RandomStream(uint64_t seed, StreamId id) {
    uint64_t k = mix64(seed ^ mix64(0x706F6C61ULL + id.purpose));
    k = mix64(k ^ mix64(id.a));
    k = mix64(k ^ mix64(id.b));
    key_ = k;
}

uint64_t RandomStream::next_u64() { return mix64(key_ + counter_++ * kGolden); }

double RandomStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint8_t RandomStream::next_bit() { return static_cast<uint8_t>(next_u64() >> 63); }

}  // namespace polarshape
