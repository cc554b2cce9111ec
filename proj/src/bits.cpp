#include "polarshape/bits.hpp"

#include <stdexcept>

namespace polarshape {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("length must be a positive power of two");
    }
    int k = 0;
    while ((std::size_t(1) << k) < n) ++k;
    return k;
}

void polar_transform_inplace(BitBlock& u) {
    const std::size_t n = u.size();
    log2_exact(n);
    for (std::size_t block = n; block >= 2; block /= 2) {
        const std::size_t half = block / 2;
        for (std::size_t base = 0; base < n; base += block) {
            for (std::size_t j = 0; j < half; ++j) {
                u[base + j] ^= u[base + half + j];
            }
        }
    }
}

BitBlock polar_transform(BitBlock u) {
    polar_transform_inplace(u);
    return u;
}

uint64_t bits_to_index(const BitBlock& bits) {
    uint64_t v = 0;
    for (uint8_t b : bits) v = (v << 1) | (b & 1u);
    return v;
}

BitBlock index_to_bits(uint64_t value, int length) {
    BitBlock out(length);
    for (int i = 0; i < length; ++i) {
        out[i] = static_cast<uint8_t>((value >> (length - 1 - i)) & 1u);
    }
    return out;
}

}  // namespace polarshape
