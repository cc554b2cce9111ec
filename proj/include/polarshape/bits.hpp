#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace polarshape {

// Bit vectors, one bit per byte, index 0 first. All block lengths in the
// polar layers are powers of two.
using BitBlock = std::vector<uint8_t>;

bool is_power_of_two(std::size_t n);

// log2(n) for n a positive power of two; throws std::invalid_argument otherwise.
int log2_exact(std::size_t n);

// Multiplies u on the right by [[1,0],[1,1]]^{tensor log2(L)} over GF(2), so
// that for L = 2 the output is (u0 ^ u1, u1). The transform is an involution.
// O(L log L).
BitBlock polar_transform(BitBlock u);
void polar_transform_inplace(BitBlock& u);

// Integer packing with bit 0 of the block as the most significant bit.
uint64_t bits_to_index(const BitBlock& bits);
BitBlock index_to_bits(uint64_t value, int length);

}  // namespace polarshape
