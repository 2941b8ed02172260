#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "limca/core/automaton.hpp"

namespace limca {

// Cell i of a binary word of length n is bit n-1-i, so numeric order is
// lexicographic order.
std::uint64_t pack_bits(const Word& w);
Word unpack_bits(std::uint64_t v, std::size_t n);

// Least rotation of a packed binary word.
std::uint64_t canonical_rotation(std::uint64_t v, std::size_t n);

// Binary necklaces of length n (least rotations), increasing.
std::vector<std::uint64_t> binary_necklaces(std::size_t n);

// Recurrent period-n configurations of a binary CA, one least rotation per
// rotation class, increasing. The step is computed once per necklace;
// `threads` = 0 uses the hardware count.
std::vector<Word> recurrent_necklaces(const CellularAutomaton& ca, std::size_t n, unsigned threads = 0);

}  // namespace limca
