#pragma once
#include "rcpolar/common.hpp"

namespace rcpolar {

// Bitwise CRC, MSB first, zero initial register, no final XOR.
// Default generator is LTE CRC24A (0x864CFB).
struct Crc {
  int len = 24;
  uint32_t poly = 0x864CFB;

  uint32_t compute(const BitVec& bits) const;  // remainder, MSB-aligned in low `len` bits
  BitVec attach(const BitVec& payload) const;  // payload + len remainder bits
  bool check(const BitVec& word) const;        // word = payload + crc
};

inline Crc crc24a() { return Crc{24, 0x864CFB}; }

}  // namespace rcpolar
