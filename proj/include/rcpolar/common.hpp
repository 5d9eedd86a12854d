#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcpolar {

// 0-based indexing everywhere. Bit vectors hold {0,1} values.
using BitVec = std::vector<uint8_t>;
using IndexSet = std::vector<uint32_t>;  // sorted unless noted
using SoftBuffer = std::vector<double>;  // per-codeword-bit LLRs, positive favors bit 0

// config / input validation problems (CLI exit code 2)
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_pow2(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline uint32_t reverse_bits(uint32_t v, int n) {
  uint32_t r = 0;
  for (int b = 0; b < n; b++) r |= ((v >> b) & 1u) << (n - 1 - b);
  return r;
}

}  // namespace rcpolar
