#pragma once
#include "rcpolar/common.hpp"
#include "rcpolar/puncturing.hpp"

namespace rcpolar {

// Circular-buffer rate matching: the length-2^n codeword is written row-wise
// into 2^q rows x 2^p columns, columns are permuted into reverse puncture
// order, and L bits are read column-wise starting at start_column, wrapping
// circularly (L > N means repetition).
struct RateMatchConfig {
  int p = 0;
  int q = 0;
  uint32_t L = 1;
  uint32_t start_column = 0;
  PunctureOrder order;  // base_n must equal p

  uint32_t rows() const { return 1u << q; }
  uint32_t cols() const { return 1u << p; }
  uint32_t N() const { return 1u << (p + q); }
  void validate() const;
};

struct CircularBuffer {
  uint32_t rows = 0;
  uint32_t cols = 0;
  IndexSet col_base;  // col_base[c] = base output index held by column c
  BitVec data;        // column-major: data[c*rows + r]

  uint8_t at(uint32_t r, uint32_t c) const { return data[c * rows + r]; }
};

CircularBuffer build_buffer(const BitVec& x, const RateMatchConfig& cfg);

// codeword index read at transmit position t when starting at start_column
uint32_t rm_index(const RateMatchConfig& cfg, uint32_t start_column, uint64_t t);

BitVec select_bits(const CircularBuffer& buf, uint32_t L, uint32_t start_column);
BitVec select_bits(const BitVec& x, const RateMatchConfig& cfg);

// received LLRs land back on their codeword positions; repeats accumulate,
// never-transmitted positions stay 0
SoftBuffer derate_match(const SoftBuffer& llrs, const RateMatchConfig& cfg);
void derate_accumulate(SoftBuffer& acc, const SoftBuffer& llrs, const RateMatchConfig& cfg,
                       uint32_t start_column);

}  // namespace rcpolar
