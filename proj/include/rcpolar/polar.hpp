#pragma once
#include "rcpolar/common.hpp"
#include "rcpolar/crc.hpp"

namespace rcpolar {

// One mother polar code: N = 2^n, k = |info_set| non-frozen inputs of which
// the last crc_len (in info_set order) carry CRC bits. Frozen inputs are 0.
struct CodeSpec {
  int n = 0;
  IndexSet info_set;  // sorted ascending, 0-based input indices
  int crc_len = 0;
  uint32_t crc_poly = 0x864CFB;

  int N() const { return 1 << n; }
  int k() const { return (int)info_set.size(); }
  int payload_len() const { return k() - crc_len; }
  Crc crc() const { return Crc{crc_len, crc_poly}; }
  void validate() const;  // throws ConfigError on violated invariants
};

// entry i = n-bit reversal of i; an involution
IndexSet bit_reversal_perm(int n);

// x = u * F^{(x)n} over GF(2), natural order, in place (butterfly, O(N log N))
void encode_natural_inplace(BitVec& x);
BitVec encode_natural(const BitVec& u, int n);

// x = u * B_N * F^{(x)n}, the mother-code generator
BitVec encode(const BitVec& u, int n);

// scatter k info bits into the non-frozen inputs / gather them back
BitVec place_info(const CodeSpec& spec, const BitVec& info);
BitVec extract_info(const CodeSpec& spec, const BitVec& u);

// payload -> crc attach -> place -> encode
BitVec encode_payload(const CodeSpec& spec, const BitVec& payload);

// Two-pass systematic encoding on the natural-order kernel: encode, zero the
// frozen positions, encode again. x[info_set] == info holds for info sets
// closed under the binary domination order, which reliability-selected sets
// are; arbitrary subsets (e.g. {0,1,3} at N=4) can break it. The systematic
// path works in natural order because the bit-reversed generator does not
// admit the property at all.
BitVec systematic_encode(const BitVec& info, const CodeSpec& spec);

}  // namespace rcpolar
