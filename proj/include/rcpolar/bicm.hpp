#pragma once
#include "rcpolar/modulation.hpp"
#include "rcpolar/rate_match.hpp"

namespace rcpolar {

// A 2^b-QAM symbol decomposes into log2(M)/2 constituent binary channels of
// unequal reliability (the two gray bits per axis). Transmitted bits are
// split into that many groups, most reliable subchannel first, so whole
// buffer columns see a single channel type wherever the counts allow.
struct ColumnLabel {
  uint32_t column = 0;  // physical buffer column
  int label = 0;        // 0-based subchannel group, kPunctured for untransmitted
  double frac_start = 0.0;  // fraction of the column's rows this label covers
  double frac_end = 1.0;
};

inline constexpr int kPunctured = -1;

struct ColumnAssignment {
  uint32_t L = 0;
  int groups = 1;
  bool alternating = false;
  uint32_t rows = 1;
  uint32_t cols = 1;
  uint32_t start_column = 0;
  std::vector<uint64_t> boundaries;   // group g covers tx bits [b[g], b[g+1]) when contiguous
  std::vector<uint64_t> group_count;  // transmitted bits per group
  std::vector<ColumnLabel> columns;   // audit view over all 2^p columns

  int group_of(uint64_t t) const;  // subchannel group of transmit position t
};

ColumnAssignment assign_columns(uint32_t L, const RateMatchConfig& cfg, Modulation m,
                                bool alternating = false);

// IR round r reads (and therefore labels) starting (r-1)*2^p/t columns later
ColumnAssignment harq_shift(const ColumnAssignment& base, const RateMatchConfig& cfg,
                            Modulation m, int r, int t);

// Group streams feed the symbol bit positions of matching reliability: symbol
// s takes stream_g[2s] and stream_g[2s+1] at positions g and g+G. Streams are
// zero padded up to whole symbols. BPSK passes through unchanged.
BitVec interleave_to_symbols(const BitVec& tx_bits, const ColumnAssignment& asg, Modulation m);
SoftBuffer deinterleave_llrs(const SoftBuffer& symbol_llrs, const ColumnAssignment& asg,
                             Modulation m);

}  // namespace rcpolar
