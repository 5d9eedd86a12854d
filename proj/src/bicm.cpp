#include "rcpolar/bicm.hpp"

#include <algorithm>
#include <cmath>

namespace rcpolar {

int ColumnAssignment::group_of(uint64_t t) const {
  if (groups == 1) return 0;
  if (alternating) return (int)((t / rows) % (uint64_t)groups);
  auto it = std::upper_bound(boundaries.begin(), boundaries.end(), t);
  return (int)(it - boundaries.begin()) - 1;
}

ColumnAssignment assign_columns(uint32_t L, const RateMatchConfig& cfg, Modulation m,
                                bool alternating) {
  ColumnAssignment asg;
  asg.L = L;
  asg.groups = std::max(1, bits_per_symbol(m) / 2);
  asg.alternating = alternating;
  asg.rows = cfg.rows();
  asg.cols = cfg.cols();
  asg.start_column = cfg.start_column;
  asg.boundaries.resize(asg.groups + 1);
  for (int g = 0; g <= asg.groups; g++)
    asg.boundaries[g] = (uint64_t)g * L / asg.groups;
  asg.group_count.assign(asg.groups, 0);
  if (alternating) {
    for (uint64_t t = 0; t < L; t += asg.rows)
      asg.group_count[asg.group_of(t)] += std::min<uint64_t>(asg.rows, L - t);
  } else {
    for (int g = 0; g < asg.groups; g++)
      asg.group_count[g] = asg.boundaries[g + 1] - asg.boundaries[g];
  }

  // audit view: walk the first pass over the buffer in read order
  for (uint32_t j = 0; j < asg.cols; j++) {
    uint32_t col = (asg.start_column + j) % asg.cols;
    uint64_t lo = (uint64_t)j * asg.rows, hi = lo + asg.rows;
    uint64_t t = lo;
    while (t < hi) {
      int lab;
      uint64_t seg_end;
      if (t >= L) {
        lab = kPunctured;
        seg_end = hi;
      } else {
        lab = asg.group_of(t);
        seg_end = std::min<uint64_t>(hi, L);
        if (!alternating) seg_end = std::min(seg_end, asg.boundaries[lab + 1]);
      }
      asg.columns.push_back(
          {col, lab, double(t - lo) / asg.rows, double(seg_end - lo) / asg.rows});
      t = seg_end;
    }
  }
  return asg;
}

ColumnAssignment harq_shift(const ColumnAssignment& base, const RateMatchConfig& cfg,
                            Modulation m, int r, int t) {
  if (r < 1 || t < 1) throw std::invalid_argument("harq_shift: bad round");
  uint32_t cols = cfg.cols();
  uint64_t shift = (uint64_t)std::llround(double(r - 1) * cols / t);
  RateMatchConfig shifted = cfg;
  shifted.start_column = (uint32_t)((base.start_column + shift) % cols);
  return assign_columns(base.L, shifted, m, base.alternating);
}

namespace {

uint64_t symbol_count(const ColumnAssignment& asg, int b) {
  uint64_t s = (asg.L + b - 1) / (uint64_t)b;
  for (uint64_t c : asg.group_count) s = std::max(s, (c + 1) / 2);
  return s;
}

}  // namespace

BitVec interleave_to_symbols(const BitVec& tx_bits, const ColumnAssignment& asg, Modulation m) {
  if (tx_bits.size() != asg.L)
    throw std::invalid_argument("interleave_to_symbols: length mismatch");
  if (m == Modulation::BPSK) return tx_bits;
  int b = bits_per_symbol(m);
  int G = asg.groups;
  uint64_t S = symbol_count(asg, b);
  std::vector<BitVec> streams(G);
  for (auto& s : streams) s.reserve(2 * S);
  for (uint64_t t = 0; t < asg.L; t++) streams[asg.group_of(t)].push_back(tx_bits[t]);
  for (auto& s : streams) s.resize(2 * S, 0);
  BitVec out(S * b);
  for (uint64_t s = 0; s < S; s++)
    for (int g = 0; g < G; g++)
      for (int j = 0; j < 2; j++) out[s * b + g + (uint64_t)j * G] = streams[g][2 * s + j];
  return out;
}

SoftBuffer deinterleave_llrs(const SoftBuffer& symbol_llrs, const ColumnAssignment& asg,
                             Modulation m) {
  if (m == Modulation::BPSK) {
    if (symbol_llrs.size() != asg.L)
      throw std::invalid_argument("deinterleave_llrs: length mismatch");
    return symbol_llrs;
  }
  int b = bits_per_symbol(m);
  int G = asg.groups;
  uint64_t S = symbol_count(asg, b);
  if (symbol_llrs.size() != S * (uint64_t)b)
    throw std::invalid_argument("deinterleave_llrs: length mismatch");
  std::vector<SoftBuffer> streams(G);
  for (int g = 0; g < G; g++) {
    streams[g].resize(2 * S);
    for (uint64_t s = 0; s < S; s++)
      for (int j = 0; j < 2; j++) streams[g][2 * s + j] = symbol_llrs[s * b + g + (uint64_t)j * G];
  }
  SoftBuffer out(asg.L);
  std::vector<uint64_t> used(G, 0);
  for (uint64_t t = 0; t < asg.L; t++) {
    int g = asg.group_of(t);
    out[t] = streams[g][used[g]++];
  }
  return out;
}

}  // namespace rcpolar
