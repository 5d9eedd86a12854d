#pragma once
#include <complex>

#include "rcpolar/common.hpp"

namespace rcpolar {

using cplx = std::complex<double>;

enum class Modulation : int { BPSK = 2, QPSK = 4, QAM16 = 16, QAM64 = 64 };

int bits_per_symbol(Modulation m);
Modulation modulation_from_order(int M);  // throws ConfigError on M not in {2,4,16,64}

// Square gray constellation, unit average energy. Label bit order is the
// I-axis bits (MSB first) followed by the Q-axis bits; each axis is reflected
// gray coded with the all-zero axis label on the largest positive amplitude.
struct Constellation {
  Modulation mod;
  int bits;                  // log2 M
  std::vector<cplx> points;  // indexed by the integer value of the label bits, MSB first

  static const Constellation& get(Modulation m);
};

// consecutive log2(M)-bit groups -> symbols; length must divide evenly
std::vector<cplx> modulate(const BitVec& bits, Modulation m);

// Per-bit LLRs for one received symbol under gain h and per-dimension noise
// variance sigma2 (BPSK: real noise of variance sigma2). Exact log-sum-exp
// over the constellation; max_log switches to the max-log approximation.
// Positive LLR favors bit 0.
void demap_llr(cplx r, cplx h, double sigma2, Modulation m, double* out, bool max_log = false);
SoftBuffer demap_llr(const std::vector<cplx>& r, const std::vector<cplx>& h, double sigma2,
                     Modulation m, bool max_log = false);

}  // namespace rcpolar
