#pragma once
#include "rcpolar/polar.hpp"
#include "rcpolar/rng.hpp"

namespace rcpolar {

// exact tanh-rule combine in a form that never under/overflows:
// sign(a)sign(b)min(|a|,|b|) + log1p(e^-|a+b|) - log1p(e^-|a-b|)
double f_llr(double a, double b);
double f_minsum(double a, double b);
inline double g_llr(double a, double b, uint8_t u) { return u ? b - a : b + a; }

struct ScOptions {
  bool min_sum = false;
  uint64_t* op_counter = nullptr;  // counts f/g evaluations when set
};

struct DecodeResult {
  BitVec u;        // full length-N input estimate
  BitVec info;     // k bits in info_set order (CRC bits at the tail)
  BitVec payload;  // info minus the CRC tail
  bool crc_pass = false;  // false when the code carries no CRC
  double path_metric = 0.0;
};

DecodeResult sc_decode(const SoftBuffer& soft, const CodeSpec& spec, const ScOptions& opt = {});

// SC with every decision corrected to the truth before proceeding; returns
// per-input error flags. Zero-LLR ties flip a fair coin from rng so the
// estimated error rates stay unbiased.
std::vector<uint8_t> genie_sc(const SoftBuffer& soft, const CodeSpec& spec, const BitVec& truth,
                              Rng& rng);

// CRC-aided successive cancellation list decoding. Path metric is the exact
// negative log posterior sum(log(1+e^-(1-2u)l)), so with a list large enough
// to avoid pruning the best path is the ML codeword. list_size = 1 matches
// sc_decode bit for bit (ties resolve to 0 through the candidate sort).
DecodeResult scl_decode(const SoftBuffer& soft, const CodeSpec& spec, int list_size,
                        bool use_crc, const ScOptions& opt = {});

struct SclPath {
  BitVec u;
  double metric = 0.0;
};
// all surviving paths, best metric first (deterministic order)
std::vector<SclPath> scl_decode_paths(const SoftBuffer& soft, const CodeSpec& spec,
                                      int list_size, const ScOptions& opt = {});

// Systematic companion decoder: soft values index the natural-order codeword
// of systematic_encode, spec.info_set gives the anchor positions. Decodes the
// equivalent bit-reversed code, re-encodes, and reads the info positions; CRC
// candidates are checked on the re-encoded systematic bits.
struct SystematicResult {
  BitVec codeword;  // re-encoded length-N estimate
  BitVec info;      // codeword at the anchor positions
  bool crc_pass = false;
  double path_metric = 0.0;
};
SystematicResult systematic_decode(const SoftBuffer& soft, const CodeSpec& spec,
                                   int list_size = 1, bool use_crc = false,
                                   const ScOptions& opt = {});

}  // namespace rcpolar
