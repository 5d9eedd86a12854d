#pragma once
#include <functional>

#include "rcpolar/bicm.hpp"
#include "rcpolar/decode.hpp"

namespace rcpolar {

enum class HarqScheme { CC, IR };

// 0-based start-column offset of the r-th transmission (r is 1-based):
// CC retransmits from the same column, IR advances by 2^p/t per round
// (rounded when t does not divide 2^p).
uint32_t harq_start_column(HarqScheme scheme, int r, int t, int p);

struct HarqSession {
  HarqScheme scheme = HarqScheme::CC;
  int t = 1;  // max transmissions
  RateMatchConfig rm;  // per-round L and the round-1 start column
  Modulation mod = Modulation::BPSK;
  bool alternating = false;
  SoftBuffer buffer;  // accumulated codeword LLRs
  int r = 0;          // completed transmissions
  bool done = false;
  int success_round = 0;  // 0 = never succeeded
};

HarqSession make_session(const RateMatchConfig& rm, Modulation mod, HarqScheme scheme, int t);

struct RoundPlan {
  int r = 1;  // 1-based round this plan is for
  uint32_t start_column = 0;
  ColumnAssignment assignment;
};

// plan for the next (r+1-th completed) transmission; throws when exhausted
RoundPlan next_redundancy(const HarqSession& s);

// accumulate one round of de-interleaved LLRs (length L, in select order)
void combine(HarqSession& s, const SoftBuffer& llrs);

struct HarqOutcome {
  bool success = false;
  int rounds = 0;
  DecodeResult result;
};

// Drives a whole session: plan round, obtain its LLRs from the caller,
// combine, decode, stop on ACK. ACK is the decoder CRC when the code has
// one, otherwise a payload comparison against truth (test plumbing).
HarqOutcome run_session(HarqSession& s, const CodeSpec& spec, int list_size, bool use_crc,
                        const std::function<SoftBuffer(const RoundPlan&)>& round_llrs,
                        const BitVec* truth_payload = nullptr);

// normalized throughput R*log2(M)*(1-bler)/t_bar
double throughput(double rate, Modulation mod, double bler, double t_bar);

}  // namespace rcpolar
