#include "rcpolar/harq.hpp"

#include <cmath>

namespace rcpolar {

uint32_t harq_start_column(HarqScheme scheme, int r, int t, int p) {
  if (r < 1 || t < 1 || r > t) throw std::invalid_argument("harq_start_column: bad round");
  if (scheme == HarqScheme::CC) return 0;
  uint32_t cols = 1u << p;
  return (uint32_t)((uint64_t)std::llround(double(r - 1) * cols / t) % cols);
}

HarqSession make_session(const RateMatchConfig& rm, Modulation mod, HarqScheme scheme, int t) {
  rm.validate();
  if (t < 1) throw ConfigError("harq: t must be >= 1");
  HarqSession s;
  s.scheme = scheme;
  s.t = t;
  s.rm = rm;
  s.mod = mod;
  s.buffer.assign(rm.N(), 0.0);
  return s;
}

RoundPlan next_redundancy(const HarqSession& s) {
  if (s.r >= s.t) throw std::runtime_error("harq: session exhausted");
  RoundPlan plan;
  plan.r = s.r + 1;
  plan.start_column =
      (s.rm.start_column + harq_start_column(s.scheme, plan.r, s.t, s.rm.p)) % s.rm.cols();
  RateMatchConfig round_cfg = s.rm;
  round_cfg.start_column = plan.start_column;
  plan.assignment = assign_columns(s.rm.L, round_cfg, s.mod, s.alternating);
  return plan;
}

void combine(HarqSession& s, const SoftBuffer& llrs) {
  if (llrs.size() != s.rm.L) throw std::invalid_argument("harq combine: LLR count != L");
  RoundPlan plan = next_redundancy(s);
  derate_accumulate(s.buffer, llrs, s.rm, plan.start_column);
  s.r = plan.r;
}

HarqOutcome run_session(HarqSession& s, const CodeSpec& spec, int list_size, bool use_crc,
                        const std::function<SoftBuffer(const RoundPlan&)>& round_llrs,
                        const BitVec* truth_payload) {
  HarqOutcome out;
  while (s.r < s.t && !s.done) {
    RoundPlan plan = next_redundancy(s);
    combine(s, round_llrs(plan));
    DecodeResult res = list_size > 1 ? scl_decode(s.buffer, spec, list_size, use_crc)
                                     : sc_decode(s.buffer, spec);
    bool ack;
    if (spec.crc_len > 0 && use_crc)
      ack = res.crc_pass;
    else if (truth_payload)
      ack = res.payload == *truth_payload;
    else
      ack = res.crc_pass;
    out.result = std::move(res);
    out.rounds = s.r;
    if (ack) {
      s.done = true;
      s.success_round = s.r;
      out.success = true;
    }
  }
  s.done = true;
  return out;
}

double throughput(double rate, Modulation mod, double bler, double t_bar) {
  if (bler < 0.0 || bler > 1.0) throw std::invalid_argument("throughput: bler outside [0,1]");
  if (t_bar < 1.0) throw std::invalid_argument("throughput: t_bar < 1");
  return rate * bits_per_symbol(mod) * (1.0 - bler) / t_bar;
}

}  // namespace rcpolar
