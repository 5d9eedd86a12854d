#pragma once
#include <string>

#include "rcpolar/channel.hpp"
#include "rcpolar/harq.hpp"
#include "rcpolar/sim_config.hpp"

namespace rcpolar {

// plain text, one 0-based index per line, '#' comments
IndexSet read_index_file(const std::string& path);

// everything a sweep needs, resolved from a SimConfig
struct ResolvedCode {
  CodeSpec spec;
  RateMatchConfig rm;
  Modulation mod = Modulation::BPSK;
  ChannelModel channel;  // sigma2 filled per point
  IndexSet design_punct;  // regular pattern the info set was designed against
};
ResolvedCode resolve_code(const SimConfig& cfg);

struct PointResult {
  double snr_db = 0.0;
  uint64_t frames = 0;
  uint64_t payload_bits = 0;
  uint64_t bit_errors = 0;
  uint64_t frame_errors = 0;
  double ber = 0.0, fer = 0.0;
  double ber_se = 0.0, fer_se = 0.0;
};
struct SweepResult {
  std::vector<PointResult> points;
};
SweepResult run_sweep(const SimConfig& cfg);

struct HarqPointResult {
  double snr_db = 0.0;
  uint64_t sessions = 0;
  double throughput = 0.0;
  double avg_tx = 1.0;
  double residual_bler = 0.0;
};
struct HarqSweepResult {
  std::vector<HarqPointResult> points;
  double rate = 0.0;  // k/L per transmission
};
HarqSweepResult run_harq_sweep(const SimConfig& cfg);

// provenance: canonical key=value dump and its FNV-1a hash, embedded in every
// CSV header so outputs are attributable to an exact configuration
std::string canonical_config(const SimConfig& cfg);
uint64_t config_hash(const SimConfig& cfg);

std::string sweep_csv(const SimConfig& cfg, const SweepResult& res);
std::string harq_csv(const SimConfig& cfg, const HarqSweepResult& res);

}  // namespace rcpolar
