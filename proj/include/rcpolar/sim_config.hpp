#pragma once
#include <string>

#include "rcpolar/common.hpp"

namespace rcpolar {

// Plain-text config: [section] headers, key = value lines, '#'/';' comments.
// Every key can also be forced from the command line with
// --set section.key=value, which wins over the file.
struct SimConfig {
  // [code]
  int n = 10;
  int p = 5;
  int q = 5;
  int k = 512;
  int crc_len = 0;
  double design_snr_db = 3.5;  // Es/N0 with N0 = 2 sigma^2 (see README)
  std::string info_set_file;
  std::string puncture_order_file;

  // [channel]
  std::string channel = "awgn";  // awgn | fading
  int modulation = 2;            // 2 | 4 | 16 | 64
  std::vector<double> snr_db = {0.0};
  bool noiseless = false;
  bool max_log = false;  // max-log demapping instead of exact LSE

  // [rate_match]
  uint32_t L = 0;  // 0 means N
  uint32_t start_column = 0;
  bool alternating = false;

  // [decoder]
  std::string decoder = "sc";  // sc | scl
  int list_size = 1;
  bool use_crc = false;
  bool min_sum = false;

  // [harq]
  std::string harq_scheme = "cc";  // cc | ir
  int harq_t = 1;
  uint64_t harq_sessions = 1000;

  // [stop]
  uint64_t min_frame_errors = 100;
  uint64_t max_frames = 1000000;

  // [run]
  uint64_t seed = 1;
  int threads = 1;
  uint64_t batch = 256;  // stopping rule is checked on batch boundaries only

  void validate() const;  // throws ConfigError
};

SimConfig parse_config_text(const std::string& text, const std::string& name = "<config>");
SimConfig parse_config_file(const std::string& path);

// "section.key=value"; throws ConfigError on unknown keys or bad values
void apply_override(SimConfig& cfg, const std::string& assignment);

}  // namespace rcpolar
