#include "rcpolar/rate_match.hpp"

namespace rcpolar {

void RateMatchConfig::validate() const {
  if (p < 0 || q < 0 || p + q > 26) throw ConfigError("rate_match: bad p/q");
  if (L < 1) throw ConfigError("rate_match: L must be >= 1");
  if (start_column >= cols()) throw ConfigError("rate_match: start_column out of range");
  if (order.base_n != p) throw ConfigError("rate_match: order base_n != p");
  if (order.order.size() != cols()) throw ConfigError("rate_match: order length != 2^p");
  std::vector<uint8_t> seen(cols(), 0);
  for (uint32_t i : order.order) {
    if (i >= cols() || seen[i]) throw ConfigError("rate_match: order is not a permutation");
    seen[i] = 1;
  }
}

CircularBuffer build_buffer(const BitVec& x, const RateMatchConfig& cfg) {
  if (x.size() != cfg.N()) throw std::invalid_argument("build_buffer: codeword length != 2^n");
  CircularBuffer buf;
  buf.rows = cfg.rows();
  buf.cols = cfg.cols();
  buf.col_base.resize(buf.cols);
  buf.data.resize(x.size());
  for (uint32_t c = 0; c < buf.cols; c++) {
    uint32_t base = cfg.order.order[buf.cols - 1 - c];
    buf.col_base[c] = base;
    for (uint32_t r = 0; r < buf.rows; r++) buf.data[c * buf.rows + r] = x[r * buf.cols + base];
  }
  return buf;
}

uint32_t rm_index(const RateMatchConfig& cfg, uint32_t start_column, uint64_t t) {
  uint64_t N = cfg.N();
  uint64_t g = ((uint64_t)start_column * cfg.rows() + t) % N;
  uint32_t c = (uint32_t)(g / cfg.rows());
  uint32_t r = (uint32_t)(g % cfg.rows());
  return r * cfg.cols() + cfg.order.order[cfg.cols() - 1 - c];
}

BitVec select_bits(const CircularBuffer& buf, uint32_t L, uint32_t start_column) {
  uint64_t N = (uint64_t)buf.rows * buf.cols;
  BitVec out(L);
  for (uint64_t t = 0; t < L; t++) {
    uint64_t g = ((uint64_t)start_column * buf.rows + t) % N;
    out[t] = buf.at((uint32_t)(g % buf.rows), (uint32_t)(g / buf.rows));
  }
  return out;
}

BitVec select_bits(const BitVec& x, const RateMatchConfig& cfg) {
  return select_bits(build_buffer(x, cfg), cfg.L, cfg.start_column);
}

SoftBuffer derate_match(const SoftBuffer& llrs, const RateMatchConfig& cfg) {
  if (llrs.size() != cfg.L) throw std::invalid_argument("derate_match: LLR count != L");
  SoftBuffer acc(cfg.N(), 0.0);
  derate_accumulate(acc, llrs, cfg, cfg.start_column);
  return acc;
}

void derate_accumulate(SoftBuffer& acc, const SoftBuffer& llrs, const RateMatchConfig& cfg,
                       uint32_t start_column) {
  if (acc.size() != cfg.N()) throw std::invalid_argument("derate_accumulate: buffer length != 2^n");
  for (uint64_t t = 0; t < llrs.size(); t++) acc[rm_index(cfg, start_column, t)] += llrs[t];
}

}  // namespace rcpolar
