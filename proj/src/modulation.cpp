#include "rcpolar/modulation.hpp"

#include <algorithm>
#include <cmath>

namespace rcpolar {

int bits_per_symbol(Modulation m) {
  switch (m) {
    case Modulation::BPSK: return 1;
    case Modulation::QPSK: return 2;
    case Modulation::QAM16: return 4;
    case Modulation::QAM64: return 6;
  }
  throw std::invalid_argument("bits_per_symbol: bad modulation");
}

Modulation modulation_from_order(int M) {
  switch (M) {
    case 2: return Modulation::BPSK;
    case 4: return Modulation::QPSK;
    case 16: return Modulation::QAM16;
    case 64: return Modulation::QAM64;
  }
  throw ConfigError("modulation order must be one of 2, 4, 16, 64");
}

namespace {

// k gray bits (MSB first) -> amplitude level; 0...0 is the top level 2^k-1
double axis_amp(uint32_t gray, int k) {
  uint32_t t = 0;
  for (int b = k - 1; b >= 0; b--) t = (t << 1) | (((gray >> b) & 1u) ^ (t & 1u));
  return double((1u << k) - 1) - 2.0 * double(t);
}

Constellation make(Modulation m) {
  Constellation c;
  c.mod = m;
  c.bits = bits_per_symbol(m);
  int size = 1 << c.bits;
  c.points.resize(size);
  if (m == Modulation::BPSK) {
    c.points[0] = {1.0, 0.0};
    c.points[1] = {-1.0, 0.0};
    return c;
  }
  int k = c.bits / 2;
  double energy = 0.0;
  for (int v = 0; v < size; v++) {
    uint32_t ibits = (uint32_t)v >> k;
    uint32_t qbits = (uint32_t)v & ((1u << k) - 1);
    c.points[v] = {axis_amp(ibits, k), axis_amp(qbits, k)};
    energy += std::norm(c.points[v]);
  }
  double scale = 1.0 / std::sqrt(energy / size);
  for (auto& p : c.points) p *= scale;
  return c;
}

}  // namespace

const Constellation& Constellation::get(Modulation m) {
  static const Constellation bpsk = make(Modulation::BPSK);
  static const Constellation qpsk = make(Modulation::QPSK);
  static const Constellation qam16 = make(Modulation::QAM16);
  static const Constellation qam64 = make(Modulation::QAM64);
  switch (m) {
    case Modulation::BPSK: return bpsk;
    case Modulation::QPSK: return qpsk;
    case Modulation::QAM16: return qam16;
    case Modulation::QAM64: return qam64;
  }
  throw std::invalid_argument("Constellation::get: bad modulation");
}

std::vector<cplx> modulate(const BitVec& bits, Modulation m) {
  const Constellation& c = Constellation::get(m);
  if (bits.size() % c.bits != 0)
    throw std::invalid_argument("modulate: bit count not divisible by log2(M)");
  std::vector<cplx> out(bits.size() / c.bits);
  for (size_t s = 0; s < out.size(); s++) {
    uint32_t v = 0;
    for (int b = 0; b < c.bits; b++) v = (v << 1) | bits[s * c.bits + b];
    out[s] = c.points[v];
  }
  return out;
}

void demap_llr(cplx r, cplx h, double sigma2, Modulation m, double* out, bool max_log) {
  if (m == Modulation::BPSK) {
    out[0] = 2.0 * r.real() * h.real() / sigma2;
    return;
  }
  const Constellation& c = Constellation::get(m);
  int size = 1 << c.bits;
  double metric[64];
  for (int v = 0; v < size; v++)
    metric[v] = -std::norm(r - h * c.points[v]) / (2.0 * sigma2);
  for (int b = 0; b < c.bits; b++) {
    uint32_t bitmask = 1u << (c.bits - 1 - b);
    // max per hypothesis, subtracted before summing so the result stays
    // finite however large the exponents get
    double m0 = -HUGE_VAL, m1 = -HUGE_VAL;
    for (int v = 0; v < size; v++) {
      if ((uint32_t)v & bitmask)
        m1 = std::max(m1, metric[v]);
      else
        m0 = std::max(m0, metric[v]);
    }
    if (max_log) {
      out[b] = m0 - m1;
      continue;
    }
    double s0 = 0.0, s1 = 0.0;
    for (int v = 0; v < size; v++) {
      if ((uint32_t)v & bitmask)
        s1 += std::exp(metric[v] - m1);
      else
        s0 += std::exp(metric[v] - m0);
    }
    out[b] = (m0 + std::log(s0)) - (m1 + std::log(s1));
  }
}

SoftBuffer demap_llr(const std::vector<cplx>& r, const std::vector<cplx>& h, double sigma2,
                     Modulation m, bool max_log) {
  if (r.size() != h.size()) throw std::invalid_argument("demap_llr: r/h length mismatch");
  int bps = bits_per_symbol(m);
  SoftBuffer out(r.size() * bps);
  for (size_t s = 0; s < r.size(); s++) demap_llr(r[s], h[s], sigma2, m, &out[s * bps], max_log);
  return out;
}

}  // namespace rcpolar
