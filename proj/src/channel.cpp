#include "rcpolar/channel.hpp"

#include <cmath>

namespace rcpolar {

double snr_db_to_sigma2(double snr_db, Modulation m) {
  double lin = std::pow(10.0, -snr_db / 10.0);
  return m == Modulation::BPSK ? lin : lin / 2.0;
}

double sigma2_to_snr_db(double sigma2, Modulation m) {
  double lin = m == Modulation::BPSK ? sigma2 : 2.0 * sigma2;
  return -10.0 * std::log10(lin);
}

void ChannelModel::validate() const {
  if (kind == Kind::BEC) {
    if (eps < 0.0 || eps > 1.0) throw ConfigError("channel: BEC erasure rate outside [0,1]");
    if (mod != Modulation::BPSK) throw ConfigError("channel: BEC supports BPSK only");
  } else if (!(sigma2 > 0.0) && !noiseless) {
    throw ConfigError("channel: sigma2 must be positive");
  }
}

TxObservation transmit(const std::vector<cplx>& symbols, const ChannelModel& ch, Rng& rng) {
  if (ch.kind == ChannelModel::Kind::BEC)
    throw std::invalid_argument("transmit: BEC has no symbol channel");
  TxObservation obs;
  obs.r.resize(symbols.size());
  obs.h.assign(symbols.size(), cplx{1.0, 0.0});
  const bool fading = ch.kind == ChannelModel::Kind::Fading;
  const bool bpsk = ch.mod == Modulation::BPSK;
  const double sd = std::sqrt(ch.sigma2);
  for (size_t i = 0; i < symbols.size(); i++) {
    cplx h{1.0, 0.0};
    if (fading) {
      cplx a{rng.gauss() * M_SQRT1_2, rng.gauss() * M_SQRT1_2};
      h = bpsk ? cplx{std::abs(a), 0.0} : a;
    }
    obs.h[i] = h;
    cplx y = h * symbols[i];
    if (!ch.noiseless) {
      if (bpsk)
        y += cplx{sd * rng.gauss(), 0.0};
      else
        y += cplx{sd * rng.gauss(), sd * rng.gauss()};
    }
    obs.r[i] = y;
  }
  return obs;
}

std::vector<uint8_t> bec_erasures(size_t nbits, double eps, Rng& rng) {
  std::vector<uint8_t> erased(nbits);
  for (size_t i = 0; i < nbits; i++) erased[i] = rng.uniform() < eps ? 1 : 0;
  return erased;
}

SoftBuffer bec_llrs(const BitVec& bits, const std::vector<uint8_t>& erased) {
  if (bits.size() != erased.size()) throw std::invalid_argument("bec_llrs: length mismatch");
  SoftBuffer llr(bits.size());
  for (size_t i = 0; i < bits.size(); i++)
    llr[i] = erased[i] ? 0.0 : (bits[i] ? -kBecLlr : kBecLlr);
  return llr;
}

}  // namespace rcpolar
