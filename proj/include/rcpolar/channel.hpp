#pragma once
#include "rcpolar/modulation.hpp"
#include "rcpolar/rng.hpp"

namespace rcpolar {

// SNR convention follows the modulation: 10log10(1/sigma2) for BPSK (real
// noise, variance sigma2), 10log10(1/(2 sigma2)) for QAM (complex noise,
// sigma2 per dimension).
double snr_db_to_sigma2(double snr_db, Modulation m);
double sigma2_to_snr_db(double sigma2, Modulation m);

struct ChannelModel {
  enum class Kind { BEC, AWGN, Fading };
  Kind kind = Kind::AWGN;
  double eps = 0.0;          // BEC
  double sigma2 = 1.0;       // AWGN / Fading
  Modulation mod = Modulation::BPSK;
  bool noiseless = false;    // diagnostic override: r = h*s exactly

  void validate() const;
};

struct TxObservation {
  std::vector<cplx> r;
  std::vector<cplx> h;  // fading coefficient per symbol (1 for AWGN)
};

// Fading draws a fresh CN(0,1) coefficient per symbol; BPSK keeps the channel
// real (gain |a|, real noise), QAM is fully complex.
TxObservation transmit(const std::vector<cplx>& symbols, const ChannelModel& ch, Rng& rng);

inline constexpr double kBecLlr = 100.0;  // finite stand-in for a known bit

std::vector<uint8_t> bec_erasures(size_t nbits, double eps, Rng& rng);
SoftBuffer bec_llrs(const BitVec& bits, const std::vector<uint8_t>& erased);

}  // namespace rcpolar
