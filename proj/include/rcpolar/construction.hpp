#pragma once
#include "rcpolar/common.hpp"
#include "rcpolar/polar.hpp"
#include "rcpolar/rng.hpp"

namespace rcpolar {

struct Reliabilities {
  enum class Kind { Z, LlrMean, ErrorProb };
  Kind kind = Kind::Z;
  std::vector<double> v;  // one entry per input index
};

// Exact BEC bit-channel recursion with distinct children (puncturing breaks
// the one-value-per-level symmetry). Z is the Bhattacharyya parameter; cap
// carries 1-Z through its own recursion so that zero capacities stay exact
// zeros in floating point (Lemma 1 counts them exactly).
struct BecChannels {
  std::vector<double> z;
  std::vector<double> cap;
};
BecChannels bec_bit_channels(int n, double eps, const IndexSet& punct);

// Gaussian approximation over the same tree. Inputs are per-output LLR means,
// 0 for punctured outputs ("variance set to infinity"). Log-domain phi keeps
// the minus transform stable at large means.
double ga_minus(double a, double b);
double ga_plus(double a, double b);
std::vector<double> ga_construct_llr(int n, double llr_mean, const IndexSet& punct);

// design_snr_db is per-symbol Es/N0 with N0 = 2 sigma^2, so the initial mean
// is 4*10^(snr/10). (The BPSK simulation convention 10log10(1/sigma^2) sits
// 3.01 dB above this; use ga_construct_llr with 2/sigma^2 to match it.)
double design_snr_to_llr_mean(double design_snr_db);
Reliabilities ga_construct(int n, double design_snr_db, const IndexSet& punct);

double bit_error_prob(double llr_mean);  // Q(sqrt(llr_mean/2))

// reliability -> per-bit error probability (Z-kind maps to Z/2: erased and
// the tie coin falls wrong)
std::vector<double> error_probs(const Reliabilities& rel);

double union_bound(const IndexSet& info_set, const std::vector<double>& probs);

// k most reliable inputs, ties to the lower index; returned sorted
IndexSet select_info_set(const Reliabilities& rel, int k);

struct GoodSetParams {
  double beta = 0.3;  // in (0, 1/2)
};
double good_set_threshold(int n, double beta);  // 2^(-N^beta)/N
double good_set_fraction(const Reliabilities& rel, int n, const GoodSetParams& params);

// Monte-Carlo genie-aided SC construction. Channel is BPSK over AWGN(sigma2)
// or BEC(eps); punctured outputs get LLR 0 at the decoder.
struct GenieChannel {
  bool bec = false;
  double eps = 0.0;
  double sigma2 = 1.0;
  bool noiseless = false;
};
struct GenieEstimate {
  std::vector<double> err_rate;  // per input index
  std::vector<double> std_err;
  uint64_t trials = 0;
};
GenieEstimate genie_mc_construct(const CodeSpec& spec, const GenieChannel& ch,
                                 const IndexSet& punct, uint64_t trials, uint64_t seed,
                                 bool random_payload = true);

}  // namespace rcpolar
