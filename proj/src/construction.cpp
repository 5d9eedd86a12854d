#include "rcpolar/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rcpolar/channel.hpp"
#include "rcpolar/decode.hpp"
#include "rcpolar/phi.hpp"

namespace rcpolar {

namespace {

// adjacent pairs feed the two children: (2i, 2i+1) -> left gets the minus
// (degraded) transform, right gets the plus. Leaf order then matches the
// decoder's input indexing.
template <typename Minus, typename Plus>
void pair_tree(std::vector<double>& vals, Minus minus, Plus plus) {
  size_t n = vals.size();
  if (n == 1) return;
  size_t h = n / 2;
  std::vector<double> lo(h), hi(h);
  for (size_t i = 0; i < h; i++) {
    lo[i] = minus(vals[2 * i], vals[2 * i + 1]);
    hi[i] = plus(vals[2 * i], vals[2 * i + 1]);
  }
  pair_tree(lo, minus, plus);
  pair_tree(hi, minus, plus);
  std::copy(lo.begin(), lo.end(), vals.begin());
  std::copy(hi.begin(), hi.end(), vals.begin() + h);
}

void check_punct(int n, const IndexSet& punct) {
  for (uint32_t i : punct)
    if (i >= (1u << n)) throw std::invalid_argument("puncture index >= N");
}

}  // namespace

BecChannels bec_bit_channels(int n, double eps, const IndexSet& punct) {
  if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("bec: eps outside [0,1]");
  check_punct(n, punct);
  size_t N = 1u << n;
  BecChannels ch;
  ch.z.assign(N, eps);
  ch.cap.assign(N, 1.0 - eps);
  for (uint32_t i : punct) {
    ch.z[i] = 1.0;
    ch.cap[i] = 0.0;
  }
  auto z_minus = [](double a, double b) {
    if (a == 1.0 || b == 1.0) return 1.0;  // keep punctured chains exactly 1
    return std::min(1.0, a + b - a * b);
  };
  auto z_plus = [](double a, double b) { return a * b; };
  auto c_minus = [](double a, double b) { return a * b; };  // 1-z side: exact zeros
  auto c_plus = [](double a, double b) { return std::min(1.0, a + b - a * b); };
  pair_tree(ch.z, z_minus, z_plus);
  pair_tree(ch.cap, c_minus, c_plus);
  return ch;
}

double ga_minus(double a, double b) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  double la = log_phi(a), lb = log_phi(b);
  double hi = std::max(la, lb), lo = std::min(la, lb);
  double lse = hi + std::log1p(std::exp(lo - hi));  // log(pa + pb)
  double lt = lse + std::log1p(-std::exp(la + lb - lse));
  if (!(lt < 0.0)) return 0.0;  // both children effectively erased
  return phi_inv_log(lt);
}

double ga_plus(double a, double b) { return a + b; }

std::vector<double> ga_construct_llr(int n, double llr_mean, const IndexSet& punct) {
  if (llr_mean < 0.0) throw std::invalid_argument("ga: negative llr mean");
  check_punct(n, punct);
  std::vector<double> mu(1u << n, llr_mean);
  for (uint32_t i : punct) mu[i] = 0.0;
  pair_tree(mu, ga_minus, ga_plus);
  return mu;
}

double design_snr_to_llr_mean(double design_snr_db) {
  return 4.0 * std::pow(10.0, design_snr_db / 10.0);
}

Reliabilities ga_construct(int n, double design_snr_db, const IndexSet& punct) {
  return {Reliabilities::Kind::LlrMean,
          ga_construct_llr(n, design_snr_to_llr_mean(design_snr_db), punct)};
}

double bit_error_prob(double llr_mean) {
  if (llr_mean < 0.0) throw std::invalid_argument("bit_error_prob: negative mean");
  return 0.5 * std::erfc(std::sqrt(llr_mean) / 2.0);  // Q(sqrt(mu/2))
}

std::vector<double> error_probs(const Reliabilities& rel) {
  std::vector<double> p(rel.v.size());
  switch (rel.kind) {
    case Reliabilities::Kind::Z:
      for (size_t i = 0; i < p.size(); i++) p[i] = 0.5 * rel.v[i];
      break;
    case Reliabilities::Kind::LlrMean:
      for (size_t i = 0; i < p.size(); i++) p[i] = bit_error_prob(rel.v[i]);
      break;
    case Reliabilities::Kind::ErrorProb:
      p = rel.v;
      break;
  }
  return p;
}

double union_bound(const IndexSet& info_set, const std::vector<double>& probs) {
  double s = 0.0;
  for (uint32_t i : info_set) {
    if (i >= probs.size()) throw std::invalid_argument("union_bound: index out of range");
    s += probs[i];
  }
  return s;
}

IndexSet select_info_set(const Reliabilities& rel, int k) {
  int N = (int)rel.v.size();
  if (k > N) throw std::invalid_argument("select_info_set: k > N");
  std::vector<double> key = error_probs(rel);
  IndexSet idx(N);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
    if (key[a] != key[b]) return key[a] < key[b];
    return a < b;
  });
  IndexSet out(idx.begin(), idx.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

double good_set_threshold(int n, double beta) {
  if (beta <= 0.0 || beta >= 0.5) throw std::invalid_argument("good set: beta outside (0,1/2)");
  return std::exp2(-std::pow(2.0, n * beta)) / std::ldexp(1.0, n);
}

double good_set_fraction(const Reliabilities& rel, int n, const GoodSetParams& params) {
  if (rel.kind != Reliabilities::Kind::Z)
    throw std::invalid_argument("good_set_fraction: needs Z-kind reliabilities");
  if (rel.v.size() != (size_t)1 << n)
    throw std::invalid_argument("good_set_fraction: length mismatch");
  double thr = good_set_threshold(n, params.beta);
  size_t cnt = 0;
  for (double z : rel.v)
    if (z < thr) cnt++;
  return double(cnt) / double(rel.v.size());
}

GenieEstimate genie_mc_construct(const CodeSpec& spec, const GenieChannel& ch,
                                 const IndexSet& punct, uint64_t trials, uint64_t seed,
                                 bool random_payload) {
  if (trials < 1) throw std::invalid_argument("genie_mc_construct: trials < 1");
  spec.validate();
  check_punct(spec.n, punct);
  size_t N = spec.N();
  std::vector<uint8_t> punct_mask(N, 0);
  for (uint32_t i : punct) punct_mask[i] = 1;
  std::vector<uint64_t> errs(N, 0);

  for (uint64_t t = 0; t < trials; t++) {
    Rng rng = Rng::stream(seed, t);
    BitVec u(N, 0);
    if (random_payload)
      for (uint32_t i : spec.info_set) u[i] = rng.bit();
    BitVec x = encode(u, spec.n);
    SoftBuffer llr(N, 0.0);
    if (ch.bec) {
      for (size_t i = 0; i < N; i++) {
        if (punct_mask[i]) continue;
        if (!ch.noiseless && rng.uniform() < ch.eps) continue;  // erased -> 0
        llr[i] = x[i] ? -100.0 : 100.0;
      }
    } else {
      for (size_t i = 0; i < N; i++) {
        double s = x[i] ? -1.0 : 1.0;
        double y = ch.noiseless ? s : s + std::sqrt(ch.sigma2) * rng.gauss();
        if (!punct_mask[i]) llr[i] = 2.0 * y / ch.sigma2;
      }
    }
    std::vector<uint8_t> flags = genie_sc(llr, spec, u, rng);
    for (size_t i = 0; i < N; i++) errs[i] += flags[i];
  }

  GenieEstimate est;
  est.trials = trials;
  est.err_rate.resize(N);
  est.std_err.resize(N);
  for (size_t i = 0; i < N; i++) {
    double p = double(errs[i]) / double(trials);
    est.err_rate[i] = p;
    est.std_err[i] = std::sqrt(std::max(p * (1.0 - p), 0.0) / double(trials));
  }
  return est;
}

}  // namespace rcpolar
