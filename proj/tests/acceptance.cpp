// Acceptance gate: every release-blocking behavior as one pass/fail line.
// Run all criteria or a single one with --only K (ctest registers each K).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rcpolar/channel.hpp"
#include "rcpolar/construction.hpp"
#include "rcpolar/decode.hpp"
#include "rcpolar/polar.hpp"
#include "rcpolar/puncturing.hpp"
#include "rcpolar/rng.hpp"
#include "rcpolar/sim.hpp"

using namespace rcpolar;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

PpaCriterion ga_crit(double snr_db) {
  PpaCriterion c;
  c.kind = PpaCriterion::Kind::GA;
  c.design_snr_db = snr_db;
  return c;
}

SoftBuffer bpsk_llrs(const BitVec& x, double sigma2, Rng& rng) {
  SoftBuffer soft(x.size());
  for (size_t i = 0; i < x.size(); i++) {
    double y = (x[i] ? -1.0 : 1.0) + std::sqrt(sigma2) * rng.gauss();
    soft[i] = 2.0 * y / sigma2;
  }
  return soft;
}

// ---- 1. golden puncture sequence -----------------------------------------
// The 32-entry nested order for the (32, 11) base code, GA at 3.5 dB. First
// ten entries must match exactly; any later difference must be a criterion
// tie within kTieRel at that step.
const IndexSet kGoldenOrder = {0,  16, 8,  24, 2,  20, 26, 12, 10, 18, 4,
                               22, 25, 6,  13, 14, 1,  17, 28, 3,  5,  9,
                               29, 11, 19, 7,  21, 15, 23, 27, 30, 31};
constexpr double kTieRel = 1e-6;

Outcome crit1() {
  IndexSet info = select_info_set(ga_construct(5, 3.5, {}), 11);
  PpaDiagnostics diag;
  diag.keep_scores = true;
  PunctureOrder po = ppa(5, info, ga_crit(3.5), &diag);

  int exact = 0;
  int ties = 0;
  for (size_t m = 0; m < 32; m++) {
    if (po.order[m] == kGoldenOrder[m]) {
      exact++;
      continue;
    }
    if (m < 10)
      return {false, "entry " + std::to_string(m) + " is " + std::to_string(po.order[m]) +
                         ", reference says " + std::to_string(kGoldenOrder[m])};
    double ours = diag.scores[m][po.order[m]];
    double ref = diag.scores[m][kGoldenOrder[m]];
    if (ref < 0.0)
      return {false, "patterns diverged at step " + std::to_string(m)};
    double rel = (ref - ours) / std::max(std::abs(ours), 1e-300);
    if (std::abs(rel) > kTieRel)
      return {false, "step " + std::to_string(m) + " differs beyond tie tolerance, rel " +
                         fmt(rel)};
    ties++;
  }
  return {true, "exact " + std::to_string(exact) + "/32, ties " + std::to_string(ties)};
}

// ---- 2. greedy order vs exhaustive optimum --------------------------------
constexpr double kNearOptimalFactor = 1.25;

Outcome crit2() {
  IndexSet info = select_info_set(ga_construct(5, 3.0, {}), 16);
  PpaCriterion crit = ga_crit(3.0);
  PunctureOrder po = ppa(5, info, crit);
  std::ostringstream os;
  for (int m : {4, 6}) {
    IndexSet prefix(po.order.begin(), po.order.begin() + m);
    double greedy = criterion_bound(5, info, crit, prefix);
    ExhaustiveResult ex = exhaustive_search(5, info, crit, m);
    double ratio = greedy / ex.bound;
    os << "m=" << m << " ratio " << fmt(ratio) << " (" << ex.evaluated << " patterns)  ";
    if (ratio > kNearOptimalFactor || ratio < 1.0 - 1e-9)
      return {false, os.str() + "outside [1, " + fmt(kNearOptimalFactor) + "]"};
  }
  return {true, os.str()};
}

// ---- 3. punctured BEC channels lose exactly m capacities -------------------
Outcome crit3() {
  Rng rng(31);
  uint64_t cases = 0;
  for (double eps : {0.2, 0.5}) {
    for (int n : {3, 4, 5}) {
      const uint32_t N = 1u << n;
      for (int t = 0; t < 200; t++) {
        uint32_t m = rng.below(N + 1);
        IndexSet all(N);
        for (uint32_t i = 0; i < N; i++) all[i] = i;
        for (uint32_t i = 0; i < m; i++) std::swap(all[i], all[i + rng.below(N - i)]);
        IndexSet punct(all.begin(), all.begin() + m);
        BecChannels ch = bec_bit_channels(n, eps, punct);
        uint32_t zeros = 0;
        for (double c : ch.cap) zeros += (c == 0.0);
        if (zeros != m)
          return {false, "N=" + std::to_string(N) + " eps=" + fmt(eps) + " |pattern|=" +
                             std::to_string(m) + " but " + std::to_string(zeros) +
                             " dead channels"};
        cases++;
      }
    }
  }
  return {true, std::to_string(cases) + " random patterns, count exact in every case"};
}

// ---- 4. BEC sum capacity under puncturing ----------------------------------
constexpr double kSumCapTol = 1e-9;

Outcome crit4() {
  Rng rng(41);
  const uint32_t N = 32;
  double worst = 0.0;
  for (double eps : {0.2, 0.5}) {
    for (uint32_t m = 0; m <= N; m++) {
      for (int rep = 0; rep < 3; rep++) {
        IndexSet all(N);
        for (uint32_t i = 0; i < N; i++) all[i] = i;
        if (rep > 0)
          for (uint32_t i = 0; i < m; i++) std::swap(all[i], all[i + rng.below(N - i)]);
        IndexSet punct(all.begin(), all.begin() + m);
        BecChannels ch = bec_bit_channels(5, eps, punct);
        double sum = 0.0;
        for (double c : ch.cap) sum += c;
        double expect = double(N - m) * (1.0 - eps);
        worst = std::max(worst, std::abs(sum - expect));
        if (std::abs(sum - expect) > kSumCapTol)
          return {false, "m=" + std::to_string(m) + " eps=" + fmt(eps) + " sum " + fmt(sum) +
                             " expected " + fmt(expect)};
      }
    }
  }
  return {true, "all m in [0,32], eps {0.2,0.5}; worst gap " + fmt(worst)};
}

// ---- 5. good-set fraction trend under regular puncturing -------------------
// Target fraction is (1 - 8/32) * 0.5 = 0.375 in the infinite-length limit.
constexpr double kFractionTol = 0.05;
constexpr double kFractionTarget = 0.375;

Outcome crit5() {
  PunctureOrder po;
  po.base_n = 5;
  po.order.resize(32);
  for (uint32_t i = 0; i < 32; i++) po.order[i] = i;
  GoodSetParams params;
  params.beta = 0.3;
  std::ostringstream os;
  std::vector<double> frac;
  for (int n : {8, 10, 12, 14}) {
    IndexSet punct = expand_regular(po, 8, n);
    BecChannels ch = bec_bit_channels(n, 0.5, punct);
    Reliabilities rel;
    rel.kind = Reliabilities::Kind::Z;
    rel.v = ch.z;
    frac.push_back(good_set_fraction(rel, n, params));
    os << "n=" << n << ": " << fmt(frac.back()) << "  ";
  }
  for (size_t i = 1; i < frac.size(); i++)
    if (frac[i] <= frac[i - 1]) return {false, os.str() + "not monotone"};
  double gap = std::abs(frac.back() - kFractionTarget);
  if (gap > kFractionTol)
    return {false, os.str() + "monotone, but n=14 is " + fmt(gap) + " from " +
                       fmt(kFractionTarget) + " (tol " + fmt(kFractionTol) + ")"};
  return {true, os.str()};
}

// ---- 6. decoder soundness ---------------------------------------------------
Outcome crit6() {
  // list of one must be successive cancellation, bit for bit
  Rng rng(61);
  CodeSpec spec;
  spec.n = 8;
  spec.info_set = select_info_set(ga_construct(8, 2.0, {}), 128);
  for (int t = 0; t < 1000; t++) {
    BitVec info(128);
    for (auto& b : info) b = rng.bit();
    BitVec x = encode(place_info(spec, info), 8);
    SoftBuffer soft = bpsk_llrs(x, 1.0, rng);
    DecodeResult sc = sc_decode(soft, spec);
    DecodeResult scl = scl_decode(soft, spec, 1, false);
    if (sc.u != scl.u)
      return {false, "list-1 diverged from sc at frame " + std::to_string(t)};
  }

  // a wide list on a tiny code must reach maximum likelihood
  CodeSpec small;
  small.n = 3;
  small.info_set = select_info_set(ga_construct(3, 2.0, {}), 4);
  int ml_hits = 0;
  for (int t = 0; t < 500; t++) {
    BitVec info(4);
    for (auto& b : info) b = rng.bit();
    BitVec x = encode(place_info(small, info), 3);
    SoftBuffer soft = bpsk_llrs(x, 1.0, rng);
    DecodeResult res = scl_decode(soft, small, 16, false);
    double best = -1e300, got = 0.0;
    for (uint32_t v = 0; v < 16; v++) {
      BitVec cand(4);
      for (int i = 0; i < 4; i++) cand[i] = (v >> i) & 1u;
      BitVec cx = encode(place_info(small, cand), 3);
      double corr = 0.0;
      for (int i = 0; i < 8; i++) corr += (cx[i] ? -1.0 : 1.0) * soft[i];
      best = std::max(best, corr);
      if (cand == res.info) got = corr;
    }
    if (got < best - 1e-12)
      return {false, "list-16 missed the ML word at frame " + std::to_string(t)};
    ml_hits++;
  }
  return {true, "1000 list-1 frames identical; " + std::to_string(ml_hits) +
                    "/500 frames at the ML optimum"};
}

// ---- 7. simulated FER tracks the GA union bound ----------------------------
constexpr double kBoundCross = 1e-2;
constexpr double kBoundSlack = 50.0;  // FER must land in [bound/50, bound]

Outcome crit7() {
  auto info_at = [](double design_db) {
    return select_info_set(ga_construct(10, design_db, {}), 512);
  };
  auto bound_at = [](const IndexSet& info, double snr_db) {
    double sigma2 = snr_db_to_sigma2(snr_db, Modulation::BPSK);
    Reliabilities rel;
    rel.kind = Reliabilities::Kind::LlrMean;
    rel.v = ga_construct_llr(10, 2.0 / sigma2, {});
    return union_bound(info, error_probs(rel));
  };
  // reliability order frozen at a fixed design point, as codes are deployed;
  // the bound is then evaluated for that fixed code at the operating SNR
  const double design_db = 1.0;
  IndexSet info = info_at(design_db);
  double lo = 0.0, hi = 5.0;
  for (int b = 0; b < 50; b++) {
    double mid = 0.5 * (lo + hi);
    (bound_at(info, mid) > kBoundCross ? lo : hi) = mid;
  }
  double cross_db = 0.5 * (lo + hi);
  double bound = bound_at(info, cross_db);

  SimConfig cfg;
  cfg.n = 10;
  cfg.p = 5;
  cfg.q = 5;
  cfg.k = 512;
  cfg.design_snr_db = design_db;
  cfg.snr_db = {cross_db};
  cfg.min_frame_errors = 400;
  cfg.max_frames = 600000;
  cfg.batch = 4096;
  cfg.seed = 7001;
  SweepResult res = run_sweep(cfg);
  const PointResult& pt = res.points[0];
  std::string detail = "snr " + fmt(cross_db) + " dB, bound " + fmt(bound) + ", fer " +
                       fmt(pt.fer) + " (" + std::to_string(pt.frame_errors) + " errors / " +
                       std::to_string(pt.frames) + " frames)";
  if (pt.frame_errors < 400) return {false, detail + ", too few errors"};
  if (pt.fer > bound || pt.fer < bound / kBoundSlack)
    return {false, detail + ", outside [bound/" + fmt(kBoundSlack) + ", bound]"};
  return {true, detail};
}

// ---- 8. IR beats CC throughput ----------------------------------------------
constexpr double kHalfMaxGainDb = 1.0;

// The sweep covers the throughput transition region and stops at 12 dB, where
// the curve is within 2.3% of its R*log2(M) ceiling. Sweeping on to full
// saturation would put the half-max level exactly on the two-transmission
// plateau (T = max/2 wherever tx1 always fails and tx2 always succeeds), and
// on that plateau the schemes coincide by construction: tx1 is identical and
// neither needs a third transmission. The half-max crossing is only a
// meaningful separation measure below that plateau, on the steep segment
// where the extra redundancy of IR retransmissions decides the outcome.
Outcome crit8() {
  SimConfig base;
  base.n = 10;
  base.p = 5;
  base.q = 5;
  base.k = 352;
  base.design_snr_db = 6.0;
  base.modulation = 16;
  base.L = 512;
  base.harq_t = 4;
  base.harq_sessions = 2500;
  base.seed = 8001;
  base.snr_db = {0.0, 2.0};
  for (double s = 4.0; s <= 12.0; s += 0.5) base.snr_db.push_back(s);

  auto run_scheme = [&](const char* scheme) {
    SimConfig cfg = base;
    cfg.harq_scheme = scheme;
    return run_harq_sweep(cfg);
  };
  HarqSweepResult cc = run_scheme("cc");
  HarqSweepResult ir = run_scheme("ir");

  for (size_t i = 0; i < base.snr_db.size(); i++)
    if (ir.points[i].throughput < cc.points[i].throughput - 1e-12)
      return {false, "cc beats ir at " + fmt(base.snr_db[i]) + " dB (" +
                         fmt(cc.points[i].throughput) + " vs " +
                         fmt(ir.points[i].throughput) + ")"};

  auto half_snr = [&](const HarqSweepResult& r) {
    double peak = 0.0;
    for (const auto& p : r.points) peak = std::max(peak, p.throughput);
    double half = peak / 2.0;
    for (size_t i = 0; i < r.points.size(); i++) {
      if (r.points[i].throughput < half) continue;
      if (i == 0) return base.snr_db[0];
      double t0 = r.points[i - 1].throughput, t1 = r.points[i].throughput;
      double ds = base.snr_db[i] - base.snr_db[i - 1];
      return base.snr_db[i - 1] + (half - t0) / (t1 - t0) * ds;
    }
    return base.snr_db.back();
  };
  double cc_half = half_snr(cc), ir_half = half_snr(ir);
  std::string detail = "half-max snr: cc " + fmt(cc_half) + " dB, ir " + fmt(ir_half) +
                       " dB, gain " + fmt(cc_half - ir_half) + " dB";
  if (cc_half - ir_half < kHalfMaxGainDb)
    return {false, detail + " (< " + fmt(kHalfMaxGainDb) + ")"};
  return {true, detail};
}

// ---- 9. noiseless pipeline identity ----------------------------------------
Outcome crit9() {
  int combos = 0;
  for (int mod : {2, 4, 16, 64}) {
    for (uint32_t L : {64u, 256u, 263u}) {  // N - 12*2^q, N, N + 7
      for (const char* scheme : {"cc", "ir"}) {
        SimConfig cfg;
        cfg.n = 8;
        cfg.p = 4;
        cfg.q = 4;
        cfg.k = 48;
        cfg.modulation = mod;
        cfg.L = L;
        cfg.noiseless = true;
        cfg.snr_db = {30.0};
        cfg.harq_scheme = scheme;
        cfg.harq_t = 2;
        cfg.harq_sessions = 50;
        cfg.seed = 9001;
        HarqSweepResult res = run_harq_sweep(cfg);
        const HarqPointResult& pt = res.points[0];
        if (pt.residual_bler != 0.0 || pt.avg_tx != 1.0)
          return {false, "mod " + std::to_string(mod) + " L " + std::to_string(L) + " " +
                             scheme + ": bler " + fmt(pt.residual_bler) + ", avg_tx " +
                             fmt(pt.avg_tx)};
        combos++;
      }
    }
  }
  return {true, std::to_string(combos) + " combinations, every frame decoded in round 1"};
}

// ---- 10. determinism across thread counts -----------------------------------
Outcome crit10() {
  SimConfig cfg;
  cfg.n = 6;
  cfg.p = 3;
  cfg.q = 3;
  cfg.k = 32;
  cfg.snr_db = {1.0, 2.0};
  cfg.min_frame_errors = 1000000;
  cfg.max_frames = 1000;
  cfg.batch = 128;
  cfg.seed = 10001;
  cfg.threads = 1;
  std::string serial = sweep_csv(cfg, run_sweep(cfg));
  cfg.threads = 8;
  std::string parallel = sweep_csv(cfg, run_sweep(cfg));
  if (serial != parallel) return {false, "sweep csv differs between 1 and 8 threads"};

  SimConfig h = cfg;
  h.harq_scheme = "ir";
  h.harq_t = 2;
  h.harq_sessions = 500;
  h.threads = 1;
  std::string hs = harq_csv(h, run_harq_sweep(h));
  h.threads = 8;
  std::string hp = harq_csv(h, run_harq_sweep(h));
  if (hs != hp) return {false, "harq csv differs between 1 and 8 threads"};
  return {true, "sweep and harq outputs byte-identical, 1 vs 8 threads"};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; i++) {
    std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only K]\n", argv[0]);
      return 2;
    }
  }

  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> fn;
  };
  const std::vector<Entry> criteria = {
      {1, "golden puncture sequence (32,11) GA 3.5 dB", crit1},
      {2, "greedy order near exhaustive optimum (32,16) 3 dB", crit2},
      {3, "puncturing kills exactly m BEC bit-channels", crit3},
      {4, "BEC sum capacity preserved under puncturing", crit4},
      {5, "good-set fraction trend, 8/32 regular puncturing", crit5},
      {6, "list-1 equals SC; list-16 reaches ML on (8,4)", crit6},
      {7, "FER tracks the GA union bound at (1024,512)", crit7},
      {8, "IR throughput dominates CC (16-QAM, t=4)", crit8},
      {9, "noiseless pipeline identity across mod/L/scheme", crit9},
      {10, "byte-identical output, serial vs 8 threads", crit10},
  };

  bool all_pass = true;
  for (const Entry& e : criteria) {
    if (only && e.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.fn();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %s  %s  [%s] (%.1fs)\n", e.id, o.pass ? "PASS" : "FAIL", e.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
