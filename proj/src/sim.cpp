#include "rcpolar/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "rcpolar/version.hpp"

namespace rcpolar {

IndexSet read_index_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path);
  IndexSet out;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    lineno++;
    size_t h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(a, b - a + 1);
    try {
      size_t pos = 0;
      unsigned long v = std::stoul(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("trail");
      out.push_back((uint32_t)v);
    } catch (const std::exception&) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected an index, got '" +
                        tok + "'");
    }
  }
  return out;
}

ResolvedCode resolve_code(const SimConfig& cfg) {
  cfg.validate();
  ResolvedCode rc;
  rc.mod = modulation_from_order(cfg.modulation);
  rc.channel.kind =
      cfg.channel == "fading" ? ChannelModel::Kind::Fading : ChannelModel::Kind::AWGN;
  rc.channel.mod = rc.mod;
  rc.channel.noiseless = cfg.noiseless;

  const uint32_t N = 1u << cfg.n;
  const uint32_t L = cfg.L ? cfg.L : N;

  PunctureOrder order;
  if (!cfg.puncture_order_file.empty()) {
    order = read_puncture_order_file(cfg.puncture_order_file);
    if (order.base_n != cfg.p)
      throw ConfigError("puncture order file has base_n=" + std::to_string(order.base_n) +
                        ", config needs p=" + std::to_string(cfg.p));
  } else {
    // implicit design: PPA on the 2^p base code at the scaled rate
    const uint32_t cols = 1u << cfg.p;
    int base_k = (int)std::lround((double)cfg.k * cols / N);
    base_k = std::clamp(base_k, 1, (int)cols);
    Reliabilities rel = ga_construct(cfg.p, cfg.design_snr_db, {});
    IndexSet base_info = select_info_set(rel, base_k);
    PpaCriterion crit;
    crit.kind = PpaCriterion::Kind::GA;
    crit.design_snr_db = cfg.design_snr_db;
    order = ppa(cfg.p, base_info, crit);
  }

  rc.rm.p = cfg.p;
  rc.rm.q = cfg.q;
  rc.rm.L = L;
  rc.rm.start_column = cfg.start_column;
  rc.rm.order = order;
  rc.rm.validate();

  rc.spec.n = cfg.n;
  rc.spec.crc_len = cfg.crc_len;
  if (!cfg.info_set_file.empty()) {
    rc.spec.info_set = read_index_file(cfg.info_set_file);
    std::sort(rc.spec.info_set.begin(), rc.spec.info_set.end());
    if ((int)rc.spec.info_set.size() != cfg.k)
      throw ConfigError("info_set_file holds " + std::to_string(rc.spec.info_set.size()) +
                        " indices, config says k=" + std::to_string(cfg.k));
  } else {
    // mother info set designed against the columns a start-0 read never
    // reaches (the regular prefix pattern)
    const uint32_t rows = 1u << cfg.q, cols = 1u << cfg.p;
    uint64_t used_cols = std::min<uint64_t>(cols, ((uint64_t)L + rows - 1) / rows);
    int m = (int)(cols - used_cols);
    rc.design_punct = expand_regular(order, m, cfg.n);
    Reliabilities rel = ga_construct(cfg.n, cfg.design_snr_db, rc.design_punct);
    rc.spec.info_set = select_info_set(rel, cfg.k);
  }
  rc.spec.validate();
  return rc;
}

namespace {

SoftBuffer transmit_round(const BitVec& tx, const ColumnAssignment& asg, Modulation mod,
                          const ChannelModel& ch, bool max_log, Rng& rng) {
  BitVec sym_bits = interleave_to_symbols(tx, asg, mod);
  std::vector<cplx> syms = modulate(sym_bits, mod);
  TxObservation obs = transmit(syms, ch, rng);
  SoftBuffer sym_llr = demap_llr(obs.r, obs.h, ch.sigma2, mod, max_log);
  return deinterleave_llrs(sym_llr, asg, mod);
}

struct FrameStats {
  uint64_t bit_errors = 0;
  uint64_t frame_error = 0;
};

FrameStats simulate_frame(const ResolvedCode& rc, const ColumnAssignment& asg,
                          const ChannelModel& ch, const SimConfig& cfg, uint64_t point_seed,
                          uint64_t frame_idx) {
  Rng rng = Rng::stream(point_seed, frame_idx);
  BitVec payload(rc.spec.payload_len());
  for (auto& b : payload) b = rng.bit();
  BitVec x = encode_payload(rc.spec, payload);
  BitVec tx = select_bits(x, rc.rm);
  SoftBuffer llr_tx = transmit_round(tx, asg, rc.mod, ch, cfg.max_log, rng);
  SoftBuffer soft = derate_match(llr_tx, rc.rm);
  ScOptions opt;
  opt.min_sum = cfg.min_sum;
  DecodeResult res = cfg.decoder == "scl"
                         ? scl_decode(soft, rc.spec, cfg.list_size, cfg.use_crc, opt)
                         : sc_decode(soft, rc.spec, opt);
  FrameStats st;
  for (size_t i = 0; i < payload.size(); i++) st.bit_errors += res.payload[i] != payload[i];
  st.frame_error = st.bit_errors > 0 ? 1 : 0;
  return st;
}

// run frames [first, first+count) striped across threads, return merged sums
FrameStats run_batch(const ResolvedCode& rc, const ColumnAssignment& asg,
                     const ChannelModel& ch, const SimConfig& cfg, uint64_t point_seed,
                     uint64_t first, uint64_t count) {
  int nthreads = std::min<uint64_t>(cfg.threads, count);
  std::vector<FrameStats> part(nthreads);
  auto work = [&](int tid) {
    FrameStats acc;
    for (uint64_t f = first + tid; f < first + count; f += nthreads) {
      FrameStats st = simulate_frame(rc, asg, ch, cfg, point_seed, f);
      acc.bit_errors += st.bit_errors;
      acc.frame_error += st.frame_error;
    }
    part[tid] = acc;
  };
  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; t++) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  FrameStats total;
  for (const FrameStats& p : part) {
    total.bit_errors += p.bit_errors;
    total.frame_error += p.frame_error;
  }
  return total;
}

uint64_t point_stream_seed(uint64_t seed, size_t point_idx) {
  return mix64(seed ^ mix64(0x706f696e74ULL + point_idx));
}

}  // namespace

SweepResult run_sweep(const SimConfig& cfg) {
  ResolvedCode rc = resolve_code(cfg);
  ColumnAssignment asg = assign_columns(rc.rm.L, rc.rm, rc.mod, cfg.alternating);
  SweepResult out;
  for (size_t pi = 0; pi < cfg.snr_db.size(); pi++) {
    ChannelModel ch = rc.channel;
    ch.sigma2 = snr_db_to_sigma2(cfg.snr_db[pi], rc.mod);
    ch.validate();
    uint64_t point_seed = point_stream_seed(cfg.seed, pi);

    PointResult pt;
    pt.snr_db = cfg.snr_db[pi];
    while (pt.frames < cfg.max_frames && pt.frame_errors < cfg.min_frame_errors) {
      uint64_t batch = std::min<uint64_t>(cfg.batch, cfg.max_frames - pt.frames);
      FrameStats st = run_batch(rc, asg, ch, cfg, point_seed, pt.frames, batch);
      pt.frames += batch;
      pt.bit_errors += st.bit_errors;
      pt.frame_errors += st.frame_error;
    }
    pt.payload_bits = pt.frames * (uint64_t)rc.spec.payload_len();
    pt.ber = double(pt.bit_errors) / double(pt.payload_bits);
    pt.fer = double(pt.frame_errors) / double(pt.frames);
    pt.ber_se = std::sqrt(std::max(pt.ber * (1.0 - pt.ber), 0.0) / double(pt.payload_bits));
    pt.fer_se = std::sqrt(std::max(pt.fer * (1.0 - pt.fer), 0.0) / double(pt.frames));
    out.points.push_back(pt);
  }
  return out;
}

namespace {

struct SessionStats {
  uint64_t rounds = 0;
  uint64_t successes = 0;
};

SessionStats simulate_session(const ResolvedCode& rc, const ChannelModel& ch,
                              const SimConfig& cfg, HarqScheme scheme, uint64_t point_seed,
                              uint64_t session_idx) {
  Rng rng = Rng::stream(point_seed, session_idx);
  BitVec payload(rc.spec.payload_len());
  for (auto& b : payload) b = rng.bit();
  BitVec x = encode_payload(rc.spec, payload);
  CircularBuffer buf = build_buffer(x, rc.rm);

  HarqSession ses = make_session(rc.rm, rc.mod, scheme, cfg.harq_t);
  int list = cfg.decoder == "scl" ? cfg.list_size : 1;
  auto round_llrs = [&](const RoundPlan& plan) {
    BitVec tx = select_bits(buf, rc.rm.L, plan.start_column);
    return transmit_round(tx, plan.assignment, rc.mod, ch, cfg.max_log, rng);
  };
  HarqOutcome o = run_session(ses, rc.spec, list, cfg.use_crc, round_llrs, &payload);
  return {uint64_t(o.rounds), o.success ? 1ULL : 0ULL};
}

}  // namespace

HarqSweepResult run_harq_sweep(const SimConfig& cfg) {
  ResolvedCode rc = resolve_code(cfg);
  HarqScheme scheme = cfg.harq_scheme == "ir" ? HarqScheme::IR : HarqScheme::CC;
  HarqSweepResult out;
  out.rate = double(rc.spec.k()) / double(rc.rm.L);

  for (size_t pi = 0; pi < cfg.snr_db.size(); pi++) {
    ChannelModel ch = rc.channel;
    ch.sigma2 = snr_db_to_sigma2(cfg.snr_db[pi], rc.mod);
    ch.validate();
    uint64_t point_seed = point_stream_seed(cfg.seed, pi);

    const uint64_t S = cfg.harq_sessions;
    int nthreads = (int)std::min<uint64_t>(cfg.threads, S);
    std::vector<SessionStats> part(nthreads);
    auto work = [&](int tid) {
      SessionStats acc;
      for (uint64_t s = tid; s < S; s += nthreads) {
        SessionStats st = simulate_session(rc, ch, cfg, scheme, point_seed, s);
        acc.rounds += st.rounds;
        acc.successes += st.successes;
      }
      part[tid] = acc;
    };
    if (nthreads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < nthreads; t++) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    SessionStats total;
    for (const SessionStats& p : part) {
      total.rounds += p.rounds;
      total.successes += p.successes;
    }

    HarqPointResult pt;
    pt.snr_db = cfg.snr_db[pi];
    pt.sessions = S;
    pt.avg_tx = double(total.rounds) / double(S);
    pt.residual_bler = 1.0 - double(total.successes) / double(S);
    pt.throughput = throughput(out.rate, rc.mod, pt.residual_bler, pt.avg_tx);
    out.points.push_back(pt);
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string canonical_config(const SimConfig& cfg) {
  std::ostringstream os;
  os << "code.n=" << cfg.n << "\ncode.p=" << cfg.p << "\ncode.q=" << cfg.q
     << "\ncode.k=" << cfg.k << "\ncode.crc_len=" << cfg.crc_len
     << "\ncode.design_snr_db=" << fmt17(cfg.design_snr_db)
     << "\ncode.info_set_file=" << cfg.info_set_file
     << "\ncode.puncture_order_file=" << cfg.puncture_order_file
     << "\nchannel.kind=" << cfg.channel << "\nchannel.modulation=" << cfg.modulation
     << "\nchannel.snr_db=";
  for (size_t i = 0; i < cfg.snr_db.size(); i++) os << (i ? "," : "") << fmt17(cfg.snr_db[i]);
  os << "\nchannel.noiseless=" << cfg.noiseless << "\nchannel.max_log=" << cfg.max_log
     << "\nrate_match.L=" << cfg.L << "\nrate_match.start_column=" << cfg.start_column
     << "\nrate_match.alternating=" << cfg.alternating << "\ndecoder.algo=" << cfg.decoder
     << "\ndecoder.list_size=" << cfg.list_size << "\ndecoder.use_crc=" << cfg.use_crc
     << "\ndecoder.min_sum=" << cfg.min_sum << "\nharq.scheme=" << cfg.harq_scheme
     << "\nharq.t=" << cfg.harq_t << "\nharq.sessions=" << cfg.harq_sessions
     << "\nstop.min_frame_errors=" << cfg.min_frame_errors
     << "\nstop.max_frames=" << cfg.max_frames << "\nrun.seed=" << cfg.seed
     << "\nrun.batch=" << cfg.batch << "\n";
  // run.threads is deliberately absent: thread count must not change any
  // output byte (results only depend on seed and batch boundaries)
  return os.str();
}

uint64_t config_hash(const SimConfig& cfg) {
  std::string s = canonical_config(cfg);
  uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string provenance(const SimConfig& cfg, const char* schema) {
  std::ostringstream os;
  char hash[24];
  std::snprintf(hash, sizeof(hash), "%016llx", (unsigned long long)config_hash(cfg));
  os << "# rcpolar " << kVersion << " schema=" << schema << "\n";
  os << "# seed=" << cfg.seed << " config_hash=" << hash << "\n";
  return os.str();
}

}  // namespace

std::string sweep_csv(const SimConfig& cfg, const SweepResult& res) {
  std::ostringstream os;
  os << provenance(cfg, "sweep.v1");
  os << "snr_db,frames,payload_bits,bit_errors,frame_errors,ber,fer,ber_se,fer_se\n";
  for (const PointResult& p : res.points) {
    os << fmt(p.snr_db) << "," << p.frames << "," << p.payload_bits << "," << p.bit_errors
       << "," << p.frame_errors << "," << fmt(p.ber) << "," << fmt(p.fer) << ","
       << fmt(p.ber_se) << "," << fmt(p.fer_se) << "\n";
  }
  return os.str();
}

std::string harq_csv(const SimConfig& cfg, const HarqSweepResult& res) {
  std::ostringstream os;
  os << provenance(cfg, "harq.v1");
  os << "snr_db,scheme,modulation,rate,throughput,avg_tx,residual_bler,frames\n";
  for (const HarqPointResult& p : res.points) {
    os << fmt(p.snr_db) << "," << cfg.harq_scheme << "," << cfg.modulation << ","
       << fmt(res.rate) << "," << fmt(p.throughput) << "," << fmt(p.avg_tx) << ","
       << fmt(p.residual_bler) << "," << p.sessions << "\n";
  }
  return os.str();
}

}  // namespace rcpolar
