#include "rcpolar/decode.hpp"

#include <algorithm>
#include <cmath>

namespace rcpolar {

double f_llr(double a, double b) {
  double m = std::min(std::abs(a), std::abs(b));
  double s = (a < 0.0) == (b < 0.0) ? m : -m;
  return s + std::log1p(std::exp(-std::abs(a + b))) - std::log1p(std::exp(-std::abs(a - b)));
}

double f_minsum(double a, double b) {
  double m = std::min(std::abs(a), std::abs(b));
  return (a < 0.0) == (b < 0.0) ? m : -m;
}

namespace {

// shared recursion for sc_decode / genie_sc; adjacent-pair combining matches
// the bit-reversed generator, so u is visited in natural index order
struct ScCtx {
  const CodeSpec* spec;
  std::vector<uint8_t> frozen;
  BitVec u;
  std::vector<uint8_t> flags;  // genie mode
  const BitVec* truth = nullptr;
  Rng* rng = nullptr;
  bool min_sum = false;
  uint64_t ops = 0;
  double pm = 0.0;
  std::vector<double> llr_arena;   // child-LLR buffers, one slot per depth
  std::vector<uint8_t> cw_arena;   // left+right child codewords per depth

  double combine_f(double a, double b) {
    ops++;
    return min_sum ? f_minsum(a, b) : f_llr(a, b);
  }
};

// exact branch cost: -log P(u | prefix) = log(1 + e^-(1-2u)l)
double branch_penalty(double l, uint8_t u) {
  double m = u ? -l : l;
  if (m < -30.0) return -m;
  return std::log1p(std::exp(-m));
}

void sc_rec(ScCtx& ctx, const double* llr, uint8_t* cw, int len, int ubase, int depth) {
  if (len == 1) {
    uint8_t b;
    if (ctx.frozen[ubase]) {
      b = 0;
    } else if (llr[0] != 0.0) {
      b = llr[0] < 0.0 ? 1 : 0;
    } else {
      b = ctx.rng ? ctx.rng->bit() : 0;
    }
    if (ctx.truth) {
      uint8_t t = (*ctx.truth)[ubase];
      ctx.flags[ubase] = ctx.frozen[ubase] ? 0 : (b != t);
      b = t;
    }
    ctx.u[ubase] = b;
    cw[0] = b;
    ctx.pm += branch_penalty(llr[0], b);
    return;
  }
  int half = len / 2;
  int N = ctx.spec->N();
  double* child = ctx.llr_arena.data() + (N - (N >> (depth - 1)));
  uint8_t* cl = ctx.cw_arena.data() + 2 * (N - (N >> (depth - 1)));
  uint8_t* cr = cl + half;
  for (int i = 0; i < half; i++) child[i] = ctx.combine_f(llr[2 * i], llr[2 * i + 1]);
  sc_rec(ctx, child, cl, half, ubase, depth + 1);
  for (int i = 0; i < half; i++) {
    child[i] = g_llr(llr[2 * i], llr[2 * i + 1], cl[i]);
    ctx.ops++;
  }
  sc_rec(ctx, child, cr, half, ubase + half, depth + 1);
  for (int i = 0; i < half; i++) {
    cw[2 * i] = cl[i] ^ cr[i];
    cw[2 * i + 1] = cr[i];
  }
}

ScCtx run_sc(const SoftBuffer& soft, const CodeSpec& spec, bool min_sum, const BitVec* truth,
             Rng* rng) {
  spec.validate();
  if ((int)soft.size() != spec.N()) throw std::invalid_argument("sc: soft length != N");
  int N = spec.N();
  ScCtx ctx;
  ctx.spec = &spec;
  ctx.frozen.assign(N, 1);
  for (uint32_t i : spec.info_set) ctx.frozen[i] = 0;
  ctx.u.assign(N, 0);
  ctx.min_sum = min_sum;
  ctx.truth = truth;
  ctx.rng = rng;
  if (truth) ctx.flags.assign(N, 0);
  ctx.llr_arena.resize(N);
  ctx.cw_arena.resize(2 * N);
  BitVec cw(N);
  sc_rec(ctx, soft.data(), cw.data(), N, 0, 1);
  return ctx;
}

DecodeResult finish_result(const CodeSpec& spec, BitVec u, double metric) {
  DecodeResult res;
  res.u = std::move(u);
  res.info = extract_info(spec, res.u);
  res.payload.assign(res.info.begin(), res.info.begin() + spec.payload_len());
  res.crc_pass = spec.crc_len > 0 && spec.crc().check(res.info);
  res.path_metric = metric;
  return res;
}

}  // namespace

DecodeResult sc_decode(const SoftBuffer& soft, const CodeSpec& spec, const ScOptions& opt) {
  ScCtx ctx = run_sc(soft, spec, opt.min_sum, nullptr, nullptr);
  if (opt.op_counter) *opt.op_counter += ctx.ops;
  return finish_result(spec, std::move(ctx.u), ctx.pm);
}

std::vector<uint8_t> genie_sc(const SoftBuffer& soft, const CodeSpec& spec, const BitVec& truth,
                              Rng& rng) {
  if (truth.size() != (size_t)spec.N()) throw std::invalid_argument("genie_sc: truth length != N");
  ScCtx ctx = run_sc(soft, spec, false, &truth, &rng);
  return ctx.flags;
}

namespace {

// Iterative list decoder. Per path: P[d] holds the active node's LLRs at
// depth d (size N>>d), cleft[d] the finished left-child codeword of the
// active depth-d node, ccur[d] scratch for climbing combines. Arrays live in
// flat arenas indexed by depth offsets; paths clone by plain vector copy.
struct SclState {
  std::vector<double> P;       // depth 1..n, offset N - (N>>(d-1))
  std::vector<uint8_t> cleft;  // depth 0..n-1, offset N - (N>>d), size N>>(d+1)
  std::vector<uint8_t> ccur;   // depth 0..n, offset 2*(N - (N>>d)), size N>>d
  BitVec u;
  double pm = 0.0;
};

struct SclEngine {
  const SoftBuffer& ch;
  int n, N;
  bool min_sum;
  uint64_t ops = 0;

  double* P(SclState& s, int d) { return s.P.data() + (N - (N >> (d - 1))); }
  uint8_t* CL(SclState& s, int d) { return s.cleft.data() + (N - (N >> d)); }
  uint8_t* CC(SclState& s, int d) { return s.ccur.data() + 2 * (N - (N >> d)); }
  const double* level_llr(SclState& s, int d) { return d == 0 ? ch.data() : P(s, d); }

  double fop(double a, double b) {
    ops++;
    return min_sum ? f_minsum(a, b) : f_llr(a, b);
  }

  void update_llr(SclState& s, uint32_t i) {
    int d_first = 1;
    if (i != 0) {
      int z = __builtin_ctz(i);
      int dg = n - z;
      const double* up = level_llr(s, dg - 1);
      double* out = P(s, dg);
      uint8_t* cl = CL(s, dg - 1);
      int len = N >> dg;
      for (int j = 0; j < len; j++) {
        out[j] = g_llr(up[2 * j], up[2 * j + 1], cl[j]);
        ops++;
      }
      d_first = dg + 1;
    }
    for (int d = d_first; d <= n; d++) {
      const double* up = level_llr(s, d - 1);
      double* out = P(s, d);
      int len = N >> d;
      for (int j = 0; j < len; j++) out[j] = fop(up[2 * j], up[2 * j + 1]);
    }
  }

  void update_bits(SclState& s, uint32_t i, uint8_t b) {
    CC(s, n)[0] = b;
    for (int d = n; d > 0; d--) {
      uint32_t node = i >> (n - d);
      uint8_t* cc = CC(s, d);
      int len = N >> d;
      if ((node & 1u) == 0) {
        std::copy(cc, cc + len, CL(s, d - 1));
        return;
      }
      uint8_t* cl = CL(s, d - 1);
      uint8_t* up = CC(s, d - 1);
      for (int j = 0; j < len; j++) {
        up[2 * j] = cl[j] ^ cc[j];
        up[2 * j + 1] = cc[j];
      }
    }
  }
};

std::vector<SclState> run_scl(const SoftBuffer& soft, const CodeSpec& spec, int list_size,
                              const ScOptions& opt) {
  spec.validate();
  if ((int)soft.size() != spec.N()) throw std::invalid_argument("scl: soft length != N");
  if (list_size < 1) throw std::invalid_argument("scl: list_size < 1");
  int N = spec.N();
  std::vector<uint8_t> frozen(N, 1);
  for (uint32_t i : spec.info_set) frozen[i] = 0;

  SclEngine eng{soft, spec.n, N, opt.min_sum, 0};
  std::vector<SclState> paths(1);
  paths[0].P.resize(N);
  paths[0].cleft.resize(N);
  paths[0].ccur.resize(2 * N);
  paths[0].u.assign(N, 0);

  struct Cand {
    double pm;
    uint32_t path;
    uint8_t bit;
  };
  std::vector<Cand> cands;

  for (uint32_t i = 0; i < (uint32_t)N; i++) {
    for (auto& p : paths) eng.update_llr(p, i);
    if (frozen[i]) {
      for (auto& p : paths) {
        double l = eng.level_llr(p, spec.n)[0];
        p.pm += branch_penalty(l, 0);
        p.u[i] = 0;
        eng.update_bits(p, i, 0);
      }
      continue;
    }
    cands.clear();
    for (uint32_t pi = 0; pi < paths.size(); pi++) {
      double l = eng.level_llr(paths[pi], spec.n)[0];
      cands.push_back({paths[pi].pm + branch_penalty(l, 0), pi, 0});
      cands.push_back({paths[pi].pm + branch_penalty(l, 1), pi, 1});
    }
    size_t keep = std::min<size_t>(list_size, cands.size());
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.pm != b.pm) return a.pm < b.pm;
      if (a.path != b.path) return a.path < b.path;
      return a.bit < b.bit;
    });
    cands.resize(keep);

    std::vector<int> uses(paths.size(), 0);
    for (const Cand& c : cands) uses[c.path]++;
    std::vector<SclState> next;
    next.reserve(keep);
    for (const Cand& c : cands) {
      if (--uses[c.path] > 0)
        next.push_back(paths[c.path]);  // clone, original still needed
      else
        next.push_back(std::move(paths[c.path]));
      SclState& s = next.back();
      s.pm = c.pm;
      s.u[i] = c.bit;
      eng.update_bits(s, i, c.bit);
    }
    paths = std::move(next);
  }

  std::sort(paths.begin(), paths.end(), [](const SclState& a, const SclState& b) {
    if (a.pm != b.pm) return a.pm < b.pm;
    return a.u < b.u;
  });
  if (opt.op_counter) *opt.op_counter += eng.ops;
  return paths;
}

}  // namespace

std::vector<SclPath> scl_decode_paths(const SoftBuffer& soft, const CodeSpec& spec,
                                      int list_size, const ScOptions& opt) {
  std::vector<SclState> paths = run_scl(soft, spec, list_size, opt);
  std::vector<SclPath> out(paths.size());
  for (size_t i = 0; i < paths.size(); i++) out[i] = {std::move(paths[i].u), paths[i].pm};
  return out;
}

DecodeResult scl_decode(const SoftBuffer& soft, const CodeSpec& spec, int list_size,
                        bool use_crc, const ScOptions& opt) {
  std::vector<SclPath> paths = scl_decode_paths(soft, spec, list_size, opt);
  if (use_crc && spec.crc_len > 0) {
    Crc crc = spec.crc();
    for (const SclPath& p : paths) {
      BitVec info = extract_info(spec, p.u);
      if (crc.check(info)) return finish_result(spec, p.u, p.metric);
    }
  }
  return finish_result(spec, paths.front().u, paths.front().metric);
}

SystematicResult systematic_decode(const SoftBuffer& soft, const CodeSpec& spec, int list_size,
                                   bool use_crc, const ScOptions& opt) {
  spec.validate();
  CodeSpec rev = spec;
  rev.info_set.clear();
  for (uint32_t i : spec.info_set) rev.info_set.push_back(reverse_bits(i, spec.n));
  std::sort(rev.info_set.begin(), rev.info_set.end());

  std::vector<SclPath> paths = scl_decode_paths(soft, rev, list_size, opt);
  Crc crc = spec.crc();
  auto realize = [&](const SclPath& p) {
    SystematicResult r;
    BitVec w(spec.N());
    for (int j = 0; j < spec.N(); j++) w[j] = p.u[reverse_bits(j, spec.n)];
    r.codeword = encode_natural(w, spec.n);
    r.info.reserve(spec.info_set.size());
    for (uint32_t a : spec.info_set) r.info.push_back(r.codeword[a]);
    r.crc_pass = spec.crc_len > 0 && crc.check(r.info);
    r.path_metric = p.metric;
    return r;
  };
  if (use_crc && spec.crc_len > 0) {
    for (const SclPath& p : paths) {
      SystematicResult r = realize(p);
      if (r.crc_pass) return r;
    }
  }
  return realize(paths.front());
}

}  // namespace rcpolar
