#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rcpolar/sim.hpp"
#include "rcpolar/version.hpp"

using namespace rcpolar;

namespace {

struct ChannelArg {
  bool bec = false;
  double eps = 0.5;
};

// "awgn" or "bec:EPS"
ChannelArg parse_channel(const std::string& s) {
  ChannelArg ch;
  if (s == "awgn") return ch;
  if (s.rfind("bec:", 0) == 0) {
    ch.bec = true;
    try {
      size_t pos = 0;
      ch.eps = std::stod(s.substr(4), &pos);
      if (pos != s.size() - 4) throw std::invalid_argument("trail");
    } catch (const std::exception&) {
      throw ConfigError("bad erasure rate in '" + s + "'");
    }
    if (ch.eps < 0.0 || ch.eps > 1.0) throw ConfigError("erasure rate outside [0,1]");
    return ch;
  }
  throw ConfigError("channel must be awgn or bec:EPS, got '" + s + "'");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_construct(int n, const std::string& channel, double snr_db,
                  const std::string& punct_file, const std::string& out) {
  if (n < 0 || n > 20) throw ConfigError("--n out of range [0,20]");
  ChannelArg ch = parse_channel(channel);
  IndexSet punct;
  if (!punct_file.empty()) punct = read_index_file(punct_file);

  std::string kind;
  std::vector<double> vals;
  if (ch.bec) {
    kind = "z";
    vals = bec_bit_channels(n, ch.eps, punct).z;
  } else {
    kind = "llr_mean";
    vals = ga_construct(n, snr_db, punct).v;
  }
  std::ostringstream os;
  os << "# rcpolar " << kVersion << " schema=reliability.v1\n";
  os << "# n=" << n << " channel=" << channel << " design_snr_db=" << fmt17(snr_db)
     << " punctured=" << punct.size() << "\n";
  os << "index,value,kind\n";
  for (size_t i = 0; i < vals.size(); i++)
    os << i << "," << fmt17(vals[i]) << "," << kind << "\n";
  write_text(out, os.str());
  return 0;
}

int cmd_ppa(int base_n, int k, const std::string& channel, double snr_db,
            const std::string& out) {
  if (base_n < 1 || base_n > 10) throw ConfigError("--base-n out of range [1,10]");
  if (k < 1 || k > (1 << base_n)) throw ConfigError("--k out of range [1, 2^base_n]");
  ChannelArg ch = parse_channel(channel);
  PpaCriterion crit;
  Reliabilities rel;
  if (ch.bec) {
    crit.kind = PpaCriterion::Kind::BEC;
    crit.eps = ch.eps;
    rel = Reliabilities{Reliabilities::Kind::Z, bec_bit_channels(base_n, ch.eps, {}).z};
  } else {
    crit.kind = PpaCriterion::Kind::GA;
    crit.design_snr_db = snr_db;
    rel = ga_construct(base_n, snr_db, {});
  }
  IndexSet info = select_info_set(rel, k);
  PunctureOrder order = ppa(base_n, info, crit);
  std::ostringstream os;
  write_puncture_order(os, order);
  write_text(out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rate-compatible polar code toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* construct = app.add_subcommand("construct", "per-input reliabilities of a mother code");
  int c_n = 5;
  std::string c_channel = "awgn", c_punct, c_out;
  double c_snr = 3.5;
  construct->add_option("--n", c_n, "log2 code length")->required();
  construct->add_option("--channel", c_channel, "awgn or bec:EPS");
  construct->add_option("--design-snr-db", c_snr, "GA design Es/N0 in dB");
  construct->add_option("--punct-file", c_punct, "punctured output indices, one per line");
  construct->add_option("--out", c_out, "output CSV ('-' = stdout)");

  auto* ppa_cmd = app.add_subcommand("ppa", "progressive puncturing order");
  int p_base_n = 5, p_k = 11;
  std::string p_channel = "awgn", p_out;
  double p_snr = 3.5;
  ppa_cmd->add_option("--base-n", p_base_n, "log2 base code length")->required();
  ppa_cmd->add_option("--k", p_k, "base info set size the criterion optimizes")->required();
  ppa_cmd->add_option("--channel", p_channel, "awgn or bec:EPS");
  ppa_cmd->add_option("--design-snr-db", p_snr, "GA design Es/N0 in dB");
  ppa_cmd->add_option("--out", p_out, "puncture-order file ('-' = stdout)");

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo BER/FER sweep");
  std::string s_config, s_out;
  uint64_t s_seed = 0;
  int s_threads = 0;
  std::vector<std::string> s_sets;
  sim->add_option("--config", s_config, "config file")->required();
  sim->add_option("--seed", s_seed, "override run.seed");
  sim->add_option("--threads", s_threads, "override run.threads");
  sim->add_option("--set", s_sets, "override section.key=value (repeatable)");
  sim->add_option("--out", s_out, "output CSV ('-' = stdout)");

  auto* harq = app.add_subcommand("harq", "HARQ throughput sweep");
  std::string h_config, h_scheme, h_out;
  uint64_t h_seed = 0;
  int h_t = 0, h_threads = 0;
  uint64_t h_sessions = 0;
  std::vector<std::string> h_sets;
  harq->add_option("--config", h_config, "config file")->required();
  harq->add_option("--scheme", h_scheme, "cc or ir (overrides config)");
  harq->add_option("--t", h_t, "max transmissions (overrides config)");
  harq->add_option("--sessions", h_sessions, "sessions per point (overrides config)");
  harq->add_option("--seed", h_seed, "override run.seed");
  harq->add_option("--threads", h_threads, "override run.threads");
  harq->add_option("--set", h_sets, "override section.key=value (repeatable)");
  harq->add_option("--out", h_out, "output CSV ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(construct))
      return cmd_construct(c_n, c_channel, c_snr, c_punct, c_out);
    if (app.got_subcommand(ppa_cmd)) return cmd_ppa(p_base_n, p_k, p_channel, p_snr, p_out);
    if (app.got_subcommand(sim)) {
      SimConfig cfg = parse_config_file(s_config);
      for (const std::string& s : s_sets) apply_override(cfg, s);
      if (sim->count("--seed")) cfg.seed = s_seed;
      if (sim->count("--threads")) cfg.threads = s_threads;
      SweepResult res = run_sweep(cfg);
      write_text(s_out, sweep_csv(cfg, res));
      return 0;
    }
    if (app.got_subcommand(harq)) {
      SimConfig cfg = parse_config_file(h_config);
      for (const std::string& s : h_sets) apply_override(cfg, s);
      if (harq->count("--scheme")) cfg.harq_scheme = h_scheme;
      if (harq->count("--t")) cfg.harq_t = h_t;
      if (harq->count("--sessions")) cfg.harq_sessions = h_sessions;
      if (harq->count("--seed")) cfg.seed = h_seed;
      if (harq->count("--threads")) cfg.threads = h_threads;
      HarqSweepResult res = run_harq_sweep(cfg);
      write_text(h_out, harq_csv(cfg, res));
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
